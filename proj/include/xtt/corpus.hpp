/*
Copyright (C) 2026 The xtt Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xtt/engine.hpp"
#include "xtt/rules.hpp"

namespace xtt {

struct ExpectedOutput {
  std::string tree;  // canonical serialized form
  double weight = 1.0;
};

struct FixtureCase {
  std::string input;
  bool expect_stuck = false;
  std::vector<ExpectedOutput> expected;
  std::optional<std::string> yield;   // exact yield of the best output
  std::optional<std::string> target;  // reference sentence
};

struct Fixture {
  std::string name;
  std::string description;
  std::filesystem::path rules_path;
  std::vector<FixtureCase> cases;
};

struct ClassificationFixture {
  std::string name;
  std::filesystem::path rules_path;
  Classification expected;
};

/// A rule file that must be rejected with a message containing `error`.
struct NegativeFixture {
  std::string name;
  std::filesystem::path rules_path;
  std::string error;
};

struct Corpus {
  std::vector<Fixture> fixtures;
  std::vector<ClassificationFixture> classifications;
  std::vector<NegativeFixture> negatives;
};

/// Corrupted bundled data; the message names the fixture.
class CorpusError : public Error {
 public:
  using Error::Error;
};

std::filesystem::path default_corpus_dir();

/// Loads and checks the manifest: every rule file of a positive fixture
/// loads, every input and expected tree parses, expected sets have no
/// duplicate trees.
Corpus load_corpus(const std::filesystem::path& dir = default_corpus_dir());
std::vector<Fixture> list_fixtures(const std::filesystem::path& dir = default_corpus_dir());

struct FixtureReport {
  std::vector<std::string> differences;
  bool pass() const noexcept { return differences.empty(); }
};

inline constexpr double kFixtureWeightTolerance = 1e-9;

/// Transduces every case and compares the full output set. Differences name
/// the case input and the offending tree.
FixtureReport run_fixture(const Fixture& fixture, const TransduceOptions& options = {});

/// Sentence comparison convention: ASCII letters lowercased, a final period
/// dropped, runs of spaces collapsed.
std::string normalize_sentence(std::string_view sentence);

}  // namespace xtt
