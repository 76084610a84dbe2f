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

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "xtt/pattern.hpp"
#include "xtt/tree.hpp"

namespace xtt {

/// Places `state` on the rhs node addressed by `path` once the rule fires.
struct StatePlacement {
  Path path;
  std::string state;

  friend bool operator==(const StatePlacement&, const StatePlacement&) = default;
};

/// One transition: in `state`, a subtree matching `lhs` is rewritten to
/// `rhs` with its variables filled in, and `newstates` are placed on the
/// result. `id` is the 1-based position of the entry in its rule file.
struct Rule {
  std::size_t id = 0;
  std::string state;
  Pattern lhs;
  Pattern rhs;
  std::vector<StatePlacement> newstates;
  double weight = 1.0;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Transducer {
  std::vector<Rule> rules;
  std::string initial_state = "q";

  /// Initial state, every rule state, and every state placed by a rule.
  std::set<std::string> states() const;
  const Rule& rule(std::size_t id) const;
  bool has_rule(std::size_t id) const noexcept;
};

/// Rule-file loading failure. `entry()` is the 1-based entry index, or 0
/// when the problem concerns the file as a whole.
class RuleFileError : public Error {
 public:
  RuleFileError(const std::string& what, std::size_t entry);
  std::size_t entry() const noexcept { return entry_; }

 private:
  std::size_t entry_;
};

/// Parses a YAML rule file: a sequence of mappings with keys state, lhs, rhs
/// and optional newstates, weight. Every rule is validated; the first
/// violation aborts loading.
Transducer load_rules(std::string_view rule_file_text);
Transducer load_rules_file(const std::filesystem::path& path);

struct RuleReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks one rule against the rule invariants without throwing. Newstates
/// aimed at non-variable rhs nodes and root placements that re-enter the
/// rule's own state are reported as warnings.
RuleReport validate_rule(const Rule& rule);

struct Classification {
  bool linear = true;
  bool nondeleting = true;
  bool extended = false;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// linear: no lhs variable appears twice in its rhs. nondeleting: every lhs
/// variable appears in its rhs. extended: some lhs is not a single literal
/// node over distinct variables.
Classification classify(const Transducer& transducer);
Classification classify(const Rule& rule);

/// Re-emits the transducer in rule-file syntax.
std::string dump_rules(const Transducer& transducer);

}  // namespace xtt
