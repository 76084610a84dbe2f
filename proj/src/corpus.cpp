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

#include "xtt/corpus.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#ifndef XTT_CORPUS_DIR
#define XTT_CORPUS_DIR "corpus"
#endif

namespace xtt {

namespace {

std::string required(const YAML::Node& node, const char* key, const std::string& owner) {
  if (!node[key] || !node[key].IsScalar()) throw CorpusError(owner + ": missing '" + key + "'");
  return node[key].Scalar();
}

std::string canonical_tree(const std::string& text, const std::string& owner) {
  try {
    return serialize(parse_sexpr(text));
  } catch (const Error& e) {
    throw CorpusError(owner + ": bad tree \"" + text + "\": " + e.what());
  }
}

FixtureCase load_case(const YAML::Node& node, const std::string& owner) {
  FixtureCase c;
  c.input = canonical_tree(required(node, "input", owner), owner);
  const YAML::Node& expected = node["expected"];
  if (!expected) throw CorpusError(owner + ": case without 'expected'");
  if (expected.IsScalar()) {
    if (expected.Scalar() != "stuck") throw CorpusError(owner + ": unknown expectation '" + expected.Scalar() + "'");
    c.expect_stuck = true;
  } else {
    std::set<std::string> seen;
    for (const YAML::Node& e : expected) {
      ExpectedOutput out{canonical_tree(required(e, "tree", owner), owner), 1.0};
      if (e["weight"]) out.weight = e["weight"].as<double>();
      if (!seen.insert(out.tree).second) throw CorpusError(owner + ": duplicate expected tree " + out.tree);
      c.expected.push_back(std::move(out));
    }
    if (c.expected.empty()) throw CorpusError(owner + ": empty expected set");
  }
  if (node["yield"]) c.yield = node["yield"].Scalar();
  if (node["target"]) c.target = node["target"].Scalar();
  return c;
}

std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", w);
  return buf;
}

}  // namespace

std::filesystem::path default_corpus_dir() { return XTT_CORPUS_DIR; }

Corpus load_corpus(const std::filesystem::path& dir) {
  YAML::Node doc;
  try {
    doc = YAML::LoadFile((dir / "fixtures.yaml").string());
  } catch (const YAML::Exception& e) {
    throw CorpusError("fixture manifest " + (dir / "fixtures.yaml").string() + ": " + e.what());
  }

  Corpus corpus;
  for (const YAML::Node& node : doc["fixtures"]) {
    std::string name = required(node, "name", "fixture");
    std::string owner = "fixture " + name;
    Fixture f{name, node["description"] ? node["description"].Scalar() : "", dir / required(node, "rules", owner), {}};
    try {
      load_rules_file(f.rules_path);
    } catch (const Error& e) {
      throw CorpusError(owner + ": " + e.what());
    }
    for (const YAML::Node& c : node["cases"]) f.cases.push_back(load_case(c, owner));
    if (f.cases.empty()) throw CorpusError(owner + ": no cases");
    corpus.fixtures.push_back(std::move(f));
  }
  for (const YAML::Node& node : doc["classifications"]) {
    std::string name = required(node, "name", "classification");
    std::string owner = "classification " + name;
    Classification c{node["linear"].as<bool>(), node["nondeleting"].as<bool>(), node["extended"].as<bool>()};
    corpus.classifications.push_back({name, dir / required(node, "rules", owner), c});
  }
  for (const YAML::Node& node : doc["negatives"]) {
    std::string name = required(node, "name", "negative");
    std::string owner = "negative " + name;
    corpus.negatives.push_back({name, dir / required(node, "rules", owner), required(node, "error", owner)});
  }
  return corpus;
}

std::vector<Fixture> list_fixtures(const std::filesystem::path& dir) { return load_corpus(dir).fixtures; }

FixtureReport run_fixture(const Fixture& fixture, const TransduceOptions& options) {
  FixtureReport report;
  Transducer transducer = load_rules_file(fixture.rules_path);
  for (const FixtureCase& c : fixture.cases) {
    std::string where = fixture.name + " " + c.input + ": ";
    TransductionResult result = transduce(parse_sexpr(c.input), transducer, options);
    if (c.expect_stuck) {
      if (!result.outputs.empty()) {
        report.differences.push_back(where + "expected no complete output, got " +
                                     std::to_string(result.outputs.size()));
      }
      if (result.stuck_count == 0) report.differences.push_back(where + "expected a stuck configuration");
      continue;
    }
    std::map<std::string, double> got;
    for (const Output& o : result.outputs) got.emplace(serialize(o.tree), o.weight);
    for (const ExpectedOutput& e : c.expected) {
      auto it = got.find(e.tree);
      if (it == got.end()) {
        report.differences.push_back(where + "missing output " + e.tree);
      } else if (std::abs(it->second - e.weight) > kFixtureWeightTolerance) {
        report.differences.push_back(where + "weight of " + e.tree + ": expected " + format_weight(e.weight) +
                                     ", got " + format_weight(it->second));
      }
      if (it != got.end()) got.erase(it);
    }
    for (const auto& [tree, w] : got) {
      report.differences.push_back(where + "unexpected output " + tree + " (" + format_weight(w) + ")");
    }
    if (c.yield && !result.outputs.empty()) {
      std::string y = join(yield_of(result.outputs.front().tree));
      if (y != *c.yield) report.differences.push_back(where + "yield \"" + y + "\", expected \"" + *c.yield + "\"");
    }
  }
  return report;
}

std::string normalize_sentence(std::string_view sentence) {
  std::string out;
  for (char ch : sentence) {
    if (ch == ' ' && (out.empty() || out.back() == ' ')) continue;
    out += (ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a') : ch;
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  if (!out.empty() && out.back() == '.') out.pop_back();
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace xtt
