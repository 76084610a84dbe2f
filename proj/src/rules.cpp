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

#include "xtt/rules.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace xtt {

namespace {

constexpr std::string_view kKeys[] = {"state", "lhs", "rhs", "newstates", "weight"};

[[noreturn]] void entry_error(std::size_t entry, const std::string& msg) {
  throw RuleFileError("entry " + std::to_string(entry) + ": " + msg, entry);
}

std::string scalar(const YAML::Node& node, std::size_t entry, const std::string& key) {
  if (!node.IsScalar()) entry_error(entry, "'" + key + "' must be a scalar");
  return node.Scalar();
}

Pattern pattern_field(const YAML::Node& node, std::size_t entry, const std::string& key) {
  std::string text = scalar(node, entry, key);
  try {
    return parse_pattern(text);
  } catch (const Error& e) {
    entry_error(entry, key + ": " + e.what());
  }
}

Path path_field(const YAML::Node& node, std::size_t entry) {
  if (!node.IsSequence()) entry_error(entry, "newstates path must be a sequence of integers");
  Path path;
  for (const YAML::Node& step : node) {
    long long i = -1;
    try {
      i = step.as<long long>();
    } catch (const YAML::Exception&) {
      entry_error(entry, "newstates path step '" + (step.IsScalar() ? step.Scalar() : std::string("?")) +
                             "' is not an integer");
    }
    if (i < 0) entry_error(entry, "newstates path step " + std::to_string(i) + " is negative");
    path.push_back(static_cast<std::size_t>(i));
  }
  return path;
}

std::vector<StatePlacement> newstates_field(const YAML::Node& node, std::size_t entry) {
  std::vector<StatePlacement> out;
  if (node.IsNull()) return out;
  if (!node.IsSequence()) entry_error(entry, "newstates must be a sequence of [path, state] pairs");
  for (const YAML::Node& item : node) {
    if (!item.IsSequence() || item.size() != 2) {
      entry_error(entry, "each newstates item must be a two-element sequence [path, state]");
    }
    out.push_back({path_field(item[0], entry), scalar(item[1], entry, "newstates state")});
  }
  return out;
}

double weight_field(const YAML::Node& node, std::size_t entry) {
  std::string text = scalar(node, entry, "weight");
  double w = 0;
  try {
    w = node.as<double>();
  } catch (const YAML::Exception&) {
    entry_error(entry, "weight '" + text + "' is not a number");
  }
  return w;
}

Rule rule_from_yaml(const YAML::Node& node, std::size_t entry) {
  if (!node.IsMap()) entry_error(entry, "entry must be a mapping");
  for (const auto& kv : node) {
    std::string key = kv.first.as<std::string>();
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      entry_error(entry, "unknown key '" + key + "'");
    }
  }
  for (const char* key : {"state", "lhs", "rhs"}) {
    if (!node[key]) entry_error(entry, std::string("missing required key '") + key + "'");
  }

  Rule rule{
      .id = entry,
      .state = scalar(node["state"], entry, "state"),
      .lhs = pattern_field(node["lhs"], entry, "lhs"),
      .rhs = pattern_field(node["rhs"], entry, "rhs"),
      .newstates = {},
      .weight = 1.0,
  };
  if (node["newstates"]) rule.newstates = newstates_field(node["newstates"], entry);
  if (node["weight"]) rule.weight = weight_field(node["weight"], entry);

  RuleReport report = validate_rule(rule);
  if (!report.ok()) {
    std::string msg = report.violations.front();
    for (std::size_t i = 1; i < report.violations.size(); ++i) msg += "; " + report.violations[i];
    entry_error(entry, msg);
  }
  return rule;
}

}  // namespace

RuleFileError::RuleFileError(const std::string& what, std::size_t entry) : Error(what), entry_(entry) {}

std::set<std::string> Transducer::states() const {
  std::set<std::string> out{initial_state};
  for (const Rule& r : rules) {
    out.insert(r.state);
    for (const StatePlacement& s : r.newstates) out.insert(s.state);
  }
  return out;
}

bool Transducer::has_rule(std::size_t id) const noexcept { return id >= 1 && id <= rules.size(); }

const Rule& Transducer::rule(std::size_t id) const {
  if (!has_rule(id)) throw Error("no rule with id " + std::to_string(id));
  return rules[id - 1];
}

Transducer load_rules(std::string_view rule_file_text) {
  YAML::Node doc;
  try {
    doc = YAML::Load(std::string(rule_file_text));
  } catch (const YAML::Exception& e) {
    throw RuleFileError("malformed YAML: " + std::string(e.what()), 0);
  }
  if (!doc || doc.IsNull()) throw RuleFileError("empty rule file", 0);
  if (!doc.IsSequence()) throw RuleFileError("rule file must be a sequence of rule entries", 0);
  if (doc.size() == 0) throw RuleFileError("empty rule file", 0);

  Transducer t;
  std::size_t entry = 0;
  for (const YAML::Node& node : doc) t.rules.push_back(rule_from_yaml(node, ++entry));
  return t;
}

Transducer load_rules_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuleFileError("cannot read rule file " + path.string(), 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_rules(ss.str());
}

RuleReport validate_rule(const Rule& rule) {
  RuleReport report;
  auto& bad = report.violations;

  if (!is_valid_label(rule.state)) bad.push_back("invalid state name '" + rule.state + "'");
  if (!std::isfinite(rule.weight) || rule.weight < 0) {
    std::ostringstream w;
    w << rule.weight;
    bad.push_back("weight " + w.str() + " is not a non-negative number");
  }

  std::set<std::string> lhs_vars;
  try {
    parse_pattern(serialize(rule.lhs));
    parse_pattern(serialize(rule.rhs));
    lhs_vars = lhs_variables(rule.lhs);
  } catch (const PatternError& e) {
    bad.push_back(e.what());
  }
  for (const std::string& v : variables_of(rule.rhs)) {
    if (!lhs_vars.count(v)) bad.push_back("rhs variable " + v + " does not occur in lhs");
  }

  for (std::size_t i = 0; i < rule.newstates.size(); ++i) {
    const StatePlacement& s = rule.newstates[i];
    if (!is_valid_label(s.state)) bad.push_back("invalid newstates state name '" + s.state + "'");
    if (!is_valid_path(rule.rhs, s.path)) {
      bad.push_back("newstates path " + format_path(s.path) + " is not a valid rhs position");
      continue;
    }
    const Tree& target = subtree_at(rule.rhs, s.path);
    if (!is_variable(target.label())) {
      report.warnings.push_back("newstates path " + format_path(s.path) + " addresses non-variable rhs node " +
                                target.label());
    }
    if (s.path.empty() && s.state == rule.state) {
      report.warnings.push_back("self-loop risk at root path: state " + s.state + " re-entered at the rule site");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const Path& other = rule.newstates[j].path;
      if (is_prefix(other, s.path) || is_prefix(s.path, other)) {
        bad.push_back("nested state placements " + format_path(other) + " and " + format_path(s.path));
      }
    }
  }
  return report;
}

Classification classify(const Rule& rule) {
  Classification c;
  auto rhs_counts = variable_occurrences(rule.rhs);
  for (const auto& [v, n] : variable_occurrences(rule.lhs)) {
    auto it = rhs_counts.find(v);
    std::size_t uses = it == rhs_counts.end() ? 0 : it->second;
    if (uses > 1) c.linear = false;
    if (uses == 0) c.nondeleting = false;
  }
  bool plain = !is_variable(rule.lhs.label());
  std::set<std::string> seen;
  for (const Tree& child : rule.lhs.children()) {
    if (!child.is_leaf() || !is_variable(child.label()) || !seen.insert(child.label()).second) plain = false;
  }
  c.extended = !plain;
  return c;
}

Classification classify(const Transducer& transducer) {
  Classification c;
  for (const Rule& r : transducer.rules) {
    Classification rc = classify(r);
    c.linear = c.linear && rc.linear;
    c.nondeleting = c.nondeleting && rc.nondeleting;
    c.extended = c.extended || rc.extended;
  }
  return c;
}

std::string dump_rules(const Transducer& transducer) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginSeq;
  for (const Rule& r : transducer.rules) {
    out << YAML::BeginMap;
    out << YAML::Key << "state" << YAML::Value << r.state;
    out << YAML::Key << "lhs" << YAML::Value << YAML::DoubleQuoted << serialize(r.lhs);
    out << YAML::Key << "rhs" << YAML::Value << YAML::DoubleQuoted << serialize(r.rhs);
    if (!r.newstates.empty()) {
      out << YAML::Key << "newstates" << YAML::Value << YAML::BeginSeq;
      for (const StatePlacement& s : r.newstates) {
        out << YAML::Flow << YAML::BeginSeq << YAML::Flow << YAML::BeginSeq;
        for (std::size_t step : s.path) out << step;
        out << YAML::EndSeq << s.state << YAML::EndSeq;
      }
      out << YAML::EndSeq;
    }
    out << YAML::Key << "weight" << YAML::Value << r.weight;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  return std::string(out.c_str()) + "\n";
}

}  // namespace xtt
