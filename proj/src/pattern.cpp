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

#include "xtt/pattern.hpp"

namespace xtt {

namespace {

void check_variables_are_leaves(const Pattern& p) {
  if (is_variable(p.label()) && !p.is_leaf()) {
    throw PatternError("variable " + p.label() + " has children; variables must be leaves");
  }
  for (const Tree& c : p.children()) check_variables_are_leaves(c);
}

void count_into(const Pattern& p, std::map<std::string, std::size_t>& counts) {
  if (is_variable(p.label())) ++counts[p.label()];
  for (const Tree& c : p.children()) count_into(c, counts);
}

bool match_into(const Pattern& p, const Tree& t, Bindings& out) {
  if (is_variable(p.label()) && p.is_leaf()) {
    auto [it, inserted] = out.emplace(p.label(), t);
    if (!inserted) throw PatternError("variable " + p.label() + " occurs twice in a left-hand side");
    return true;
  }
  if (p.label() != t.label() || p.arity() != t.arity()) return false;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    if (!match_into(p.children()[i], t.children()[i], out)) return false;
  }
  return true;
}

}  // namespace

bool is_variable(std::string_view label) noexcept { return label.size() > 1 && label[0] == '?'; }

Pattern parse_pattern(std::string_view text) {
  Pattern p = parse_sexpr(text);
  check_variables_are_leaves(p);
  return p;
}

std::map<std::string, std::size_t> variable_occurrences(const Pattern& pattern) {
  std::map<std::string, std::size_t> counts;
  count_into(pattern, counts);
  return counts;
}

std::set<std::string> variables_of(const Pattern& pattern) {
  std::set<std::string> vars;
  for (const auto& [name, n] : variable_occurrences(pattern)) vars.insert(name);
  return vars;
}

std::set<std::string> lhs_variables(const Pattern& lhs) {
  std::set<std::string> vars;
  for (const auto& [name, n] : variable_occurrences(lhs)) {
    if (n > 1) throw PatternError("duplicate variable " + name + " in left-hand side");
    vars.insert(name);
  }
  return vars;
}

std::optional<Bindings> match(const Pattern& pattern, const Tree& tree) {
  Bindings b;
  if (!match_into(pattern, tree, b)) return std::nullopt;
  return b;
}

Tree substitute(const Pattern& pattern, const Bindings& bindings) {
  if (is_variable(pattern.label()) && pattern.is_leaf()) {
    auto it = bindings.find(pattern.label());
    if (it == bindings.end()) throw PatternError("unbound variable " + pattern.label());
    return it->second;
  }
  if (pattern.is_leaf()) return pattern;
  std::vector<Tree> kids;
  kids.reserve(pattern.arity());
  for (const Tree& c : pattern.children()) kids.push_back(substitute(c, bindings));
  return Tree(pattern.label(), std::move(kids));
}

}  // namespace xtt
