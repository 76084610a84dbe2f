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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "xtt/tree.hpp"

namespace xtt {

// A pattern is a tree whose leaves labeled "?name" are variables.
using Pattern = Tree;

/// Variable name -> bound subtree.
using Bindings = std::map<std::string, Tree>;

class PatternError : public Error {
 public:
  using Error::Error;
};

/// A variable is "?" followed by at least one more character.
bool is_variable(std::string_view label) noexcept;

/// Parses pattern text; rejects variables that have children.
Pattern parse_pattern(std::string_view text);

/// Distinct variable names of `pattern`.
std::set<std::string> variables_of(const Pattern& pattern);

/// Like variables_of, but throws PatternError naming the first variable that
/// occurs twice. Used for left-hand sides, which must be left-linear.
std::set<std::string> lhs_variables(const Pattern& lhs);

/// Occurrence count per variable.
std::map<std::string, std::size_t> variable_occurrences(const Pattern& pattern);

/// One-way matching of `pattern` against `tree`. Literal nodes must agree
/// on label and exact arity; a literal leaf only matches a leaf. Returns
/// std::nullopt on mismatch.
std::optional<Bindings> match(const Pattern& pattern, const Tree& tree);

/// Replaces every variable leaf of `pattern` by its binding. A variable used
/// k times produces k copies. Throws PatternError on an unbound variable.
Tree substitute(const Pattern& pattern, const Bindings& bindings);

}  // namespace xtt
