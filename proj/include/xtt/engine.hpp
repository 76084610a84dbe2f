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

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "xtt/pattern.hpp"
#include "xtt/rules.hpp"
#include "xtt/tree.hpp"

namespace xtt {

/// A tree plus the states pending on some of its nodes. Annotated paths are
/// pairwise prefix-free.
struct AnnotatedTree {
  Tree tree;
  std::map<Path, std::string> states;

  bool complete() const noexcept { return states.empty(); }

  friend bool operator==(const AnnotatedTree&, const AnnotatedTree&) = default;
};

/// Serialized tree followed by the annotations, e.g.
/// "(A (R (C F G) U) (S X)) {[0,0]:q}". Identity key for deduplication.
std::string describe(const AnnotatedTree& at);

/// `tree` with its root in `state`.
AnnotatedTree initial(const Tree& tree, const std::string& state);

/// A rule that can fire at an annotated node, with its match bindings.
struct Site {
  std::size_t rule_id;
  Path path;
  Bindings bindings;
};

/// Every (rule, annotated node) pair whose states agree and whose lhs
/// matches, ordered by path then rule id.
std::vector<Site> applicable_sites(const AnnotatedTree& at, const Transducer& transducer);

/// Rewrites the subtree at `site` with the substituted rhs, drops the site's
/// annotation, and adds the rule's newstates relative to the site.
AnnotatedTree apply_rule(const AnnotatedTree& at, const Path& site, const Rule& rule, const Bindings& bindings);

struct Step {
  std::size_t rule_id;
  Path site;

  friend auto operator<=>(const Step&, const Step&) = default;
};

/// Steps in canonical order: stably sorted by site. Steps at disjoint sites
/// commute, so every application order of one derivation has the same
/// canonical form, and that form is itself a valid application order.
struct Derivation {
  std::vector<Step> steps;
  double weight = 1.0;
};

std::string format_steps(const std::vector<Step>& steps);  // "1@[] 2@[0,1]"

struct TransduceOptions {
  std::size_t beam = 0;  // 0 = unlimited
  std::size_t max_steps = 10000;
  std::optional<std::string> initial_state;
};

struct Output {
  Tree tree;
  double weight = 0;  // sum of derivation weights
  std::vector<Derivation> derivations;
};

struct TransductionResult {
  std::vector<Output> outputs;  // weight descending, then serialized tree
  std::size_t stuck_count = 0;
  bool truncated = false;
  std::vector<AnnotatedTree> stuck;  // the dead ends, in discovery order
  std::size_t expansions = 0;
  std::size_t peak_generation = 0;  // largest generation before pruning
};

/// Generational search over configurations starting from the input's root
/// in the initial state. Each generation applies every applicable rule at
/// every annotated site of every configuration. Identical configurations
/// are merged; a configuration's weight is the sum of its distinct
/// derivations' weights. With a finite beam only the best `beam`
/// configurations of each generation survive.
TransductionResult transduce(const Tree& tree, const Transducer& transducer, const TransduceOptions& options = {});

class ReplayError : public Error {
 public:
  ReplayError(const std::string& what, std::size_t step);
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Re-applies `steps` from the initial configuration. Throws ReplayError
/// (0-based step index) when a rule is not applicable at its recorded site.
AnnotatedTree replay(const Tree& tree, const Transducer& transducer, const std::vector<Step>& steps);

}  // namespace xtt
