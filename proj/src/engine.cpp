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

#include "xtt/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace xtt {

namespace {

using DerivationSet = std::map<std::vector<Step>, double>;

struct Config {
  AnnotatedTree at;
  DerivationSet derivations;

  double weight() const {
    double w = 0;
    for (const auto& [steps, dw] : derivations) w += dw;
    return w;
  }
};

std::vector<Step> extend(const std::vector<Step>& steps, Step next) {
  std::vector<Step> out = steps;
  auto pos = std::upper_bound(out.begin(), out.end(), next.site,
                              [](const Path& site, const Step& s) { return site < s.site; });
  out.insert(pos, std::move(next));
  return out;
}

void merge_into(DerivationSet& into, const DerivationSet& from) {
  for (const auto& [steps, w] : from) into.emplace(steps, w);
}

// Orders by weight descending, then key ascending.
template <typename T>
void sort_ranked(std::vector<std::pair<std::string, T>>& v, auto weight_of) {
  std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
    double wa = weight_of(a.second), wb = weight_of(b.second);
    if (wa != wb) return wa > wb;
    return a.first < b.first;
  });
}

}  // namespace

std::string describe(const AnnotatedTree& at) {
  std::string s = serialize(at.tree) + " {";
  bool first = true;
  for (const auto& [path, state] : at.states) {
    if (!first) s += ' ';
    first = false;
    s += format_path(path) + ":" + state;
  }
  return s + "}";
}

std::string format_steps(const std::vector<Step>& steps) {
  std::string s;
  for (const Step& st : steps) {
    if (!s.empty()) s += ' ';
    s += std::to_string(st.rule_id) + "@" + format_path(st.site);
  }
  return s;
}

AnnotatedTree initial(const Tree& tree, const std::string& state) { return {tree, {{Path{}, state}}}; }

std::vector<Site> applicable_sites(const AnnotatedTree& at, const Transducer& transducer) {
  std::vector<Site> sites;
  const std::map<Path, std::string>& states = at.states;
  for (auto it = states.begin(); it != states.end(); ++it) {
    const auto& [path, state] = *it;
    // Annotations are prefix-free; in path order any descendant of `path`
    // would be the next entry.
    if (std::next(it) != states.end() && is_prefix(path, std::next(it)->first)) {
      throw std::logic_error("nested annotations at " + format_path(path) + " and " +
                             format_path(std::next(it)->first));
    }
    const Tree& subtree = subtree_at(at.tree, path);
    for (const Rule& rule : transducer.rules) {
      if (rule.state != state) continue;
      if (auto b = match(rule.lhs, subtree)) sites.push_back({rule.id, path, std::move(*b)});
    }
  }
  return sites;
}

AnnotatedTree apply_rule(const AnnotatedTree& at, const Path& site, const Rule& rule, const Bindings& bindings) {
  AnnotatedTree next{replace_at(at.tree, site, substitute(rule.rhs, bindings)), {}};
  for (const auto& [path, state] : at.states) {
    if (!is_prefix(site, path)) next.states.emplace(path, state);
  }
  for (const StatePlacement& s : rule.newstates) {
    Path p = site;
    p.insert(p.end(), s.path.begin(), s.path.end());
    next.states[p] = s.state;
  }
  return next;
}

TransductionResult transduce(const Tree& tree, const Transducer& transducer, const TransduceOptions& options) {
  TransductionResult result;
  const std::string& start = options.initial_state ? *options.initial_state : transducer.initial_state;

  std::map<std::string, Config> outputs;
  std::vector<Config> frontier;
  frontier.push_back({initial(tree, start), {{std::vector<Step>{}, 1.0}}});

  bool out_of_steps = false;
  while (!frontier.empty() && !out_of_steps) {
    std::map<std::string, Config> generation;
    for (const Config& config : frontier) {
      if (out_of_steps) break;
      std::vector<Site> sites = applicable_sites(config.at, transducer);
      if (sites.empty()) {
        result.stuck.push_back(config.at);
        continue;
      }
      for (const Site& site : sites) {
        if (result.expansions >= options.max_steps) {
          out_of_steps = true;
          result.truncated = true;
          break;
        }
        ++result.expansions;
        const Rule& rule = transducer.rule(site.rule_id);
        AnnotatedTree child = apply_rule(config.at, site.path, rule, site.bindings);
        DerivationSet extended;
        for (const auto& [steps, w] : config.derivations) {
          extended.emplace(extend(steps, {site.rule_id, site.path}), w * rule.weight);
        }
        std::string key = describe(child);
        auto it = generation.find(key);
        if (it == generation.end()) {
          generation.emplace(std::move(key), Config{std::move(child), std::move(extended)});
        } else {
          merge_into(it->second.derivations, extended);
        }
      }
    }

    std::vector<std::pair<std::string, Config>> ranked(std::make_move_iterator(generation.begin()),
                                                       std::make_move_iterator(generation.end()));
    result.peak_generation = std::max(result.peak_generation, ranked.size());
    sort_ranked(ranked, [](const Config& c) { return c.weight(); });
    if (options.beam != 0 && ranked.size() > options.beam) {
      ranked.erase(ranked.begin() + static_cast<std::ptrdiff_t>(options.beam), ranked.end());
      result.truncated = true;
    }

    frontier.clear();
    for (auto& [key, config] : ranked) {
      if (!config.at.complete()) {
        frontier.push_back(std::move(config));
        continue;
      }
      std::string tree_key = serialize(config.at.tree);
      auto it = outputs.find(tree_key);
      if (it == outputs.end()) {
        outputs.emplace(std::move(tree_key), std::move(config));
      } else {
        merge_into(it->second.derivations, config.derivations);
      }
    }
  }

  std::vector<std::pair<std::string, Config>> ranked(std::make_move_iterator(outputs.begin()),
                                                     std::make_move_iterator(outputs.end()));
  sort_ranked(ranked, [](const Config& c) { return c.weight(); });
  for (auto& [key, config] : ranked) {
    Output out{config.at.tree, config.weight(), {}};
    for (const auto& [steps, w] : config.derivations) out.derivations.push_back({steps, w});
    std::stable_sort(out.derivations.begin(), out.derivations.end(),
                     [](const Derivation& a, const Derivation& b) { return a.weight > b.weight; });
    result.outputs.push_back(std::move(out));
  }
  result.stuck_count = result.stuck.size();
  return result;
}

ReplayError::ReplayError(const std::string& what, std::size_t step) : Error(what), step_(step) {}

AnnotatedTree replay(const Tree& tree, const Transducer& transducer, const std::vector<Step>& steps) {
  AnnotatedTree at = initial(tree, transducer.initial_state);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Step& step = steps[i];
    auto fail = [&](const std::string& why) -> ReplayError {
      return ReplayError("replay step " + std::to_string(i) + " (rule " + std::to_string(step.rule_id) + " at " +
                             format_path(step.site) + "): " + why,
                         i);
    };
    if (!transducer.has_rule(step.rule_id)) throw fail("no such rule");
    const Rule& rule = transducer.rule(step.rule_id);
    auto state = at.states.find(step.site);
    if (state == at.states.end()) throw fail("site carries no state");
    if (state->second != rule.state) throw fail("site is in state " + state->second);
    auto bindings = match(rule.lhs, subtree_at(at.tree, step.site));
    if (!bindings) throw fail("lhs does not match");
    at = apply_rule(at, step.site, rule, *bindings);
  }
  return at;
}

}  // namespace xtt
