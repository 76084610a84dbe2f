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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/brute_force.hpp"
#include "support/generators.hpp"
#include "xtt/cli.hpp"
#include "xtt/corpus.hpp"
#include "xtt/engine.hpp"

using namespace xtt;

namespace {

constexpr double kWeightTol = 1e-9;
constexpr double kProductTol = 1e-12;
constexpr double kReplaySeconds = 1.0;
constexpr double kDivergenceSeconds = 5.0;
constexpr int kRandomChecks = 1000;
constexpr std::size_t kMaxDepth = 6;

using Clock = std::chrono::steady_clock;

// Collects failure notes for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Transducer corpus_rules(const char* name) { return load_rules_file(default_corpus_dir() / "rules" / name); }

const Fixture& fixture(const std::vector<Fixture>& all, const std::string& name) {
  for (const Fixture& f : all)
    if (f.name == name) return f;
  throw std::runtime_error("no fixture " + name);
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

int cli_status(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "xtt");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return status;
}

void criterion1(Check& c, const std::vector<Fixture>&) {
  auto t0 = Clock::now();
  Transducer fig2 = corpus_rules("fig2.yaml");
  Tree input = parse_sexpr("(A (B D E) (C F G))");
  AnnotatedTree start = initial(input, "q");

  auto b1 = match(fig2.rule(1).lhs, start.tree);
  c.expect(b1.has_value(), "rule 1 does not match the input");
  if (!b1) return;
  AnnotatedTree after1 = apply_rule(start, {}, fig2.rule(1), *b1);
  c.expect(after1.tree == parse_sexpr("(A (R (C F G) (B D E)) (S X))"), "tree after rule 1: " + serialize(after1.tree));
  c.expect(after1.states == std::map<Path, std::string>{{{0, 0}, "q"}, {{0, 1}, "q"}},
           "states after rule 1: " + describe(after1));

  auto b2 = match(fig2.rule(2).lhs, subtree_at(after1.tree, {0, 1}));
  c.expect(b2.has_value(), "rule 2 does not match at [0,1]");
  if (!b2) return;
  AnnotatedTree after2 = apply_rule(after1, {0, 1}, fig2.rule(2), *b2);
  c.expect(after2.tree == parse_sexpr("(A (R (C F G) U) (S X))"), "tree after rule 2: " + serialize(after2.tree));
  c.expect(after2.states == std::map<Path, std::string>{{{0, 0}, "q"}}, "states after rule 2: " + describe(after2));
  c.expect(subtree_at(after2.tree, {0, 0}).label() == "C", "remaining state is not on the C node");

  TransductionResult r = transduce(input, fig2);
  c.expect(r.outputs.empty(), "complete outputs were produced");
  c.expect(r.stuck_count >= 1, "stuck_count is 0");
  double secs = seconds_since(t0);
  c.expect(secs < kReplaySeconds, "runtime " + std::to_string(secs) + " s");
}

void criterion2(Check& c, const std::vector<Fixture>&) {
  TransductionResult r =
      transduce(parse_sexpr("(S (NP John) (VP (V misses) (NP Mary)))"), corpus_rules("french.yaml"));
  c.expect(r.outputs.size() == 1, "output count " + std::to_string(r.outputs.size()));
  if (r.outputs.empty()) return;
  c.expect(r.outputs[0].tree == parse_sexpr("(S (NP Marie) (VP (V manque) (PP (P à) (NP Jean))))"),
           "output " + serialize(r.outputs[0].tree));
  c.expect(close(r.outputs[0].weight, 1.0, kWeightTol), "weight " + std::to_string(r.outputs[0].weight));
}

void criterion3(Check& c, const std::vector<Fixture>& all) {
  const Fixture& f = fixture(all, "lolcat");
  Transducer lolcat = load_rules_file(f.rules_path);
  Tree input = parse_sexpr(f.cases.at(0).input);

  TransductionResult r = transduce(input, lolcat);
  c.expect(r.outputs.size() == 2, "output count " + std::to_string(r.outputs.size()));
  if (r.outputs.size() != 2) return;
  c.expect(close(r.outputs[0].weight, 0.9, kWeightTol), "best weight " + std::to_string(r.outputs[0].weight));
  c.expect(close(r.outputs[1].weight, 0.1, kWeightTol), "second weight " + std::to_string(r.outputs[1].weight));
  c.expect(serialize(r.outputs[0].tree).find("Pokemans") != std::string::npos, "best output lacks Pokemans");

  TransductionResult beam = transduce(input, lolcat, {.beam = 1});
  c.expect(beam.outputs.size() == 1, "beam 1 output count " + std::to_string(beam.outputs.size()));
  if (!beam.outputs.empty()) c.expect(close(beam.outputs[0].weight, 0.9, kWeightTol), "beam 1 kept the wrong output");
  c.expect(beam.truncated, "beam 1 not marked truncated");
}

void criterion4(Check& c, const std::vector<Fixture>& all) {
  const std::vector<std::pair<std::string, std::string>> targets = {
      {"spanish-gusta", "María me gusta a mí"},     {"spanish-soler", "Juan suele ir a casa"},
      {"german-gern", "Ich esse gern"},             {"german-hunger", "Ich habe Hunger"},
      {"spanish-entrar", "Juan entró en la casa"}, {"spanish-forzar", "Juan forzó la entrada al cuarto"},
      {"spanish-stab", "Yo le di puñaladas a Juan"}};
  auto t0 = Clock::now();
  for (const auto& [name, sentence] : targets) {
    const Fixture& f = fixture(all, name);
    Transducer t = load_rules_file(f.rules_path);
    for (const FixtureCase& fc : f.cases) {
      TransductionResult r = transduce(parse_sexpr(fc.input), t);
      c.expect(!r.outputs.empty(), name + ": no output");
      if (r.outputs.empty()) continue;
      std::string y = join(yield_of(r.outputs.front().tree));
      c.expect(fc.yield && y == *fc.yield, name + ": yield \"" + y + "\" differs from the fixture yield");
      c.expect(normalize_sentence(y) == normalize_sentence(sentence),
               name + ": yield \"" + y + "\" does not match \"" + sentence + "\"");
      for (const Output& o : r.outputs) {
        c.expect(normalize_sentence(join(yield_of(o.tree))) == normalize_sentence(sentence),
                 name + ": extra output " + serialize(o.tree));
      }
    }
  }
  double secs = seconds_since(t0);
  c.expect(secs < kDivergenceSeconds, "runtime " + std::to_string(secs) + " s");
}

void criterion5(Check& c, const std::vector<Fixture>&) {
  Classification fig2 = classify(corpus_rules("fig2.yaml"));
  c.expect(fig2.linear && !fig2.nondeleting && !fig2.extended, "two-rule example classification");
  c.expect(classify(corpus_rules("french.yaml")).extended, "rotation transducer not extended");
  c.expect(!classify(corpus_rules("spanish.yaml")).linear, "Spanish rules classified linear");

  std::string out;
  cli_status({"check", "--rules", (default_corpus_dir() / "rules/fig2.yaml").string()}, &out);
  c.expect(out.find("linear=true nondeleting=false extended=false") != std::string::npos, "check output: " + out);
}

void criterion6(Check& c, const std::vector<Fixture>& all) {
  for (const Fixture& f : all) {
    Transducer t = load_rules_file(f.rules_path);
    for (const FixtureCase& fc : f.cases) {
      Tree input = parse_sexpr(fc.input);
      oracle::Outcomes expected = oracle::enumerate(input, t);
      TransductionResult r = transduce(input, t);
      c.expect(r.outputs.size() == expected.size(), f.name + ": engine " + std::to_string(r.outputs.size()) +
                                                        " outputs, oracle " + std::to_string(expected.size()));
      for (const Output& o : r.outputs) {
        auto it = expected.find(serialize(o.tree));
        c.expect(it != expected.end(), f.name + ": oracle lacks " + serialize(o.tree));
        if (it != expected.end()) {
          c.expect(close(it->second.second, o.weight, kWeightTol), f.name + ": weight differs for " + it->first);
        }
      }
    }
  }
}

void criterion7(Check& c, const std::vector<Fixture>& all) {
  testing::Gen gen(424242);
  for (int i = 0; i < kRandomChecks; ++i) {
    Tree t = gen.tree(kMaxDepth);
    c.expect(parse_sexpr(serialize(t)) == t, "round trip failed for " + serialize(t));
    Bindings cut;
    Pattern p = gen.abstract(t, cut);
    auto b = match(p, substitute(p, cut));
    c.expect(b && *b == cut && substitute(p, *b) == t, "match/substitute failed for " + serialize(p));
  }

  for (const Fixture& f : all) {
    Transducer t = load_rules_file(f.rules_path);
    for (const FixtureCase& fc : f.cases) {
      Tree input = parse_sexpr(fc.input);
      TransductionResult r = transduce(input, t);
      for (const Output& o : r.outputs) {
        double sum = 0;
        for (const Derivation& d : o.derivations) {
          double product = 1.0;
          for (const Step& s : d.steps) product *= t.rule(s.rule_id).weight;
          c.expect(std::abs(product - d.weight) <= kProductTol * std::max(1.0, product),
                   f.name + ": derivation weight is not the rule product");
          sum += d.weight;
        }
        c.expect(std::abs(sum - o.weight) <= kProductTol * std::max(1.0, sum),
                 f.name + ": output weight is not the derivation sum");
      }

      std::vector<std::string> args = {"transduce", "--rules", f.rules_path.string(), "--tree", fc.input,
                                       "--yield",   "--derivations"};
      std::string first, second;
      cli_status(args, &first);
      cli_status(args, &second);
      c.expect(first == second, f.name + ": repeated runs differ");
    }
  }
}

void criterion8(Check& c, const std::vector<Fixture>&) {
  Corpus corpus = load_corpus();
  const std::vector<std::string> classes = {"missing-key", "rhs-only-variable", "bad-newstates-path", "nested-paths",
                                            "negative-weight"};
  for (const std::string& cls : classes) {
    bool found = false;
    for (const NegativeFixture& n : corpus.negatives) {
      if (n.name != cls) continue;
      found = true;
      int status = cli_status({"check", "--rules", n.rules_path.string()});
      c.expect(status == 1, cls + ": exit status " + std::to_string(status));
      try {
        load_rules_file(n.rules_path);
        c.expect(false, cls + ": loaded without error");
      } catch (const RuleFileError& e) {
        c.expect(std::string(e.what()).find(n.error) != std::string::npos, cls + ": message \"" + e.what() + "\"");
      }
    }
    c.expect(found, "no negative fixture for " + cls);
  }
}

}  // namespace

int main() {
  std::vector<Fixture> fixtures;
  try {
    fixtures = list_fixtures();
  } catch (const std::exception& e) {
    std::cout << "[FAIL] corpus failed to load: " << e.what() << '\n';
    return 1;
  }

  const std::vector<std::pair<std::string, std::function<void(Check&, const std::vector<Fixture>&)>>> criteria = {
      {"AC1 two-rule replay and incomplete transduction", criterion1},
      {"AC2 French subject/object rotation", criterion2},
      {"AC3 LOLcat weights and beam pruning", criterion3},
      {"AC4 seven divergence translations", criterion4},
      {"AC5 linear/nondeleting/extended classification", criterion5},
      {"AC6 engine matches brute-force oracle", criterion6},
      {"AC7 round-trip, weight-law and determinism properties", criterion7},
      {"AC8 invalid rule files rejected with exit 1", criterion8},
  };

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check check;
    try {
      run(check, fixtures);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (check.failures.empty() ? "[PASS] " : "[FAIL] ") << name << '\n';
    for (const std::string& f : check.failures) std::cout << "       " << f << '\n';
    if (!check.failures.empty()) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
