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

#include "xtt/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include "xtt/engine.hpp"
#include "xtt/rules.hpp"

namespace xtt::cli {

namespace {

std::vector<std::string> read_inputs(const CliConfig& config) {
  if (config.tree_text && config.tree_path) throw Error("give either --tree or --input, not both");
  if (config.tree_text) return {*config.tree_text};
  if (!config.tree_path) throw Error("one of --tree or --input is required");

  std::ifstream in(*config.tree_path, std::ios::binary);
  if (!in) throw Error("cannot read input file " + config.tree_path->string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n\f\v") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace

std::string format_weight(double weight) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", weight);
  return buf;
}

int run_transduce(const CliConfig& config, std::ostream& out, std::ostream& err) {
  Transducer transducer;
  std::vector<Tree> inputs;
  try {
    transducer = load_rules_file(config.rules_path);
    std::size_t line = 0;
    for (const std::string& text : read_inputs(config)) {
      ++line;
      try {
        inputs.push_back(parse_sexpr(text));
      } catch (const ParseError& e) {
        throw Error("input " + std::to_string(line) + ": " + e.what());
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  TransduceOptions options{config.beam, config.max_steps, config.initial_state};
  bool all_produced = true;
  for (const Tree& input : inputs) {
    if (config.tree_path) out << "# " << serialize(input) << '\n';
    TransductionResult result = transduce(input, transducer, options);
    std::size_t shown = config.top == 0 ? result.outputs.size() : std::min(config.top, result.outputs.size());
    for (std::size_t i = 0; i < shown; ++i) {
      const Output& o = result.outputs[i];
      out << format_weight(o.weight) << '\t' << serialize(o.tree);
      if (config.show_yield) out << '\t' << join(yield_of(o.tree));
      out << '\n';
      if (config.show_derivations) {
        for (const Derivation& d : o.derivations) {
          out << "    " << format_weight(d.weight) << '\t' << format_steps(d.steps) << '\n';
        }
      }
    }
    out << "outputs=" << result.outputs.size() << " stuck=" << result.stuck_count
        << " truncated=" << (result.truncated ? "true" : "false") << '\n';
    if (config.verbose) {
      err << "expansions=" << result.expansions << " peak_generation=" << result.peak_generation << '\n';
      for (const AnnotatedTree& s : result.stuck) err << "stuck: " << describe(s) << '\n';
    }
    if (result.outputs.empty()) all_produced = false;
  }
  return all_produced ? kExitOk : kExitNoOutput;
}

int run_check(const CliConfig& config, std::ostream& out, std::ostream& err) {
  Transducer transducer;
  try {
    transducer = load_rules_file(config.rules_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  transducer.initial_state = config.initial_state;

  out << "rules=" << transducer.rules.size() << '\n';
  out << "states=";
  bool first = true;
  for (const std::string& s : transducer.states()) {
    out << (first ? "" : " ") << s;
    first = false;
  }
  out << '\n';
  for (const Rule& r : transducer.rules) {
    for (const std::string& w : validate_rule(r).warnings) out << "warning: rule " << r.id << ": " << w << '\n';
  }
  Classification c = classify(transducer);
  out << "linear=" << (c.linear ? "true" : "false") << " nondeleting=" << (c.nondeleting ? "true" : "false")
      << " extended=" << (c.extended ? "true" : "false") << '\n';
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted extended top-down tree transducer"};
  app.require_subcommand(1);

  CliConfig config;
  std::string tree_text, tree_path;

  auto* transduce_cmd = app.add_subcommand("transduce", "Transduce trees with a rule file");
  transduce_cmd->add_option("--rules", config.rules_path, "Rule file (YAML)")->required();
  auto* tree_opt = transduce_cmd->add_option("--tree", tree_text, "Input tree as an s-expression");
  auto* input_opt = transduce_cmd->add_option("--input", tree_path, "File with one s-expression per line");
  tree_opt->excludes(input_opt);
  transduce_cmd->add_option("--beam", config.beam, "Beam width, 0 for unlimited");
  transduce_cmd->add_option("--max-steps", config.max_steps, "Rule application limit")
      ->check(CLI::PositiveNumber);
  transduce_cmd->add_option("--top", config.top, "Print at most N outputs, 0 for all");
  transduce_cmd->add_option("--state", config.initial_state, "Initial state");
  transduce_cmd->add_flag("--yield", config.show_yield, "Append the yield of each output");
  transduce_cmd->add_flag("--derivations", config.show_derivations, "Print supporting derivations");
  transduce_cmd->add_flag("--verbose", config.verbose, "Report stuck configurations on stderr");

  auto* check_cmd = app.add_subcommand("check", "Validate and classify a rule file");
  check_cmd->add_option("--rules", config.rules_path, "Rule file (YAML)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  if (check_cmd->parsed()) {
    config.command = Command::check;
    return run_check(config, out, err);
  }
  config.command = Command::transduce;
  if (tree_opt->count()) config.tree_text = tree_text;
  if (input_opt->count()) config.tree_path = tree_path;
  return run_transduce(config, out, err);
}

}  // namespace xtt::cli
