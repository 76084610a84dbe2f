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
#include <iosfwd>
#include <optional>
#include <string>

namespace xtt::cli {

enum class Command { transduce, check };

struct CliConfig {
  Command command = Command::transduce;
  std::filesystem::path rules_path;
  std::optional<std::string> tree_text;
  std::optional<std::filesystem::path> tree_path;  // one s-expression per line
  std::size_t beam = 0;                            // 0 = unlimited
  std::size_t max_steps = 10000;
  std::size_t top = 0;  // 0 = all
  std::string initial_state = "q";
  bool show_yield = false;
  bool show_derivations = false;
  bool verbose = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNoOutput = 2;

/// Prints "<weight>\t<tree>" lines per input followed by a summary line.
/// Returns 0 when every input has an output, 2 when some input has none, 1
/// on load or parse errors.
int run_transduce(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Loads and reports on a rule file. Returns 0 for a valid file, 1 otherwise.
int run_check(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string format_weight(double weight);  // 6 fractional digits

}  // namespace xtt::cli
