// Copyright 2026 The hdfuzz Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommands of the hdfuzz tool. Each returns the process exit code:
//   0 success, 1 parse/validation/I/O/config error, 2 unreachable target,
//   3 crash (replay only).

#ifndef HDFUZZ_TOOLS_COMMANDS_H_
#define HDFUZZ_TOOLS_COMMANDS_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hdfuzz::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnreachable = 2;
inline constexpr int kExitCrash = 3;

struct AnalyzeOptions {
  std::string program_path;
  std::vector<std::string> targets;
  std::string out_path;  // empty: standard output
  std::string callgraph_dot_path;
  std::string cfg_dot_path;
};

struct FuzzOptions {
  std::string program_path;
  std::vector<std::string> targets;
  std::string config_path;  // empty: defaults only
  std::string out_dir;
  // Overrides; unset means "keep the config file value".
  std::optional<bool> stop_on_first_crash;
  std::optional<bool> virtual_time;
  std::optional<uint64_t> seed;
  std::optional<double> time_budget;
  std::optional<double> t_x;
  std::optional<std::string> ablation;
};

struct ReplayOptions {
  std::string program_path;
  std::vector<std::string> targets;
  std::string input_path;
  std::optional<std::string> ablation;
};

int cmd_analyze(const AnalyzeOptions &opts, std::ostream &out, std::ostream &err);
int cmd_fuzz(const FuzzOptions &opts, std::ostream &out, std::ostream &err);
int cmd_replay(const ReplayOptions &opts, std::ostream &out, std::ostream &err);

// Parses argv and dispatches.
int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err);

}  // namespace hdfuzz::cli

#endif  // HDFUZZ_TOOLS_COMMANDS_H_
