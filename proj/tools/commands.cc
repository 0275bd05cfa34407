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

#include "commands.h"

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "hdfuzz/campaign.h"
#include "hdfuzz/config.h"
#include "hdfuzz/ir.h"
#include "hdfuzz/pipeline.h"
#include "hdfuzz/report.h"

namespace hdfuzz::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string &path, const std::string &data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << data;
  if (!out) throw IoError("cannot write '" + path + "'");
}

// Parses the program and resolves targets. Errors go to `err`.
std::optional<AnalysisBundle> load(const std::string &program_path,
                                   const std::vector<std::string> &targets, std::ostream &err) {
  std::shared_ptr<const ir::Program> program;
  try {
    program = std::make_shared<const ir::Program>(ir::parse_program(read_file(program_path)));
  } catch (const ir::ParseError &e) {
    err << "error: " << program_path << ":" << e.what() << "\n";
    return std::nullopt;
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
  if (targets.empty()) {
    err << "error: no target given\n";
    return std::nullopt;
  }
  try {
    return analyze(program, targets);
  } catch (const ir::TargetError &e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

void report_unreachable(const AnalysisBundle &bundle, std::ostream &err) {
  for (const std::string &t : bundle.unreachable_targets()) {
    err << "error: unreachable target " << t << "\n";
  }
}

}  // namespace

int cmd_analyze(const AnalyzeOptions &opts, std::ostream &out, std::ostream &err) {
  std::optional<AnalysisBundle> bundle = load(opts.program_path, opts.targets, err);
  if (!bundle) return kExitError;
  try {
    const std::string text = report::analyze_report(*bundle).dump(2) + "\n";
    if (opts.out_path.empty()) {
      out << text;
    } else {
      write_file(opts.out_path, text);
    }
    if (!opts.callgraph_dot_path.empty()) {
      write_file(opts.callgraph_dot_path, report::callgraph_dot(*bundle));
    }
    if (!opts.cfg_dot_path.empty()) write_file(opts.cfg_dot_path, report::cfg_dot(*bundle));
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  if (!bundle->reachable()) {
    report_unreachable(*bundle, err);
    return kExitUnreachable;
  }
  return kExitOk;
}

int cmd_fuzz(const FuzzOptions &opts, std::ostream &out, std::ostream &err) {
  fuzzer::CampaignConfig config;
  try {
    if (!opts.config_path.empty()) {
      fuzzer::apply_config_text(read_file(opts.config_path), config);
    }
    if (opts.ablation) fuzzer::apply_ablation(*opts.ablation, config);
  } catch (const std::exception &e) {
    err << "error: " << (opts.config_path.empty() ? "" : opts.config_path + ": ") << e.what()
        << "\n";
    return kExitError;
  }
  if (opts.stop_on_first_crash) config.stop_on_first_crash = *opts.stop_on_first_crash;
  if (opts.virtual_time) config.virtual_time = *opts.virtual_time;
  if (opts.seed) config.rng_seed = *opts.seed;
  if (opts.time_budget) config.time_budget = *opts.time_budget;
  if (opts.t_x) config.t_x = *opts.t_x;
  if (!opts.targets.empty()) config.targets = opts.targets;

  std::optional<AnalysisBundle> bundle = load(opts.program_path, config.targets, err);
  if (!bundle) return kExitError;
  if (!bundle->reachable()) {
    report_unreachable(*bundle, err);
    return kExitUnreachable;
  }
  try {
    config.validate();
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  fuzzer::Campaign campaign(*bundle, config);
  const fuzzer::CampaignStats stats = campaign.run();
  try {
    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);
    write_file((dir / "report.json").string(),
               report::campaign_report(*bundle, config, stats, campaign.queue()).dump(2) + "\n");
    for (const fuzzer::CrashRecord &c : stats.crashes) {
      write_file((dir / report::crash_file_name(c)).string(), c.input);
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  out << "executions: " << stats.executions << "\n"
      << "unique crashes: " << stats.crashes.size() << "\n";
  for (const fuzzer::CrashRecord &c : stats.crashes) {
    out << "crash " << c.key << " after " << c.executions << " executions\n";
  }
  return kExitOk;
}

int cmd_replay(const ReplayOptions &opts, std::ostream &out, std::ostream &err) {
  std::optional<AnalysisBundle> bundle = load(opts.program_path, opts.targets, err);
  if (!bundle) return kExitError;
  std::string input;
  fuzzer::CampaignConfig config;
  try {
    input = read_file(opts.input_path);
    if (opts.ablation) fuzzer::apply_ablation(*opts.ablation, config);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  PlanOptions po;
  po.use_distance = config.use_distance;
  po.use_value = config.use_value;
  po.use_selective = config.use_selective;
  const runtime::InstrumentationPlan plan = make_plan(*bundle, po);
  const runtime::ExecResult result =
      runtime::execute(*bundle->program, input, plan, config.step_limit, true);
  out << report::replay_report(*bundle->program, result).dump(2) << "\n";
  return result.outcome.is_crash() ? kExitCrash : kExitOk;
}

int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"hdfuzz: directed greybox fuzzer for TIR programs"};
  app.require_subcommand(1);

  AnalyzeOptions a;
  CLI::App *analyze = app.add_subcommand("analyze", "Run the static analyses and write a report");
  analyze->add_option("program", a.program_path, "TIR program")->required();
  analyze->add_option("--target", a.targets, "Target func:block[:index]")->required();
  analyze->add_option("--out", a.out_path, "Report path (default: stdout)");
  analyze->add_option("--dot-callgraph", a.callgraph_dot_path, "Write the call graph as DOT");
  analyze->add_option("--dot-cfg", a.cfg_dot_path, "Write annotated CFGs as DOT");

  FuzzOptions f;
  CLI::App *fuzz = app.add_subcommand("fuzz", "Run a directed fuzzing campaign");
  fuzz->add_option("program", f.program_path, "TIR program")->required();
  fuzz->add_option("--target", f.targets, "Target func:block[:index]");
  fuzz->add_option("--config", f.config_path, "Campaign manifest");
  fuzz->add_option("--out-dir", f.out_dir, "Directory for report.json and crash inputs")
      ->required();
  bool stop = false, virt = false, wall = false;
  uint64_t seed = 0;
  double budget = 0, t_x = 0;
  std::string f_ablation;
  fuzz->add_flag("--stop-on-first-crash", stop, "Stop at the first crash");
  fuzz->add_flag("--virtual-time", virt, "Clock = execution count");
  fuzz->add_flag("--wall-time", wall, "Clock = wall-clock seconds");
  auto *seed_opt = fuzz->add_option("--seed", seed, "RNG seed");
  auto *budget_opt = fuzz->add_option("--time-budget", budget, "Executions or seconds");
  auto *tx_opt = fuzz->add_option("--t-x", t_x, "Annealing time-to-exploitation");
  auto *fabl_opt = fuzz->add_option("--ablation", f_ablation, "nodist, novalue or noselect")
                       ->check(CLI::IsMember({"none", "nodist", "novalue", "noselect"}));

  ReplayOptions r;
  std::string r_ablation;
  CLI::App *replay = app.add_subcommand("replay", "Execute one input and print its feedback");
  replay->add_option("program", r.program_path, "TIR program")->required();
  replay->add_option("--target", r.targets, "Target func:block[:index]")->required();
  replay->add_option("--input", r.input_path, "Input file")->required();
  auto *rabl_opt = replay->add_option("--ablation", r_ablation, "nodist, novalue or noselect")
                       ->check(CLI::IsMember({"none", "nodist", "novalue", "noselect"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  if (*analyze) return cmd_analyze(a, out, err);
  if (*fuzz) {
    if (stop) f.stop_on_first_crash = true;
    if (virt) f.virtual_time = true;
    if (wall) f.virtual_time = false;
    if (*seed_opt) f.seed = seed;
    if (*budget_opt) f.time_budget = budget;
    if (*tx_opt) f.t_x = t_x;
    if (*fabl_opt) f.ablation = f_ablation;
    return cmd_fuzz(f, out, err);
  }
  if (*rabl_opt) r.ablation = r_ablation;
  return cmd_replay(r, out, err);
}

}  // namespace hdfuzz::cli
