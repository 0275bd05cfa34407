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

// Directed fuzzing campaign loop.
//
// Each round pops the next seed from the circular queue, assigns it an
// energy, executes that many havoc children and keeps the interesting ones.
// In virtual-time mode the clock is the execution count, so t_x and the time
// budget are measured in executions and the whole campaign is a pure
// function of its configuration.

#ifndef HDFUZZ_CAMPAIGN_H_
#define HDFUZZ_CAMPAIGN_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdfuzz/energy.h"
#include "hdfuzz/mutator.h"
#include "hdfuzz/pipeline.h"
#include "hdfuzz/runtime.h"
#include "hdfuzz/seed_queue.h"

namespace hdfuzz::fuzzer {

struct CampaignConfig {
  std::vector<std::string> targets;  // echoed in reports only
  bool virtual_time = true;
  double time_budget = 100000;  // executions or seconds
  double t_x = 10000;           // executions or seconds
  uint64_t rng_seed = 0;
  uint64_t step_limit = runtime::kDefaultStepLimit;
  uint32_t bitmap_size = runtime::kDefaultBitmapSize;
  bool use_distance = true;
  bool use_value = true;
  bool use_selective = true;
  bool stop_on_first_crash = false;
  size_t max_input_length = kDefaultMaxInputLength;
  uint32_t max_stack = kDefaultMaxStack;
  std::vector<std::string> initial_seeds;  // empty: one 4-byte zero input

  // Throws std::invalid_argument when a constraint is violated.
  void validate() const;
};

struct CrashRecord {
  size_t index = 0;  // discovery order among unique crashes
  std::string key;
  std::string input;
  runtime::ExecOutcome outcome;
  uint64_t executions = 0;  // TTE in executions
  double seconds = 0.0;     // TTE in wall-clock seconds
};

struct CampaignStats {
  uint64_t executions = 0;
  uint64_t crash_executions = 0;
  std::vector<CrashRecord> crashes;         // first input per crash key
  std::map<std::string, uint64_t> tte;      // crash key -> executions
  std::map<std::string, double> tte_seconds;
  std::vector<std::pair<uint64_t, size_t>> queue_size;  // (executions, size)
  std::optional<double> min_vfs, max_vfs;
  std::optional<double> min_distance, max_distance;
  uint64_t total_exec_steps = 0;
  uint32_t max_coverage = 0;
  uint64_t rounds = 0;
  double elapsed_seconds = 0.0;

  double avg_exec_steps() const {
    return executions ? static_cast<double>(total_exec_steps) / executions : 0.0;
  }
};

// Seed distance: mean combined distance over the distinct boundary blocks hit.
std::optional<double> seed_distance(const runtime::ExecutionFeedback &feedback);

struct Interest {
  bool new_coverage = false;
  bool closer = false;
  bool stronger_value = false;
  bool crash = false;
  bool keep() const { return new_coverage || closer || stronger_value; }
};

// Pure retention check; the virgin map is not modified.
Interest is_interesting(const runtime::ExecutionFeedback &feedback,
                        const runtime::ExecOutcome &outcome, const SeedQueue &queue,
                        const std::map<uint32_t, uint8_t> &virgin);

// Energy of a seed given the campaign state at `elapsed`.
EnergyTerms seed_energy(const Seed &seed, const CampaignStats &stats, double elapsed,
                        const CampaignConfig &config);

class Campaign;

// Called at every scheduling point with the seed about to be fuzzed.
using ScheduleObserver = std::function<void(const Campaign &, const Seed &)>;
// Called after every execution.
using ExecObserver = std::function<void(const Campaign &, const std::string &input,
                                        const runtime::ExecResult &)>;

class Campaign {
 public:
  // Throws std::runtime_error if a target is unreachable and
  // std::invalid_argument for an invalid configuration.
  Campaign(const AnalysisBundle &bundle, CampaignConfig config);
  Campaign(const Campaign &) = delete;
  Campaign &operator=(const Campaign &) = delete;

  CampaignStats run();

  void set_schedule_observer(ScheduleObserver fn) { on_schedule_ = std::move(fn); }
  void set_exec_observer(ExecObserver fn) { on_exec_ = std::move(fn); }

  const SeedQueue &queue() const { return queue_; }
  const CampaignStats &stats() const { return stats_; }
  const CampaignConfig &config() const { return config_; }
  const runtime::InstrumentationPlan &plan() const { return plan_; }
  const ir::Program &program() const { return *bundle_.program; }
  double elapsed() const;
  EnergyTerms energy(const Seed &seed) const;

 private:
  bool budget_left() const;
  bool should_stop() const;
  // Executes one input and folds the result into the campaign state.
  void evaluate(const std::string &input, bool force_keep);

  const AnalysisBundle &bundle_;
  CampaignConfig config_;
  runtime::InstrumentationPlan plan_;
  runtime::Executor executor_;
  Mutator mutator_;
  Rng rng_;
  SeedQueue queue_;
  std::vector<std::string> corpus_;  // queued inputs, splice partners
  std::map<uint32_t, uint8_t> virgin_;
  CampaignStats stats_;
  uint64_t next_seed_id_ = 0;
  double start_ = 0.0;
  ScheduleObserver on_schedule_;
  ExecObserver on_exec_;
};

CampaignStats run_campaign(const AnalysisBundle &bundle, const CampaignConfig &config);

}  // namespace hdfuzz::fuzzer

#endif  // HDFUZZ_CAMPAIGN_H_
