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

// TIR interpreter with selective instrumentation.
//
// Three feedback channels are recorded on block entry, only at blocks that
// belong to the plan:
//   coverage  hit counts of coverage blocks, hashed into an AFL-style bitmap
//   distance  the distinct boundary blocks hit, with their distances
//   value     VFB of every executed vfb block, summed along the trace
// Instrumentation never changes the outcome of an execution.

#ifndef HDFUZZ_RUNTIME_H_
#define HDFUZZ_RUNTIME_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hdfuzz/ir.h"

namespace hdfuzz::runtime {

using ir::BlockId;
using ir::InstrId;

inline constexpr uint32_t kDefaultBitmapSize = 65536;
inline constexpr uint64_t kDefaultStepLimit = 100000;

struct InstrumentationPlan {
  std::set<BlockId> coverage_blocks;
  std::map<BlockId, double> boundary_blocks;  // block -> combined distance
  std::map<BlockId, double> vfb_blocks;       // block -> VFB
  uint32_t bitmap_size = kDefaultBitmapSize;
  std::vector<std::string> diagnostics;
};

// Selective plan. `boundary` blocks without a distance are dropped with a
// diagnostic. Throws std::invalid_argument unless bitmap_size is a power of
// two.
InstrumentationPlan build_plan(const std::set<BlockId> &slice_blocks,
                               const std::set<BlockId> &boundary,
                               const std::map<BlockId, double> &vfb,
                               const std::map<BlockId, double> &distances,
                               uint32_t bitmap_size = kDefaultBitmapSize);

// Full instrumentation: every block is a coverage block and every block with
// a distance is a boundary block.
InstrumentationPlan full_plan(const ir::Program &program,
                              const std::map<BlockId, double> &vfb,
                              const std::map<BlockId, double> &distances,
                              uint32_t bitmap_size = kDefaultBitmapSize);

// Stable bitmap slot of a block.
uint32_t bitmap_index(BlockId b, uint32_t bitmap_size);

// AFL hit-count classes: 1, 2, 3, 4-7, 8-15, 16-31, 32-127, 128+ map to one
// bit each; 0 maps to 0.
uint8_t bucketize(uint32_t hits);

struct ExecutionFeedback {
  std::map<BlockId, uint32_t> block_hits;  // coverage blocks only
  std::map<uint32_t, uint8_t> bitmap;      // slot -> bucket bit (non-zero only)
  std::set<BlockId> boundary_hits;
  double distance_sum = 0.0;
  uint32_t distance_count = 0;
  double vfs_sum = 0.0;
  uint64_t exec_steps = 0;
  std::vector<BlockId> trace;  // filled only when requested

  bool operator==(const ExecutionFeedback &) const = default;
};

enum class CrashKind { kTrap, kArrayBounds, kDivByZero, kBadPointer };

const char *crash_kind_name(CrashKind k);

struct ExecOutcome {
  enum class Kind { kOk, kCrash, kStepLimit, kInputExhausted };
  Kind kind = Kind::kOk;
  CrashKind crash = CrashKind::kTrap;  // kCrash only
  std::optional<InstrId> location;     // always set for kCrash

  bool is_crash() const { return kind == Kind::kCrash; }
  bool operator==(const ExecOutcome &) const = default;
};

const char *outcome_name(ExecOutcome::Kind k);

// "func:block:index:kind", used to deduplicate crashes.
std::string crash_key(const ir::Program &program, const ExecOutcome &outcome);

struct ExecResult {
  ExecOutcome outcome;
  ExecutionFeedback feedback;
};

// Precomputes per-block plan lookups so repeated executions are cheap. The
// program and plan must outlive the executor.
class Executor {
 public:
  Executor(const ir::Program &program, const InstrumentationPlan &plan);

  ExecResult run(std::string_view input, uint64_t step_limit = kDefaultStepLimit,
                 bool record_trace = false) const;

  const InstrumentationPlan &plan() const { return plan_; }

 private:
  struct BlockInfo {
    bool coverage = false;
    bool boundary = false;
    double distance = 0.0;
    bool scored = false;
    double vfb = 0.0;
  };
  const ir::Program &program_;
  const InstrumentationPlan &plan_;
  std::vector<BlockInfo> info_;  // by flat block index
};

ExecResult execute(const ir::Program &program, std::string_view input,
                   const InstrumentationPlan &plan,
                   uint64_t step_limit = kDefaultStepLimit, bool record_trace = false);

}  // namespace hdfuzz::runtime

#endif  // HDFUZZ_RUNTIME_H_
