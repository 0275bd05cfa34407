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

// Runs every static analysis for a program and a set of targets and builds
// instrumentation plans from the results.

#ifndef HDFUZZ_PIPELINE_H_
#define HDFUZZ_PIPELINE_H_

#include <memory>
#include <string>
#include <vector>

#include "hdfuzz/analysis.h"
#include "hdfuzz/distance.h"
#include "hdfuzz/ir.h"
#include "hdfuzz/runtime.h"
#include "hdfuzz/slicing.h"
#include "hdfuzz/valueflow.h"

namespace hdfuzz {

struct TargetProducts {
  ir::TargetSpec spec;
  slicing::SliceSet control;
  slicing::SliceSet value;
  slicing::SliceSet hybrid;
  distance::TargetDistances distances;
  distance::BlockDistances function_level;
  bool reachable = false;
};

struct AnalysisBundle {
  std::shared_ptr<const ir::Program> program;
  std::vector<ir::TargetSpec> targets;
  analysis::PointsToMap points_to;
  analysis::CallGraph callgraph;
  analysis::ValueFlowGraph vfg;
  std::vector<TargetProducts> per_target;

  slicing::SliceSet slice;        // union of the per-target hybrid slices
  slicing::BoundarySet boundary;  // boundary of the union slice
  distance::CombinedDistances distances;
  distance::CombinedDistances function_level_distances;
  valueflow::VfdMap vfd;
  valueflow::VfiMap vfi;
  valueflow::VfbMap vfb;

  std::vector<std::string> diagnostics;

  // Every target's function is reachable from the program entry.
  bool reachable() const;
  std::vector<std::string> unreachable_targets() const;
};

// `shuffle_seed` is forwarded to the distance worklist.
AnalysisBundle analyze(std::shared_ptr<const ir::Program> program,
                       std::vector<ir::TargetSpec> targets,
                       std::optional<uint64_t> shuffle_seed = std::nullopt);

// Resolves every target string against the program first.
AnalysisBundle analyze(std::shared_ptr<const ir::Program> program,
                       const std::vector<std::string> &target_specs);

struct PlanOptions {
  bool use_distance = true;   // false: function-level distances
  bool use_value = true;      // false: empty vfb channel
  bool use_selective = true;  // false: full instrumentation
  uint32_t bitmap_size = runtime::kDefaultBitmapSize;
};

runtime::InstrumentationPlan make_plan(const AnalysisBundle &bundle, const PlanOptions &options);

}  // namespace hdfuzz

#endif  // HDFUZZ_PIPELINE_H_
