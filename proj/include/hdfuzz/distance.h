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

// Block-level control-flow distance to a target on a virtual
// inter-procedural CFG.
//
// The ICFG is never materialized. Distances are stepped backwards from the
// target over the call graph: a call-site block is one hop from its callee's
// entry, a function entry is `depth(call site) + distance(call site)`, and a
// final reverse BFS inside each reachable function fills in the remaining
// blocks. Calls have no return edges, so the result equals the shortest
// path over intra-CFG edges plus call-site -> callee-entry edges.

#ifndef HDFUZZ_DISTANCE_H_
#define HDFUZZ_DISTANCE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hdfuzz/analysis.h"
#include "hdfuzz/ir.h"

namespace hdfuzz::distance {

using ir::BlockId;

// Shortest intra-CFG hop count from the function entry, keyed by block index.
struct DepthMap {
  std::map<uint32_t, uint32_t> depth;
  std::vector<std::string> diagnostics;
};

// Depths of the blocks holding call instructions. `pseudo_site` (the target
// block, inside the target function) is recorded as if it were a call site.
DepthMap call_site_depths(const ir::Function &function,
                          std::optional<uint32_t> pseudo_site = std::nullopt);

using BlockDistances = std::map<BlockId, uint32_t>;
using CombinedDistances = std::map<BlockId, double>;

struct TargetDistances {
  BlockDistances blocks;                  // absent = cannot reach the target
  std::map<uint32_t, uint32_t> entries;   // function -> entry-block distance
  std::map<BlockId, uint32_t> call_sites; // call-site block -> callee-derived
  std::vector<std::string> diagnostics;
};

// `shuffle_seed` permutes the function worklist order; the fixed point does
// not depend on it.
TargetDistances backward_step_distances(const ir::Program &program,
                                        const analysis::CallGraph &callgraph,
                                        const ir::TargetSpec &target,
                                        std::optional<uint64_t> shuffle_seed = std::nullopt);

// Harmonic combination over targets: [sum_t d_t^-1]^-1. Targets without a
// distance for a block contribute nothing; any zero distance yields 0.
CombinedDistances combine_targets(const std::vector<BlockDistances> &per_target);

// Coarse function-level distances: every block of a function that reaches the
// target function gets 10 x (call-graph hops to the target function).
BlockDistances function_level_distances(const ir::Program &program,
                                        const analysis::CallGraph &callgraph,
                                        const ir::TargetSpec &target);

}  // namespace hdfuzz::distance

#endif  // HDFUZZ_DISTANCE_H_
