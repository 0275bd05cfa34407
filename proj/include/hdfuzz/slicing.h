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

// Target slices and boundary blocks.
//
// The hybrid slice is the union of a control-flow slice (blocks that can
// reach a call site of a target-reaching function, or the target block
// itself) and a value-flow slice (blocks holding instructions that may
// influence the target data). Boundary blocks are the sliced blocks that
// have no successor or leave the slice; they are the only blocks that
// report distance feedback.

#ifndef HDFUZZ_SLICING_H_
#define HDFUZZ_SLICING_H_

#include <cstdint>
#include <map>
#include <set>

#include "hdfuzz/analysis.h"
#include "hdfuzz/ir.h"

namespace hdfuzz::slicing {

using ir::BlockId;

enum class Provenance : uint8_t { kControl = 1, kValue = 2, kBoth = 3 };

const char *provenance_name(Provenance p);

struct SliceSet {
  std::map<BlockId, Provenance> blocks;
  std::set<uint32_t> functions;

  bool contains(BlockId b) const { return blocks.count(b) > 0; }
  size_t size() const { return blocks.size(); }
  bool empty() const { return blocks.empty(); }
};

struct BoundarySet {
  std::set<BlockId> blocks;
  bool contains(BlockId b) const { return blocks.count(b) > 0; }
};

SliceSet control_flow_slice(const ir::Program &program,
                            const analysis::CallGraph &callgraph,
                            const ir::TargetSpec &target);

SliceSet value_flow_slice(const ir::Program &program,
                          const analysis::ValueFlowGraph &vfg,
                          const ir::TargetSpec &target);

SliceSet hybrid_slice(const SliceSet &control, const SliceSet &value);

BoundarySet boundary_blocks(const ir::Program &program, const SliceSet &slice);

}  // namespace hdfuzz::slicing

#endif  // HDFUZZ_SLICING_H_
