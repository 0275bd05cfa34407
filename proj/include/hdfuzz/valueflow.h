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

// Value-flow influence scores.
//
//   VFD(i, v)  hops along the value-flow graph from instruction i to a node
//              holding target datum v (0 at those nodes, absent if none).
//   VFI(i, T)  mean over all target data of (max VFD - VFD(i, v)); data that
//              i cannot reach contribute 0.
//   VFB(bb, T) minimum VFI over the scored instructions of a block.
//
// max VFD is the largest VFD over every instruction and every datum.

#ifndef HDFUZZ_VALUEFLOW_H_
#define HDFUZZ_VALUEFLOW_H_

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "hdfuzz/analysis.h"
#include "hdfuzz/ir.h"

namespace hdfuzz::valueflow {

using ir::BlockId;
using ir::InstrId;

// node index -> VFD for one datum.
using VfdColumn = std::map<uint32_t, uint32_t>;

VfdColumn vfd(const analysis::ValueFlowGraph &vfg, const std::set<uint32_t> &datum_nodes);

struct VfdMap {
  std::vector<VfdColumn> per_datum;  // one column per datum of V(T)
  uint32_t max_vfd = 0;
};

// Columns for every datum of every target. A datum without nodes yields an
// empty column (it still counts in |V(T)|).
VfdMap compute_vfd(const analysis::ValueFlowGraph &vfg,
                   const std::vector<ir::TargetSpec> &targets);

using VfiMap = std::map<InstrId, double>;
using VfbMap = std::map<BlockId, double>;

VfiMap vfi(const analysis::ValueFlowGraph &vfg, const VfdMap &vfd_map);

VfbMap vfb(const ir::Program &program, const VfiMap &vfi_map);

}  // namespace hdfuzz::valueflow

#endif  // HDFUZZ_VALUEFLOW_H_
