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

#include "hdfuzz/valueflow.h"

#include <algorithm>
#include <deque>

namespace hdfuzz::valueflow {

VfdColumn vfd(const analysis::ValueFlowGraph &vfg, const std::set<uint32_t> &datum_nodes) {
  VfdColumn out;
  std::deque<uint32_t> work;
  for (uint32_t n : datum_nodes) {
    out[n] = 0;
    work.push_back(n);
  }
  // Reverse BFS: VFD(i) = 1 + min over successors.
  while (!work.empty()) {
    uint32_t n = work.front();
    work.pop_front();
    const uint32_t next = out[n] + 1;
    for (uint32_t p : vfg.predecessors(n)) {
      if (out.emplace(p, next).second) work.push_back(p);
    }
  }
  return out;
}

VfdMap compute_vfd(const analysis::ValueFlowGraph &vfg,
                   const std::vector<ir::TargetSpec> &targets) {
  VfdMap out;
  for (const ir::TargetSpec &t : targets) {
    for (const ir::Datum &d : t.data) {
      out.per_datum.push_back(vfd(vfg, analysis::datum_nodes(vfg, t, d)));
      for (const auto &[n, v] : out.per_datum.back()) {
        (void)n;
        out.max_vfd = std::max(out.max_vfd, v);
      }
    }
  }
  return out;
}

VfiMap vfi(const analysis::ValueFlowGraph &vfg, const VfdMap &vfd_map) {
  VfiMap out;
  if (vfd_map.per_datum.empty()) return out;
  std::map<uint32_t, double> sums;
  for (const VfdColumn &col : vfd_map.per_datum) {
    for (const auto &[n, d] : col) {
      sums[n] += static_cast<double>(vfd_map.max_vfd - d);
    }
  }
  const double count = static_cast<double>(vfd_map.per_datum.size());
  for (const auto &[n, s] : sums) out[vfg.nodes()[n]] = s / count;
  return out;
}

VfbMap vfb(const ir::Program &program, const VfiMap &vfi_map) {
  (void)program;
  VfbMap out;
  for (const auto &[ins, score] : vfi_map) {
    auto [it, fresh] = out.emplace(ins.block_id(), score);
    if (!fresh) it->second = std::min(it->second, score);
  }
  return out;
}

}  // namespace hdfuzz::valueflow
