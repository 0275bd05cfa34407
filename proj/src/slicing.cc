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

#include "hdfuzz/slicing.h"

#include <deque>
#include <vector>

namespace hdfuzz::slicing {

const char *provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kControl: return "control";
    case Provenance::kValue: return "value";
    case Provenance::kBoth: return "both";
  }
  return "?";
}

SliceSet control_flow_slice(const ir::Program &program,
                            const analysis::CallGraph &callgraph,
                            const ir::TargetSpec &target) {
  SliceSet slice;
  const uint32_t target_fn = target.location.function;
  for (const auto &[fn, depth] : callgraph.reverse_depths(target_fn)) {
    (void)depth;
    slice.functions.insert(fn);
  }

  for (uint32_t f : slice.functions) {
    const ir::Function &fn = program.function(f);
    // Criterion blocks: call sites of sliced functions, plus the target.
    std::deque<uint32_t> work;
    std::vector<char> in(fn.blocks.size(), 0);
    auto mark = [&](uint32_t b) {
      if (!in[b]) {
        in[b] = 1;
        work.push_back(b);
      }
    };
    if (f == target_fn) mark(target.location.block);
    for (size_t e : callgraph.out_edges(f)) {
      const analysis::CallEdge &edge = callgraph.edges()[e];
      if (slice.functions.count(edge.callee)) mark(edge.site.block);
    }
    // Everything that can reach a criterion block along the CFG.
    while (!work.empty()) {
      uint32_t b = work.front();
      work.pop_front();
      for (uint32_t p : fn.blocks[b].predecessors) mark(p);
    }
    for (uint32_t b = 0; b < fn.blocks.size(); ++b) {
      if (in[b]) slice.blocks[{f, b}] = Provenance::kControl;
    }
  }
  return slice;
}

SliceSet value_flow_slice(const ir::Program &program,
                          const analysis::ValueFlowGraph &vfg,
                          const ir::TargetSpec &target) {
  (void)program;
  SliceSet slice;
  if (target.data.empty()) return slice;

  std::vector<char> seen(vfg.node_count(), 0);
  std::deque<uint32_t> work;
  for (const ir::Datum &d : target.data) {
    for (uint32_t n : analysis::datum_nodes(vfg, target, d)) {
      if (!seen[n]) {
        seen[n] = 1;
        work.push_back(n);
      }
    }
  }
  while (!work.empty()) {
    uint32_t n = work.front();
    work.pop_front();
    for (uint32_t p : vfg.predecessors(n)) {
      if (!seen[p]) {
        seen[p] = 1;
        work.push_back(p);
      }
    }
  }
  slice.blocks[target.block()] = Provenance::kValue;
  for (uint32_t n = 0; n < vfg.node_count(); ++n) {
    if (seen[n]) slice.blocks[vfg.nodes()[n].block_id()] = Provenance::kValue;
  }
  for (const auto &[b, prov] : slice.blocks) {
    (void)prov;
    slice.functions.insert(b.function);
  }
  return slice;
}

SliceSet hybrid_slice(const SliceSet &control, const SliceSet &value) {
  SliceSet out = control;
  for (const auto &[b, prov] : value.blocks) {
    auto [it, inserted] = out.blocks.emplace(b, prov);
    if (!inserted) {
      it->second = static_cast<Provenance>(static_cast<uint8_t>(it->second) |
                                           static_cast<uint8_t>(prov));
    }
  }
  out.functions.insert(value.functions.begin(), value.functions.end());
  return out;
}

BoundarySet boundary_blocks(const ir::Program &program, const SliceSet &slice) {
  BoundarySet out;
  for (const auto &[b, prov] : slice.blocks) {
    (void)prov;
    const ir::BasicBlock &bb = program.block(b);
    bool leaves = bb.successors.empty();
    for (uint32_t s : bb.successors) {
      if (!slice.contains({b.function, s})) leaves = true;
    }
    if (leaves) out.blocks.insert(b);
  }
  return out;
}

}  // namespace hdfuzz::slicing
