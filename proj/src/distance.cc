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

#include "hdfuzz/distance.h"

#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <random>

namespace hdfuzz::distance {

namespace {

constexpr uint32_t kInf = std::numeric_limits<uint32_t>::max();

std::vector<uint32_t> bfs_depths(const ir::Function &fn) {
  std::vector<uint32_t> depth(fn.blocks.size(), kInf);
  std::deque<uint32_t> work{fn.entry_block};
  depth[fn.entry_block] = 0;
  while (!work.empty()) {
    uint32_t b = work.front();
    work.pop_front();
    for (uint32_t s : fn.blocks[b].successors) {
      if (depth[s] == kInf) {
        depth[s] = depth[b] + 1;
        work.push_back(s);
      }
    }
  }
  return depth;
}

// Function worklist; FIFO unless a shuffle seed is given.
class FunctionQueue {
 public:
  explicit FunctionQueue(std::optional<uint64_t> seed) {
    if (seed) rng_.emplace(*seed);
  }
  void push(uint32_t f) { items_.push_back(f); }
  bool empty() const { return items_.empty(); }
  uint32_t pop() {
    size_t i = 0;
    if (rng_) i = (*rng_)() % items_.size();
    uint32_t f = items_[i];
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(i));
    return f;
  }

 private:
  std::vector<uint32_t> items_;
  std::optional<std::mt19937_64> rng_;
};

}  // namespace

DepthMap call_site_depths(const ir::Function &function,
                          std::optional<uint32_t> pseudo_site) {
  DepthMap out;
  std::vector<uint32_t> depth = bfs_depths(function);
  for (uint32_t b = 0; b < function.blocks.size(); ++b) {
    bool is_site = pseudo_site == b;
    for (const ir::Instruction &ins : function.blocks[b].instructions) {
      is_site |= ins.is_call();
    }
    if (!is_site) continue;
    if (depth[b] == kInf) {
      out.diagnostics.push_back("call site " + function.name + ":" +
                                function.blocks[b].label +
                                " is unreachable from the entry block");
      continue;
    }
    out.depth[b] = depth[b];
  }
  return out;
}

TargetDistances backward_step_distances(const ir::Program &program,
                                        const analysis::CallGraph &callgraph,
                                        const ir::TargetSpec &target,
                                        std::optional<uint64_t> shuffle_seed) {
  TargetDistances out;
  const uint32_t target_fn = target.location.function;
  const uint32_t target_bb = target.location.block;

  std::vector<DepthMap> depths(program.functions().size());
  std::vector<char> have_depths(program.functions().size(), 0);
  auto depth_of = [&](BlockId b) -> std::optional<uint32_t> {
    if (!have_depths[b.function]) {
      depths[b.function] = call_site_depths(
          program.function(b.function),
          b.function == target_fn ? std::optional<uint32_t>(target_bb) : std::nullopt);
      have_depths[b.function] = 1;
    }
    auto it = depths[b.function].depth.find(b.block);
    if (it == depths[b.function].depth.end()) return std::nullopt;
    return it->second;
  };

  // The target block acts as a distance-0 call site inside its function, so
  // the target function's entry sits depth(target) hops away.
  auto target_depth = depth_of(target.block());
  if (!target_depth) {
    out.diagnostics.push_back("target block is unreachable from its function entry");
    return out;
  }
  out.entries[target_fn] = *target_depth;

  FunctionQueue queue(shuffle_seed);
  queue.push(target_fn);
  while (!queue.empty()) {
    const uint32_t callee = queue.pop();
    const uint32_t callee_dist = out.entries.at(callee);
    for (size_t e : callgraph.in_edges(callee)) {
      const analysis::CallEdge &edge = callgraph.edges()[e];
      const BlockId site = edge.site.block_id();
      auto site_depth = depth_of(site);
      if (!site_depth) continue;
      auto [sit, fresh] = out.call_sites.emplace(site, callee_dist + 1);
      if (!fresh && sit->second > callee_dist + 1) sit->second = callee_dist + 1;
      const uint32_t via = sit->second + *site_depth;
      auto [fit, new_fn] = out.entries.emplace(edge.caller, via);
      if (new_fn || fit->second > via) {
        fit->second = via;
        queue.push(edge.caller);
      }
    }
  }

  for (const DepthMap &d : depths) {
    out.diagnostics.insert(out.diagnostics.end(), d.diagnostics.begin(),
                           d.diagnostics.end());
  }

  // Reverse multi-source BFS inside each reachable function, seeded with the
  // finalized call-site distances (and the target block at 0).
  using Item = std::pair<uint32_t, uint32_t>;  // (distance, block)
  for (const auto &[f, entry_dist] : out.entries) {
    (void)entry_dist;
    const ir::Function &fn = program.function(f);
    std::vector<uint32_t> dist(fn.blocks.size(), kInf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    auto seed = [&](uint32_t b, uint32_t d) {
      if (d < dist[b]) {
        dist[b] = d;
        heap.push({d, b});
      }
    };
    if (f == target_fn) seed(target_bb, 0);
    for (auto it = out.call_sites.lower_bound({f, 0});
         it != out.call_sites.end() && it->first.function == f; ++it) {
      seed(it->first.block, it->second);
    }
    while (!heap.empty()) {
      auto [d, b] = heap.top();
      heap.pop();
      if (d != dist[b]) continue;
      for (uint32_t p : fn.blocks[b].predecessors) seed(p, d + 1);
    }
    for (uint32_t b = 0; b < fn.blocks.size(); ++b) {
      if (dist[b] != kInf) out.blocks[{f, b}] = dist[b];
    }
  }
  return out;
}

CombinedDistances combine_targets(const std::vector<BlockDistances> &per_target) {
  std::map<BlockId, std::vector<uint32_t>> gathered;
  for (const BlockDistances &m : per_target) {
    for (const auto &[b, d] : m) gathered[b].push_back(d);
  }
  CombinedDistances out;
  for (const auto &[b, ds] : gathered) {
    double inverse_sum = 0.0;
    bool zero = false;
    for (uint32_t d : ds) {
      if (d == 0) {
        zero = true;
        break;
      }
      inverse_sum += 1.0 / static_cast<double>(d);
    }
    out[b] = zero ? 0.0 : 1.0 / inverse_sum;
  }
  return out;
}

BlockDistances function_level_distances(const ir::Program &program,
                                        const analysis::CallGraph &callgraph,
                                        const ir::TargetSpec &target) {
  BlockDistances out;
  for (const auto &[f, hops] : callgraph.reverse_depths(target.location.function)) {
    for (uint32_t b = 0; b < program.function(f).blocks.size(); ++b) {
      out[{f, b}] = hops * 10;
    }
  }
  return out;
}

}  // namespace hdfuzz::distance
