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

#include "hdfuzz/pipeline.h"

namespace hdfuzz {

bool AnalysisBundle::reachable() const {
  if (per_target.empty()) return false;
  for (const TargetProducts &t : per_target) {
    if (!t.reachable) return false;
  }
  return true;
}

std::vector<std::string> AnalysisBundle::unreachable_targets() const {
  std::vector<std::string> out;
  for (const TargetProducts &t : per_target) {
    if (!t.reachable) out.push_back(program->instr_name(t.spec.location));
  }
  return out;
}

AnalysisBundle analyze(std::shared_ptr<const ir::Program> program,
                       std::vector<ir::TargetSpec> targets,
                       std::optional<uint64_t> shuffle_seed) {
  AnalysisBundle b;
  b.program = program;
  b.targets = std::move(targets);
  const ir::Program &p = *program;
  b.points_to = analysis::points_to(p);
  b.callgraph = analysis::build_call_graph(p, b.points_to);
  b.vfg = analysis::build_vfg(p, b.points_to, b.callgraph);
  b.diagnostics = b.callgraph.diagnostics();

  std::vector<distance::BlockDistances> per_target_distances;
  std::vector<distance::BlockDistances> per_target_coarse;
  for (const ir::TargetSpec &spec : b.targets) {
    TargetProducts t;
    t.spec = spec;
    t.control = slicing::control_flow_slice(p, b.callgraph, spec);
    t.value = slicing::value_flow_slice(p, b.vfg, spec);
    t.hybrid = slicing::hybrid_slice(t.control, t.value);
    t.reachable = t.control.functions.count(p.entry_function()) > 0;
    t.distances = distance::backward_step_distances(p, b.callgraph, spec, shuffle_seed);
    t.function_level = distance::function_level_distances(p, b.callgraph, spec);
    for (const std::string &d : t.distances.diagnostics) b.diagnostics.push_back(d);
    if (!t.reachable) {
      b.diagnostics.push_back("unreachable target " + p.instr_name(spec.location));
    }
    b.slice = slicing::hybrid_slice(b.slice, t.hybrid);
    per_target_distances.push_back(t.distances.blocks);
    per_target_coarse.push_back(t.function_level);
    b.per_target.push_back(std::move(t));
  }
  b.boundary = slicing::boundary_blocks(p, b.slice);
  b.distances = distance::combine_targets(per_target_distances);
  b.function_level_distances = distance::combine_targets(per_target_coarse);
  b.vfd = valueflow::compute_vfd(b.vfg, b.targets);
  b.vfi = valueflow::vfi(b.vfg, b.vfd);
  b.vfb = valueflow::vfb(p, b.vfi);
  return b;
}

AnalysisBundle analyze(std::shared_ptr<const ir::Program> program,
                       const std::vector<std::string> &target_specs) {
  std::vector<ir::TargetSpec> targets;
  for (const std::string &s : target_specs) targets.push_back(ir::resolve_target(*program, s));
  return analyze(std::move(program), std::move(targets));
}

runtime::InstrumentationPlan make_plan(const AnalysisBundle &bundle,
                                       const PlanOptions &options) {
  const distance::CombinedDistances &dist =
      options.use_distance ? bundle.distances : bundle.function_level_distances;
  const valueflow::VfbMap empty;
  const valueflow::VfbMap &vfb = options.use_value ? bundle.vfb : empty;
  if (!options.use_selective) {
    return runtime::full_plan(*bundle.program, vfb, dist, options.bitmap_size);
  }
  std::set<ir::BlockId> slice;
  for (const auto &[blk, prov] : bundle.slice.blocks) {
    (void)prov;
    slice.insert(blk);
  }
  return runtime::build_plan(slice, bundle.boundary.blocks, vfb, dist, options.bitmap_size);
}

}  // namespace hdfuzz
