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

// Whole-program static analyses over TIR: inclusion-based (Andersen-style)
// points-to, call graph construction with indirect-call resolution, and the
// value-flow graph. All analyses are flow- and context-insensitive; arrays
// are a single abstract object.

#ifndef HDFUZZ_ANALYSIS_H_
#define HDFUZZ_ANALYSIS_H_

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hdfuzz/ir.h"

namespace hdfuzz::analysis {

using ir::BlockId;
using ir::InstrId;
using ir::Program;

// A global cell (scalar or whole array) or a function.
struct AbstractObject {
  enum class Kind { kCell, kFunction };
  Kind kind = Kind::kCell;
  uint32_t index = 0;  // global index or function index
  auto operator<=>(const AbstractObject &) const = default;
};

// Something that can hold a pointer: a variable of a function, or the
// contents of a global cell.
struct PointerKey {
  enum class Kind { kVar, kCell };
  Kind kind = Kind::kVar;
  uint32_t function = 0;  // kVar only
  uint32_t index = 0;     // variable slot or global index
  auto operator<=>(const PointerKey &) const = default;

  static PointerKey Var(uint32_t fn, uint32_t slot) {
    return {Kind::kVar, fn, slot};
  }
  static PointerKey Cell(uint32_t global) { return {Kind::kCell, 0, global}; }
};

using ObjectSet = std::set<AbstractObject>;

class PointsToMap {
 public:
  // Empty set for keys with no pointees.
  const ObjectSet &at(const PointerKey &key) const;
  // Only keys with a non-empty set are present.
  const std::map<PointerKey, ObjectSet> &entries() const { return map_; }
  bool empty() const { return map_.empty(); }

  // Objects reachable through a load/store/aload/astore memory operand.
  ObjectSet memory_objects(uint32_t function, const ir::Operand &op) const;

  void add(const PointerKey &key, const ObjectSet &objs);

 private:
  std::map<PointerKey, ObjectSet> map_;
};

PointsToMap points_to(const Program &program);

struct CallEdge {
  uint32_t caller = 0;
  InstrId site;
  uint32_t callee = 0;
  auto operator<=>(const CallEdge &) const = default;
};

class CallGraph {
 public:
  explicit CallGraph(uint32_t function_count = 0)
      : out_(function_count), in_(function_count) {}

  void add_edge(const CallEdge &e);
  void add_unresolved(InstrId site, std::string diagnostic);
  void finalize();  // sorts and deduplicates; rebuilds adjacency

  uint32_t function_count() const { return static_cast<uint32_t>(out_.size()); }
  const std::vector<CallEdge> &edges() const { return edges_; }
  // Indices into edges(), ordered.
  const std::vector<size_t> &out_edges(uint32_t fn) const { return out_[fn]; }
  const std::vector<size_t> &in_edges(uint32_t fn) const { return in_[fn]; }
  std::vector<uint32_t> callees_at(InstrId site) const;
  const std::vector<InstrId> &unresolved_sites() const { return unresolved_; }
  const std::vector<std::string> &diagnostics() const { return diagnostics_; }

  // Functions that can reach `target` along call edges (target included),
  // with their hop count.
  std::map<uint32_t, uint32_t> reverse_depths(uint32_t target) const;

 private:
  std::vector<CallEdge> edges_;
  std::vector<std::vector<size_t>> out_;
  std::vector<std::vector<size_t>> in_;
  std::vector<InstrId> unresolved_;
  std::vector<std::string> diagnostics_;
};

CallGraph build_call_graph(const Program &program, const PointsToMap &pts);

// Directed def -> use graph over instructions. Loops produce cycles.
class ValueFlowGraph {
 public:
  ValueFlowGraph() = default;
  // Nodes may be given in any order; they are sorted. Edges are pairs of
  // node ids (instruction ids) and must name listed nodes.
  static ValueFlowGraph from_edges(std::vector<InstrId> nodes,
                                   const std::vector<std::pair<InstrId, InstrId>> &edges);

  size_t node_count() const { return nodes_.size(); }
  const std::vector<InstrId> &nodes() const { return nodes_; }
  std::optional<uint32_t> node_index(InstrId id) const;
  const std::vector<uint32_t> &successors(uint32_t n) const { return succ_[n]; }
  const std::vector<uint32_t> &predecessors(uint32_t n) const { return pred_[n]; }
  // All edges as (from, to) node indices, sorted.
  std::vector<std::pair<uint32_t, uint32_t>> edges() const;
  size_t edge_count() const;

  // Defining instructions whose values may be held by variable `slot` of
  // `function`: its local definitions plus, for parameters, the sources of
  // the arguments at every call site. Empty for graphs built by from_edges().
  const std::set<InstrId> &sources_of(uint32_t function, uint32_t slot) const;
  // Objects a store node may write. Empty for non-stores.
  const ObjectSet &objects_written(uint32_t node) const;

 private:
  friend ValueFlowGraph build_vfg(const Program &, const PointsToMap &,
                                  const CallGraph &);
  std::vector<InstrId> nodes_;
  std::map<InstrId, uint32_t> index_;
  std::vector<std::vector<uint32_t>> succ_;
  std::vector<std::vector<uint32_t>> pred_;
  std::map<std::pair<uint32_t, uint32_t>, std::set<InstrId>> sources_;
  std::map<uint32_t, ObjectSet> writes_;
};

// True for instructions that are value-flow nodes: every instruction that
// defines a variable or stores to memory.
bool is_vfg_node(const ir::Instruction &ins);

ValueFlowGraph build_vfg(const Program &program, const PointsToMap &pts);
ValueFlowGraph build_vfg(const Program &program, const PointsToMap &pts,
                         const CallGraph &callgraph);

// VFG nodes holding the value of one target datum: the definitions that
// flow into a variable operand, or the stores that may write a global object.
std::set<uint32_t> datum_nodes(const ValueFlowGraph &vfg, const ir::TargetSpec &target,
                               const ir::Datum &datum);

}  // namespace hdfuzz::analysis

#endif  // HDFUZZ_ANALYSIS_H_
