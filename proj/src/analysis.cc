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

#include "hdfuzz/analysis.h"

#include <algorithm>
#include <deque>

namespace hdfuzz::analysis {

using ir::Instruction;
using ir::Opcode;
using ir::Operand;
using ir::Terminator;

const ObjectSet &PointsToMap::at(const PointerKey &key) const {
  static const ObjectSet kEmpty;
  auto it = map_.find(key);
  return it == map_.end() ? kEmpty : it->second;
}

ObjectSet PointsToMap::memory_objects(uint32_t function, const Operand &op) const {
  if (op.kind == Operand::Kind::kGlobal) return {{AbstractObject::Kind::kCell, op.index}};
  ObjectSet out;
  if (op.kind == Operand::Kind::kVar) {
    for (const AbstractObject &o : at(PointerKey::Var(function, op.index))) {
      if (o.kind == AbstractObject::Kind::kCell) out.insert(o);
    }
  }
  return out;
}

void PointsToMap::add(const PointerKey &key, const ObjectSet &objs) {
  if (objs.empty()) return;
  map_[key].insert(objs.begin(), objs.end());
}

namespace {

// Worklist solver over a constraint graph whose nodes are pointer keys.
// Copy edges are added lazily as load/store/indirect-call constraints
// discover new pointees.
class AndersenSolver {
 public:
  explicit AndersenSolver(const Program &program) : program_(program) {
    uint32_t n = 0;
    for (const ir::Function &fn : program.functions()) {
      var_base_.push_back(n);
      n += static_cast<uint32_t>(fn.slots.size());
    }
    cell_base_ = n;
    n += static_cast<uint32_t>(program.globals().size());
    pts_.resize(n);
    succ_.resize(n);
    loads_.resize(n);
    stores_.resize(n);
    icalls_.resize(n);
    queued_.assign(n, 0);
  }

  PointsToMap Solve() {
    Collect();
    while (!work_.empty()) {
      uint32_t node = work_.front();
      work_.pop_front();
      queued_[node] = 0;
      Process(node);
    }
    PointsToMap out;
    for (uint32_t f = 0; f < program_.functions().size(); ++f) {
      for (uint32_t s = 0; s < program_.function(f).slots.size(); ++s) {
        out.add(PointerKey::Var(f, s), pts_[var_base_[f] + s]);
      }
    }
    for (uint32_t g = 0; g < program_.globals().size(); ++g) {
      out.add(PointerKey::Cell(g), pts_[cell_base_ + g]);
    }
    return out;
  }

 private:
  struct IndirectSite {
    uint32_t function;
    const Instruction *ins;
  };

  uint32_t Var(uint32_t fn, uint32_t slot) const { return var_base_[fn] + slot; }
  uint32_t Cell(uint32_t global) const { return cell_base_ + global; }

  void Enqueue(uint32_t node) {
    if (!queued_[node]) {
      queued_[node] = 1;
      work_.push_back(node);
    }
  }

  void AddObject(uint32_t node, AbstractObject o) {
    if (pts_[node].insert(o).second) Enqueue(node);
  }

  void AddEdge(uint32_t from, uint32_t to) {
    if (from == to || !succ_[from].insert(to).second) return;
    size_t before = pts_[to].size();
    pts_[to].insert(pts_[from].begin(), pts_[from].end());
    if (pts_[to].size() != before) Enqueue(to);
  }

  // Argument -> parameter and return -> result edges for one resolved call.
  void BindCall(uint32_t caller, const Instruction &ins, uint32_t callee) {
    const ir::Function &g = program_.function(callee);
    size_t nargs = std::min(ins.operands.size() - 1, g.params.size());
    for (size_t i = 0; i < nargs; ++i) {
      const Operand &arg = ins.operands[i + 1];
      if (arg.is_var()) AddEdge(Var(caller, arg.index), Var(callee, static_cast<uint32_t>(i)));
    }
    if (!ins.result) return;
    for (const ir::BasicBlock &bb : g.blocks) {
      const Terminator &t = bb.terminator;
      if (t.kind == Terminator::Kind::kRet && t.value) {
        AddEdge(Var(callee, t.value->index), Var(caller, ins.result_slot));
      }
    }
  }

  void Collect() {
    for (uint32_t f = 0; f < program_.functions().size(); ++f) {
      for (const ir::BasicBlock &bb : program_.function(f).blocks) {
        for (const Instruction &ins : bb.instructions) CollectInstruction(f, ins);
      }
    }
  }

  void CollectInstruction(uint32_t f, const Instruction &ins) {
    const auto &ops = ins.operands;
    switch (ins.opcode) {
      case Opcode::kAddr:
        AddObject(Var(f, ins.result_slot), {AbstractObject::Kind::kCell, ops[0].index});
        break;
      case Opcode::kFuncAddr:
        AddObject(Var(f, ins.result_slot),
                  {AbstractObject::Kind::kFunction, ops[0].index});
        break;
      case Opcode::kLoad:
      case Opcode::kALoad:
        if (ops[0].kind == Operand::Kind::kGlobal) {
          AddEdge(Cell(ops[0].index), Var(f, ins.result_slot));
        } else {
          loads_[Var(f, ops[0].index)].push_back(Var(f, ins.result_slot));
          Enqueue(Var(f, ops[0].index));
        }
        break;
      case Opcode::kStore:
      case Opcode::kAStore: {
        const Operand &value = ops.back();
        if (!value.is_var()) break;
        if (ops[0].kind == Operand::Kind::kGlobal) {
          AddEdge(Var(f, value.index), Cell(ops[0].index));
        } else {
          stores_[Var(f, ops[0].index)].push_back(Var(f, value.index));
          Enqueue(Var(f, ops[0].index));
        }
        break;
      }
      case Opcode::kCall:
        BindCall(f, ins, ops[0].index);
        break;
      case Opcode::kCallIndirect:
        icalls_[Var(f, ops[0].index)].push_back({f, &ins});
        Enqueue(Var(f, ops[0].index));
        break;
      case Opcode::kConst:
      case Opcode::kInput:
      case Opcode::kBinop:
      case Opcode::kNop:
        break;
    }
  }

  void Process(uint32_t node) {
    // Copy the set: edges added below may grow pts_[node] through cycles.
    const ObjectSet objs = pts_[node];
    for (const AbstractObject &o : objs) {
      if (o.kind == AbstractObject::Kind::kCell) {
        for (uint32_t dst : loads_[node]) AddEdge(Cell(o.index), dst);
        for (uint32_t src : stores_[node]) AddEdge(src, Cell(o.index));
      } else {
        for (const IndirectSite &site : icalls_[node]) {
          if (bound_.insert({site.ins, o.index}).second) {
            BindCall(site.function, *site.ins, o.index);
          }
        }
      }
    }
    for (uint32_t s : std::vector<uint32_t>(succ_[node].begin(), succ_[node].end())) {
      size_t before = pts_[s].size();
      pts_[s].insert(pts_[node].begin(), pts_[node].end());
      if (pts_[s].size() != before) Enqueue(s);
    }
  }

  const Program &program_;
  std::vector<uint32_t> var_base_;
  uint32_t cell_base_ = 0;
  std::vector<ObjectSet> pts_;
  std::vector<std::set<uint32_t>> succ_;
  std::vector<std::vector<uint32_t>> loads_;   // pointer -> load results
  std::vector<std::vector<uint32_t>> stores_;  // pointer -> stored values
  std::vector<std::vector<IndirectSite>> icalls_;
  std::set<std::pair<const Instruction *, uint32_t>> bound_;
  std::deque<uint32_t> work_;
  std::vector<char> queued_;
};

}  // namespace

PointsToMap points_to(const Program &program) {
  return AndersenSolver(program).Solve();
}

void CallGraph::add_edge(const CallEdge &e) { edges_.push_back(e); }

void CallGraph::add_unresolved(InstrId site, std::string diagnostic) {
  unresolved_.push_back(site);
  diagnostics_.push_back(std::move(diagnostic));
}

void CallGraph::finalize() {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto &v : out_) v.clear();
  for (auto &v : in_) v.clear();
  for (size_t i = 0; i < edges_.size(); ++i) {
    out_[edges_[i].caller].push_back(i);
    in_[edges_[i].callee].push_back(i);
  }
}

std::vector<uint32_t> CallGraph::callees_at(InstrId site) const {
  std::vector<uint32_t> out;
  for (size_t i : out_[site.function]) {
    if (edges_[i].site == site) out.push_back(edges_[i].callee);
  }
  return out;
}

std::map<uint32_t, uint32_t> CallGraph::reverse_depths(uint32_t target) const {
  std::map<uint32_t, uint32_t> depth{{target, 0}};
  std::deque<uint32_t> work{target};
  while (!work.empty()) {
    uint32_t f = work.front();
    work.pop_front();
    for (size_t i : in_[f]) {
      uint32_t caller = edges_[i].caller;
      if (depth.emplace(caller, depth[f] + 1).second) work.push_back(caller);
    }
  }
  return depth;
}

CallGraph build_call_graph(const Program &program, const PointsToMap &pts) {
  CallGraph cg(static_cast<uint32_t>(program.functions().size()));
  for (uint32_t f = 0; f < program.functions().size(); ++f) {
    const ir::Function &fn = program.function(f);
    for (uint32_t b = 0; b < fn.blocks.size(); ++b) {
      const auto &instrs = fn.blocks[b].instructions;
      for (uint32_t i = 0; i < instrs.size(); ++i) {
        const Instruction &ins = instrs[i];
        InstrId site{f, b, i};
        if (ins.opcode == Opcode::kCall) {
          cg.add_edge({f, site, ins.operands[0].index});
        } else if (ins.opcode == Opcode::kCallIndirect) {
          bool any = false;
          for (const AbstractObject &o :
               pts.at(PointerKey::Var(f, ins.operands[0].index))) {
            if (o.kind != AbstractObject::Kind::kFunction) continue;
            cg.add_edge({f, site, o.index});
            any = true;
          }
          if (!any) {
            cg.add_unresolved(site, "unresolved indirect call at " +
                                        program.instr_name(site) + " (empty points-to set for '" +
                                        ins.operands[0].name + "')");
          }
        }
      }
    }
  }
  cg.finalize();
  return cg;
}

bool is_vfg_node(const Instruction &ins) {
  return ins.result.has_value() || ins.is_store();
}

ValueFlowGraph ValueFlowGraph::from_edges(
    std::vector<InstrId> nodes, const std::vector<std::pair<InstrId, InstrId>> &edges) {
  ValueFlowGraph g;
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  g.nodes_ = std::move(nodes);
  for (uint32_t i = 0; i < g.nodes_.size(); ++i) g.index_[g.nodes_[i]] = i;
  g.succ_.resize(g.nodes_.size());
  g.pred_.resize(g.nodes_.size());
  std::set<std::pair<uint32_t, uint32_t>> unique;
  for (const auto &[from, to] : edges) {
    unique.insert({g.index_.at(from), g.index_.at(to)});
  }
  for (const auto &[a, b] : unique) {
    g.succ_[a].push_back(b);
    g.pred_[b].push_back(a);
  }
  for (auto &p : g.pred_) std::sort(p.begin(), p.end());
  return g;
}

std::optional<uint32_t> ValueFlowGraph::node_index(InstrId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<uint32_t, uint32_t>> ValueFlowGraph::edges() const {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (uint32_t a = 0; a < succ_.size(); ++a) {
    for (uint32_t b : succ_[a]) out.push_back({a, b});
  }
  return out;
}

size_t ValueFlowGraph::edge_count() const {
  size_t n = 0;
  for (const auto &s : succ_) n += s.size();
  return n;
}

const std::set<InstrId> &ValueFlowGraph::sources_of(uint32_t function,
                                                    uint32_t slot) const {
  static const std::set<InstrId> kEmpty;
  auto it = sources_.find({function, slot});
  return it == sources_.end() ? kEmpty : it->second;
}

ValueFlowGraph build_vfg(const Program &program, const PointsToMap &pts) {
  return build_vfg(program, pts, build_call_graph(program, pts));
}

ValueFlowGraph build_vfg(const Program &program, const PointsToMap &pts,
                         const CallGraph &callgraph) {
  using Key = std::pair<uint32_t, uint32_t>;
  std::map<Key, std::set<InstrId>> sources;
  std::vector<InstrId> nodes;

  for (uint32_t f = 0; f < program.functions().size(); ++f) {
    const ir::Function &fn = program.function(f);
    for (uint32_t b = 0; b < fn.blocks.size(); ++b) {
      const auto &instrs = fn.blocks[b].instructions;
      for (uint32_t i = 0; i < instrs.size(); ++i) {
        if (!is_vfg_node(instrs[i])) continue;
        nodes.push_back({f, b, i});
        if (instrs[i].result) sources[{f, instrs[i].result_slot}].insert({f, b, i});
      }
    }
  }

  // Parameters hold whatever their arguments hold, transitively.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const CallEdge &e : callgraph.edges()) {
      const Instruction &ins = program.block(e.site.block_id()).instructions[e.site.index];
      size_t nargs = std::min(ins.operands.size() - 1,
                              program.function(e.callee).params.size());
      for (size_t a = 0; a < nargs; ++a) {
        const Operand &arg = ins.operands[a + 1];
        if (!arg.is_var()) continue;
        auto it = sources.find({e.caller, arg.index});
        if (it == sources.end()) continue;
        const std::set<InstrId> src = it->second;  // may alias dst on recursion
        auto &dst = sources[{e.callee, static_cast<uint32_t>(a)}];
        size_t before = dst.size();
        dst.insert(src.begin(), src.end());
        changed |= dst.size() != before;
      }
    }
  }

  std::vector<std::pair<InstrId, InstrId>> edges;
  std::vector<std::pair<InstrId, ObjectSet>> stores, loads;
  for (uint32_t f = 0; f < program.functions().size(); ++f) {
    const ir::Function &fn = program.function(f);
    for (uint32_t b = 0; b < fn.blocks.size(); ++b) {
      const auto &instrs = fn.blocks[b].instructions;
      for (uint32_t i = 0; i < instrs.size(); ++i) {
        const Instruction &ins = instrs[i];
        InstrId use{f, b, i};
        if (!is_vfg_node(ins)) continue;
        if (ins.is_store()) stores.push_back({use, pts.memory_objects(f, ins.memory_operand())});
        if (ins.is_load()) loads.push_back({use, pts.memory_objects(f, ins.memory_operand())});
        // A call's result comes from the callee's returns, not its operands.
        if (ins.is_call()) continue;
        for (const Operand &op : ins.operands) {
          if (!op.is_var()) continue;
          auto it = sources.find({f, op.index});
          if (it == sources.end()) continue;
          for (const InstrId &def : it->second) edges.push_back({def, use});
        }
      }
    }
  }

  for (const auto &[store, sobjs] : stores) {
    for (const auto &[load, lobjs] : loads) {
      bool shared = std::any_of(sobjs.begin(), sobjs.end(),
                                [&](const AbstractObject &o) { return lobjs.count(o) > 0; });
      if (shared) edges.push_back({store, load});
    }
  }

  for (const CallEdge &e : callgraph.edges()) {
    const Instruction &ins = program.block(e.site.block_id()).instructions[e.site.index];
    if (!ins.result) continue;
    for (const ir::BasicBlock &bb : program.function(e.callee).blocks) {
      const Terminator &t = bb.terminator;
      if (t.kind != Terminator::Kind::kRet || !t.value) continue;
      auto it = sources.find({e.callee, t.value->index});
      if (it == sources.end()) continue;
      for (const InstrId &def : it->second) edges.push_back({def, e.site});
    }
  }

  ValueFlowGraph g = ValueFlowGraph::from_edges(std::move(nodes), edges);
  g.sources_ = std::move(sources);
  for (const auto &[store, objs] : stores) {
    if (!objs.empty()) g.writes_[*g.node_index(store)] = objs;
  }
  return g;
}

const ObjectSet &ValueFlowGraph::objects_written(uint32_t node) const {
  static const ObjectSet kEmpty;
  auto it = writes_.find(node);
  return it == writes_.end() ? kEmpty : it->second;
}

std::set<uint32_t> datum_nodes(const ValueFlowGraph &vfg, const ir::TargetSpec &target,
                               const ir::Datum &datum) {
  std::set<uint32_t> out;
  if (datum.kind == ir::Datum::Kind::kVar) {
    for (const InstrId &def : vfg.sources_of(target.location.function, datum.index)) {
      if (auto n = vfg.node_index(def)) out.insert(*n);
    }
    return out;
  }
  const AbstractObject obj{AbstractObject::Kind::kCell, datum.index};
  for (uint32_t n = 0; n < vfg.node_count(); ++n) {
    if (vfg.objects_written(n).count(obj)) out.insert(n);
  }
  return out;
}

}  // namespace hdfuzz::analysis
