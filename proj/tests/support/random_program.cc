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

#include "random_program.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

namespace hdfuzz::testing {

namespace {

class Gen {
 public:
  Gen(std::mt19937_64 &rng, const GenOptions &opts) : rng_(rng), opts_(opts) {}

  std::string run() {
    const uint32_t nf = 1 + pick(opts_.max_functions);
    uint32_t budget = opts_.max_total_blocks;
    for (uint32_t f = 0; f < nf; ++f) {
      const uint32_t reserve = nf - f - 1;
      const uint32_t cap = std::min<uint32_t>(10, budget - reserve);
      blocks_.push_back(1 + pick(cap));
      budget -= blocks_.back();
      params_.push_back(f == 0 ? 0 : pick(opts_.max_params + 1));
    }
    out_ << "global @g0\nglobal @g1 = 3\nglobal @arr[8]\nglobal @gp\n";
    for (uint32_t a = 0; a <= opts_.max_params; ++a) out_ << "global @gf" << a << "\n";
    for (uint32_t f = 0; f < nf; ++f) function(f);
    return out_.str();
  }

 private:
  uint32_t pick(uint32_t n) { return n == 0 ? 0 : static_cast<uint32_t>(rng_() % n); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

  std::string fresh() { return "t" + std::to_string(counter_++); }

  std::string operand(const std::vector<std::string> &vars) {
    if (vars.empty() || chance(0.25)) return std::to_string(static_cast<int>(pick(300)) - 20);
    return vars[pick(static_cast<uint32_t>(vars.size()))];
  }

  std::string args(uint32_t callee, const std::vector<std::string> &vars) {
    std::string s;
    for (uint32_t i = 0; i < params_[callee]; ++i) s += " " + operand(vars);
    return s;
  }

  // Emits one random instruction, appending any defined variable to `vars`.
  void instruction(std::vector<std::string> &vars) {
    const uint32_t nf = static_cast<uint32_t>(blocks_.size());
    if (chance(opts_.call_probability)) {
      const uint32_t callee = pick(nf);
      const std::string result = chance(0.5) ? fresh() : std::string();
      if (chance(opts_.indirect_probability)) {
        const std::string fp = fresh();
        const uint32_t arity = params_[callee];
        if (chance(0.5)) {
          // Through memory: one slot per arity keeps runtime calls well-formed.
          const std::string q = fresh();
          out_ << "    " << fp << " = funcaddr f" << callee << "\n    store @gf" << arity << " "
               << fp << "\n    " << q << " = load @gf" << arity << "\n    "
               << (result.empty() ? "" : result + " = ") << "call_indirect " << q
               << args(callee, vars) << "\n";
        } else {
          out_ << "    " << fp << " = funcaddr f" << callee << "\n    "
               << (result.empty() ? "" : result + " = ") << "call_indirect " << fp
               << args(callee, vars) << "\n";
        }
      } else {
        out_ << "    " << (result.empty() ? "" : result + " = ") << "call f" << callee
             << args(callee, vars) << "\n";
      }
      if (!result.empty()) vars.push_back(result);
      return;
    }
    if (chance(opts_.memory_probability)) {
      const std::string v = fresh();
      switch (pick(6)) {
        case 0:
          out_ << "    store @g" << pick(2) << " " << operand(vars) << "\n";
          return;
        case 1:
          out_ << "    " << v << " = load @g" << pick(2) << "\n";
          break;
        case 2:
          out_ << "    " << v << " = aload @arr " << operand(vars) << "\n";
          break;
        case 3:
          out_ << "    astore @arr " << operand(vars) << " " << operand(vars) << "\n";
          return;
        case 4: {
          const std::string q = fresh();
          out_ << "    " << q << " = addr @g" << pick(2) << "\n    store " << q << " "
               << operand(vars) << "\n    " << v << " = load " << q << "\n";
          break;
        }
        default: {
          const std::string p = fresh();
          const std::string q = fresh();
          out_ << "    " << p << " = addr @g" << pick(2) << "\n    store @gp " << p << "\n    "
               << q << " = load @gp\n    " << v << " = load " << q << "\n";
          break;
        }
      }
      vars.push_back(v);
      return;
    }
    const std::string v = fresh();
    switch (pick(4)) {
      case 0:
        out_ << "    " << v << " = const " << static_cast<int>(pick(256)) << "\n";
        break;
      case 1:
        out_ << "    " << v << " = input " << pick(8) << "\n";
        break;
      default: {
        static const char *ops[] = {"add", "sub", "mul", "lt", "eq", "and", "or", "div"};
        out_ << "    " << v << " = binop " << ops[pick(8)] << " " << operand(vars) << " "
             << operand(vars) << "\n";
        break;
      }
    }
    vars.push_back(v);
  }

  void function(uint32_t f) {
    const uint32_t nb = blocks_[f];
    std::vector<std::string> params;
    for (uint32_t i = 0; i < params_[f]; ++i) params.push_back("p" + std::to_string(i));
    out_ << "func f" << f << "(";
    for (size_t i = 0; i < params.size(); ++i) out_ << (i ? ", " : "") << params[i];
    out_ << ") {\n";

    // Random spanning tree from b0 keeps every block reachable.
    std::vector<std::vector<uint32_t>> succ(nb);
    for (uint32_t b = 1; b < nb; ++b) {
      std::vector<uint32_t> open;
      for (uint32_t p = 0; p < b; ++p) {
        if (succ[p].size() < 2) open.push_back(p);
      }
      succ[open[pick(static_cast<uint32_t>(open.size()))]].push_back(b);
    }
    for (uint32_t b = 0; b < nb; ++b) {
      while (succ[b].size() < 2 && chance(opts_.back_edge_probability)) {
        const uint32_t t = pick(nb);
        if (std::find(succ[b].begin(), succ[b].end(), t) == succ[b].end()) succ[b].push_back(t);
      }
    }

    std::vector<std::string> dominating = params;
    for (uint32_t b = 0; b < nb; ++b) {
      out_ << "  block b" << b << " {\n";
      std::vector<std::string> vars = dominating;
      const uint32_t count = pick(4) + (b == 0 ? 1 : 0);
      for (uint32_t i = 0; i < count; ++i) instruction(vars);
      if (b == 0) dominating = vars;
      if (succ[b].empty()) {
        if (chance(0.05)) {
          out_ << "    trap\n";
        } else if (!vars.empty() && chance(0.7)) {
          out_ << "    ret " << vars[pick(static_cast<uint32_t>(vars.size()))] << "\n";
        } else {
          out_ << "    ret\n";
        }
      } else if (succ[b].size() == 1) {
        out_ << "    br b" << succ[b][0] << "\n";
      } else {
        const std::string c = fresh();
        out_ << "    " << c << " = binop lt " << operand(vars) << " " << pick(256) << "\n";
        out_ << "    brcond " << c << " b" << succ[b][0] << " b" << succ[b][1] << "\n";
      }
      out_ << "  }\n";
    }
    out_ << "}\n";
  }

  std::mt19937_64 &rng_;
  const GenOptions &opts_;
  std::ostringstream out_;
  std::vector<uint32_t> blocks_;
  std::vector<uint32_t> params_;
  uint32_t counter_ = 0;
};

}  // namespace

std::string random_program(std::mt19937_64 &rng, const GenOptions &opts) {
  return Gen(rng, opts).run();
}

analysis::ValueFlowGraph random_vfg(std::mt19937_64 &rng, uint32_t nodes, double edge_density) {
  std::vector<ir::InstrId> ids;
  std::set<ir::InstrId> used;
  while (ids.size() < nodes) {
    ir::InstrId id{static_cast<uint32_t>(rng() % 4), static_cast<uint32_t>(rng() % 8),
                   static_cast<uint32_t>(rng() % 8)};
    if (used.insert(id).second) ids.push_back(id);
  }
  std::vector<std::pair<ir::InstrId, ir::InstrId>> edges;
  std::uniform_real_distribution<double> u(0, 1);
  for (uint32_t a = 0; a < nodes; ++a) {
    for (uint32_t b = 0; b < nodes; ++b) {
      if (a != b && u(rng) < edge_density) edges.emplace_back(ids[a], ids[b]);
    }
  }
  return analysis::ValueFlowGraph::from_edges(ids, edges);
}

}  // namespace hdfuzz::testing
