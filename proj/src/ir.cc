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

#include "hdfuzz/ir.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace hdfuzz::ir {

ParseError::ParseError(int line, int column, const std::string &message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

std::optional<uint32_t> Function::find_block(std::string_view label) const {
  auto it = block_index.find(std::string(label));
  if (it == block_index.end()) return std::nullopt;
  return it->second;
}

std::optional<uint32_t> Function::find_slot(std::string_view var) const {
  auto it = std::find(slots.begin(), slots.end(), var);
  if (it == slots.end()) return std::nullopt;
  return static_cast<uint32_t>(it - slots.begin());
}

std::optional<uint32_t> Program::find_function(std::string_view name) const {
  auto it = function_index_.find(std::string(name));
  if (it == function_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<uint32_t> Program::find_global(std::string_view name) const {
  auto it = global_index_.find(std::string(name));
  if (it == global_index_.end()) return std::nullopt;
  return it->second;
}

BlockId Program::block_at(uint32_t flat) const {
  auto it = std::upper_bound(block_offsets_.begin(), block_offsets_.end(), flat);
  uint32_t f = static_cast<uint32_t>(it - block_offsets_.begin()) - 1;
  return {f, flat - block_offsets_[f]};
}

std::vector<BlockId> Program::all_blocks() const {
  std::vector<BlockId> out;
  out.reserve(total_blocks_);
  for (uint32_t f = 0; f < functions_.size(); ++f) {
    for (uint32_t b = 0; b < functions_[f].blocks.size(); ++b) out.push_back({f, b});
  }
  return out;
}

std::string Program::block_name(BlockId b) const {
  return functions_[b.function].name + ":" +
         functions_[b.function].blocks[b.block].label;
}

std::string Program::instr_name(InstrId i) const {
  return block_name(i.block_id()) + ":" + std::to_string(i.index);
}

const char *opcode_name(Opcode op) {
  switch (op) {
    case Opcode::kConst: return "const";
    case Opcode::kInput: return "input";
    case Opcode::kBinop: return "binop";
    case Opcode::kLoad: return "load";
    case Opcode::kStore: return "store";
    case Opcode::kAddr: return "addr";
    case Opcode::kFuncAddr: return "funcaddr";
    case Opcode::kCall: return "call";
    case Opcode::kCallIndirect: return "call_indirect";
    case Opcode::kALoad: return "aload";
    case Opcode::kAStore: return "astore";
    case Opcode::kNop: return "nop";
  }
  return "?";
}

const char *binop_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "add";
    case BinaryOp::kSub: return "sub";
    case BinaryOp::kMul: return "mul";
    case BinaryOp::kDiv: return "div";
    case BinaryOp::kLt: return "lt";
    case BinaryOp::kEq: return "eq";
    case BinaryOp::kAnd: return "and";
    case BinaryOp::kOr: return "or";
  }
  return "?";
}

namespace {

std::string operand_text(const Operand &op) {
  switch (op.kind) {
    case Operand::Kind::kVar:
    case Operand::Kind::kFunc:
      return op.name;
    case Operand::Kind::kGlobal:
      return "@" + op.name;
    case Operand::Kind::kImm:
      return std::to_string(op.imm);
  }
  return {};
}

std::string instruction_text(const Instruction &ins) {
  std::string s;
  if (ins.result) s = *ins.result + " = ";
  s += opcode_name(ins.opcode);
  if (ins.opcode == Opcode::kBinop) {
    s += " ";
    s += binop_name(ins.binop);
  }
  for (const Operand &op : ins.operands) s += " " + operand_text(op);
  return s;
}

std::string terminator_text(const Terminator &t) {
  switch (t.kind) {
    case Terminator::Kind::kBr:
      return "br " + t.true_label;
    case Terminator::Kind::kBrCond:
      return "brcond " + t.value->name + " " + t.true_label + " " + t.false_label;
    case Terminator::Kind::kRet:
      return t.value ? "ret " + t.value->name : "ret";
    case Terminator::Kind::kTrap:
      return "trap";
  }
  return {};
}

}  // namespace

std::string print_program(const Program &program) {
  std::ostringstream os;
  os << "entry " << program.function(program.entry_function()).name << "\n";
  for (const GlobalCell &g : program.globals()) {
    os << "global @" << g.name;
    if (g.is_array) os << "[" << g.length << "]";
    if (g.init != 0) os << " = " << g.init;
    os << "\n";
  }
  for (const Function &fn : program.functions()) {
    os << "\nfunc " << fn.name << "(";
    for (const std::string &p : fn.params) os << p << ", ";
    os << "entry=" << fn.entry_label() << ") {\n";
    for (const BasicBlock &bb : fn.blocks) {
      os << "  block " << bb.label << " {\n";
      for (const Instruction &ins : bb.instructions) {
        os << "    " << instruction_text(ins) << "\n";
      }
      os << "    " << terminator_text(bb.terminator) << "\n  }\n";
    }
    os << "}\n";
  }
  return os.str();
}

TargetSpec resolve_target(const Program &program, std::string_view spec) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw TargetError("target must be 'func:block[:index]', got '" +
                      std::string(spec) + "'");
  }
  auto f = program.find_function(parts[0]);
  if (!f) throw TargetError("unknown function '" + std::string(parts[0]) + "'");
  const Function &fn = program.function(*f);
  auto b = fn.find_block(parts[1]);
  if (!b) {
    throw TargetError("unknown block '" + std::string(parts[1]) +
                      "' in function '" + fn.name + "'");
  }
  const BasicBlock &bb = fn.blocks[*b];
  uint32_t index = 0;
  if (parts.size() == 3) {
    auto [ptr, ec] = std::from_chars(parts[2].data(),
                                     parts[2].data() + parts[2].size(), index);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size()) {
      throw TargetError("malformed instruction index '" + std::string(parts[2]) + "'");
    }
    if (index > bb.terminator_index()) {
      throw TargetError("instruction index " + std::to_string(index) +
                        " out of range for block '" + bb.label + "' (" +
                        std::to_string(bb.terminator_index() + 1) +
                        " statements)");
    }
  } else {
    index = bb.instructions.empty() ? 0 : bb.terminator_index() - 1;
  }

  TargetSpec target;
  target.location = {*f, *b, index};
  if (index == bb.terminator_index()) return target;  // terminator: no data

  std::set<Datum> data;
  const Instruction &ins = bb.instructions[index];
  for (size_t i = 0; i < ins.operands.size(); ++i) {
    const Operand &op = ins.operands[i];
    if (op.kind == Operand::Kind::kVar) {
      data.insert({Datum::Kind::kVar, op.name, op.index});
    } else if (op.kind == Operand::Kind::kGlobal && ins.opcode != Opcode::kAddr) {
      data.insert({Datum::Kind::kObject, op.name, op.index});
    }
  }
  target.data.assign(data.begin(), data.end());
  return target;
}

}  // namespace hdfuzz::ir
