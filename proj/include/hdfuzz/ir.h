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

// The toy intermediate representation (TIR) analyzed and executed by the
// fuzzer. A Program is produced only by parse_program(), which validates and
// links it (variable slots, block and function indices are resolved), and is
// immutable afterwards.

#ifndef HDFUZZ_IR_H_
#define HDFUZZ_IR_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hdfuzz::ir {

// Identifies a basic block by function index and block index within it.
struct BlockId {
  uint32_t function = 0;
  uint32_t block = 0;
  auto operator<=>(const BlockId &) const = default;
};

// Identifies an instruction. `index` == number of non-terminator
// instructions in the block names the terminator.
struct InstrId {
  uint32_t function = 0;
  uint32_t block = 0;
  uint32_t index = 0;
  BlockId block_id() const { return {function, block}; }
  auto operator<=>(const InstrId &) const = default;
};

enum class Opcode {
  kConst,
  kInput,
  kBinop,
  kLoad,
  kStore,
  kAddr,
  kFuncAddr,
  kCall,
  kCallIndirect,
  kALoad,
  kAStore,
  kNop,
};

enum class BinaryOp { kAdd, kSub, kMul, kDiv, kLt, kEq, kAnd, kOr };

struct Operand {
  enum class Kind { kVar, kGlobal, kFunc, kImm };
  Kind kind = Kind::kImm;
  std::string name;  // empty for kImm
  int64_t imm = 0;
  // Resolved at link time: variable slot, global index or function index.
  uint32_t index = 0;

  bool is_var() const { return kind == Kind::kVar; }
  static Operand Var(std::string n) { return {Kind::kVar, std::move(n), 0, 0}; }
  static Operand Global(std::string n) {
    return {Kind::kGlobal, std::move(n), 0, 0};
  }
  static Operand Func(std::string n) {
    return {Kind::kFunc, std::move(n), 0, 0};
  }
  static Operand Imm(int64_t v) { return {Kind::kImm, {}, v, 0}; }
};

// Operand layout per opcode:
//   const      result, [imm]
//   input      result, [imm offset]
//   binop      result, [lhs, rhs]            (var | imm)
//   load       result, [cell]                (global | var)
//   store              [cell, value]         (global | var), (var | imm)
//   addr       result, [global]
//   funcaddr   result, [func]
//   call       result?, [func, args...]
//   call_indirect result?, [var, args...]
//   aload      result, [array, index]
//   astore             [array, index, value]
//   nop
struct Instruction {
  Opcode opcode = Opcode::kNop;
  BinaryOp binop = BinaryOp::kAdd;  // meaningful for kBinop only
  std::optional<std::string> result;
  uint32_t result_slot = 0;
  std::vector<Operand> operands;
  int line = 0;
  int column = 0;

  bool is_call() const {
    return opcode == Opcode::kCall || opcode == Opcode::kCallIndirect;
  }
  bool is_store() const {
    return opcode == Opcode::kStore || opcode == Opcode::kAStore;
  }
  bool is_load() const {
    return opcode == Opcode::kLoad || opcode == Opcode::kALoad;
  }
  // The memory operand of load/store/aload/astore.
  const Operand &memory_operand() const { return operands.front(); }
  // Call arguments (operands after the callee).
  std::vector<Operand> call_args() const {
    return {operands.begin() + 1, operands.end()};
  }
};

struct Terminator {
  enum class Kind { kBr, kBrCond, kRet, kTrap };
  Kind kind = Kind::kTrap;
  std::optional<Operand> value;  // brcond condition or ret value (vars only)
  std::string true_label;        // br target / brcond taken
  std::string false_label;       // brcond not-taken
  uint32_t true_block = 0;
  uint32_t false_block = 0;
  int line = 0;
  int column = 0;
};

struct BasicBlock {
  std::string label;
  std::vector<Instruction> instructions;
  Terminator terminator;
  std::vector<uint32_t> successors;    // distinct, in terminator order
  std::vector<uint32_t> predecessors;  // distinct, ascending

  uint32_t terminator_index() const {
    return static_cast<uint32_t>(instructions.size());
  }
};

struct Function {
  std::string name;
  std::vector<std::string> params;
  std::vector<BasicBlock> blocks;  // declaration order
  std::map<std::string, uint32_t> block_index;
  uint32_t entry_block = 0;
  std::vector<std::string> slots;  // variable names by slot; params first

  const BasicBlock &entry() const { return blocks[entry_block]; }
  const std::string &entry_label() const { return blocks[entry_block].label; }
  std::optional<uint32_t> find_block(std::string_view label) const;
  std::optional<uint32_t> find_slot(std::string_view var) const;
};

struct GlobalCell {
  std::string name;
  bool is_array = false;
  uint32_t length = 1;  // 1 for scalars
  int64_t init = 0;     // initial value of every element
};

class Program {
 public:
  const std::vector<Function> &functions() const { return functions_; }
  const std::vector<GlobalCell> &globals() const { return globals_; }
  const Function &function(uint32_t i) const { return functions_[i]; }
  const BasicBlock &block(BlockId b) const {
    return functions_[b.function].blocks[b.block];
  }
  uint32_t entry_function() const { return entry_function_; }
  std::optional<uint32_t> find_function(std::string_view name) const;
  std::optional<uint32_t> find_global(std::string_view name) const;

  // Dense numbering of all blocks, in declaration order.
  uint32_t block_count() const { return total_blocks_; }
  uint32_t flat_index(BlockId b) const {
    return block_offsets_[b.function] + b.block;
  }
  BlockId block_at(uint32_t flat) const;
  std::vector<BlockId> all_blocks() const;

  // "func:block" and "func:block:index" renderings used in reports.
  std::string block_name(BlockId b) const;
  std::string instr_name(InstrId i) const;

 private:
  friend class Linker;
  std::vector<Function> functions_;
  std::map<std::string, uint32_t> function_index_;
  std::vector<GlobalCell> globals_;
  std::map<std::string, uint32_t> global_index_;
  uint32_t entry_function_ = 0;
  std::vector<uint32_t> block_offsets_;
  uint32_t total_blocks_ = 0;
};

// Syntax and validation failures. `line`/`column` are 1-based; 0 when the
// problem is not tied to one position.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string &message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string &message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

Program parse_program(std::string_view text);

// Canonical text form; parse_program(print_program(p)) reproduces p.
std::string print_program(const Program &program);

// A target datum: a variable of the target's function, or a global object.
struct Datum {
  enum class Kind { kVar, kObject };
  Kind kind = Kind::kVar;
  std::string name;
  uint32_t index = 0;  // variable slot or global index
  auto operator<=>(const Datum &) const = default;
};

struct TargetSpec {
  InstrId location;
  std::vector<Datum> data;  // empty for terminator targets
  BlockId block() const { return location.block_id(); }
};

class TargetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Resolves "func:block[:index]". Without an index the block's last
// non-terminator instruction is used (the terminator if there is none).
TargetSpec resolve_target(const Program &program, std::string_view spec);

const char *opcode_name(Opcode op);
const char *binop_name(BinaryOp op);

}  // namespace hdfuzz::ir

#endif  // HDFUZZ_IR_H_
