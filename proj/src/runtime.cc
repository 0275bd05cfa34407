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

#include "hdfuzz/runtime.h"

#include <stdexcept>

namespace hdfuzz::runtime {

namespace {

using ir::Opcode;
using ir::Operand;

struct Value {
  enum class Tag : uint8_t { kInt, kCell, kFunc };
  Tag tag = Tag::kInt;
  int64_t bits = 0;  // integer value, global index or function index
};

struct Frame {
  uint32_t function = 0;
  uint32_t block = 0;
  uint32_t ip = 0;
  size_t base = 0;                      // first slot in the value stack
  std::optional<uint32_t> result_slot;  // caller slot receiving the return
};

// Signals a non-ok outcome from deep inside the interpreter loop.
struct Stop {
  ExecOutcome outcome;
};

[[noreturn]] void crash(CrashKind kind, InstrId at) {
  throw Stop{{ExecOutcome::Kind::kCrash, kind, at}};
}

int64_t wrap_add(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) + static_cast<uint64_t>(b));
}
int64_t wrap_sub(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) - static_cast<uint64_t>(b));
}
int64_t wrap_mul(int64_t a, int64_t b) {
  return static_cast<int64_t>(static_cast<uint64_t>(a) * static_cast<uint64_t>(b));
}

}  // namespace

const char *crash_kind_name(CrashKind k) {
  switch (k) {
    case CrashKind::kTrap: return "trap";
    case CrashKind::kArrayBounds: return "array-bounds";
    case CrashKind::kDivByZero: return "div-by-zero";
    case CrashKind::kBadPointer: return "bad-pointer";
  }
  return "?";
}

const char *outcome_name(ExecOutcome::Kind k) {
  switch (k) {
    case ExecOutcome::Kind::kOk: return "ok";
    case ExecOutcome::Kind::kCrash: return "crash";
    case ExecOutcome::Kind::kStepLimit: return "step-limit";
    case ExecOutcome::Kind::kInputExhausted: return "input-exhausted";
  }
  return "?";
}

std::string crash_key(const ir::Program &program, const ExecOutcome &outcome) {
  if (!outcome.is_crash() || !outcome.location) return {};
  return program.instr_name(*outcome.location) + ":" + crash_kind_name(outcome.crash);
}

uint32_t bitmap_index(BlockId b, uint32_t bitmap_size) {
  // FNV-1a over the two indices, independent of platform hashing.
  uint64_t h = 14695981039346656037ull;
  for (uint32_t word : {b.function, b.block}) {
    for (int i = 0; i < 4; ++i) {
      h ^= (word >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return static_cast<uint32_t>(h & (bitmap_size - 1));
}

uint8_t bucketize(uint32_t hits) {
  if (hits == 0) return 0;
  if (hits <= 3) return static_cast<uint8_t>(1u << (hits - 1));
  if (hits <= 7) return 8;
  if (hits <= 15) return 16;
  if (hits <= 31) return 32;
  if (hits <= 127) return 64;
  return 128;
}

namespace {

void check_bitmap_size(uint32_t size) {
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("bitmap size must be a power of two, got " +
                                std::to_string(size));
  }
}

}  // namespace

InstrumentationPlan build_plan(const std::set<BlockId> &slice_blocks,
                               const std::set<BlockId> &boundary,
                               const std::map<BlockId, double> &vfb,
                               const std::map<BlockId, double> &distances,
                               uint32_t bitmap_size) {
  check_bitmap_size(bitmap_size);
  InstrumentationPlan plan;
  plan.bitmap_size = bitmap_size;
  plan.coverage_blocks = slice_blocks;
  plan.vfb_blocks = vfb;
  for (BlockId b : boundary) {
    auto it = distances.find(b);
    if (it == distances.end()) {
      plan.diagnostics.push_back("boundary block " + std::to_string(b.function) + ":" +
                                 std::to_string(b.block) +
                                 " has no distance; not instrumented");
      continue;
    }
    plan.boundary_blocks[b] = it->second;
    plan.coverage_blocks.insert(b);
  }
  return plan;
}

InstrumentationPlan full_plan(const ir::Program &program,
                              const std::map<BlockId, double> &vfb,
                              const std::map<BlockId, double> &distances,
                              uint32_t bitmap_size) {
  check_bitmap_size(bitmap_size);
  InstrumentationPlan plan;
  plan.bitmap_size = bitmap_size;
  for (BlockId b : program.all_blocks()) plan.coverage_blocks.insert(b);
  plan.boundary_blocks = distances;
  plan.vfb_blocks = vfb;
  return plan;
}

Executor::Executor(const ir::Program &program, const InstrumentationPlan &plan)
    : program_(program), plan_(plan), info_(program.block_count()) {
  for (BlockId b : plan.coverage_blocks) info_[program.flat_index(b)].coverage = true;
  for (const auto &[b, d] : plan.boundary_blocks) {
    BlockInfo &bi = info_[program.flat_index(b)];
    bi.boundary = true;
    bi.distance = d;
  }
  for (const auto &[b, v] : plan.vfb_blocks) {
    BlockInfo &bi = info_[program.flat_index(b)];
    bi.scored = true;
    bi.vfb = v;
  }
}

ExecResult Executor::run(std::string_view input, uint64_t step_limit,
                         bool record_trace) const {
  ExecResult result;
  ExecutionFeedback &fb = result.feedback;
  std::vector<uint32_t> hits(info_.size(), 0);

  // Fresh memory image per execution.
  std::vector<std::vector<Value>> memory;
  memory.reserve(program_.globals().size());
  for (const ir::GlobalCell &g : program_.globals()) {
    memory.emplace_back(g.length, Value{Value::Tag::kInt, g.init});
  }

  std::vector<Value> slots;
  std::vector<Frame> frames;
  uint64_t steps = 0;

  auto enter_block = [&](uint32_t fn, uint32_t block) {
    const BlockId id{fn, block};
    const uint32_t flat = program_.flat_index(id);
    const BlockInfo &bi = info_[flat];
    if (bi.coverage) ++hits[flat];
    if (bi.boundary) fb.boundary_hits.insert(id);
    if (bi.scored) fb.vfs_sum += bi.vfb;
    if (record_trace) fb.trace.push_back(id);
  };
  auto push_frame = [&](uint32_t fn, std::optional<uint32_t> result_slot) {
    const ir::Function &f = program_.function(fn);
    frames.push_back({fn, f.entry_block, 0, slots.size(), result_slot});
    slots.resize(slots.size() + f.slots.size());
    enter_block(fn, f.entry_block);
  };

  push_frame(program_.entry_function(), std::nullopt);
  try {
    while (!frames.empty()) {
      if (steps >= step_limit) {
        throw Stop{{ExecOutcome::Kind::kStepLimit, CrashKind::kTrap, std::nullopt}};
      }
      ++steps;
      Frame &fr = frames.back();
      const ir::Function &fn = program_.function(fr.function);
      const ir::BasicBlock &bb = fn.blocks[fr.block];
      const InstrId here{fr.function, fr.block, fr.ip};
      auto var = [&](uint32_t slot) -> Value & { return slots[frames.back().base + slot]; };
      auto value = [&](const Operand &op) -> Value {
        if (op.kind == Operand::Kind::kImm) return {Value::Tag::kInt, op.imm};
        return var(op.index);
      };
      // Resolves a cell operand to a global index.
      auto cell = [&](const Operand &op, bool want_array) -> uint32_t {
        uint32_t g = 0;
        if (op.kind == Operand::Kind::kGlobal) {
          g = op.index;
        } else {
          const Value v = var(op.index);
          if (v.tag != Value::Tag::kCell) crash(CrashKind::kBadPointer, here);
          g = static_cast<uint32_t>(v.bits);
        }
        if (program_.globals()[g].is_array != want_array) {
          crash(CrashKind::kBadPointer, here);
        }
        return g;
      };
      auto element = [&](uint32_t g, const Operand &idx_op) -> Value & {
        const int64_t idx = value(idx_op).bits;
        std::vector<Value> &arr = memory[g];
        if (idx < 0 || idx >= static_cast<int64_t>(arr.size())) {
          crash(CrashKind::kArrayBounds, here);
        }
        return arr[static_cast<size_t>(idx)];
      };

      if (fr.ip < bb.instructions.size()) {
        const ir::Instruction &ins = bb.instructions[fr.ip];
        ++fr.ip;
        const std::vector<Operand> &ops = ins.operands;
        switch (ins.opcode) {
          case Opcode::kConst:
            var(ins.result_slot) = {Value::Tag::kInt, ops[0].imm};
            break;
          case Opcode::kInput: {
            const int64_t k = ops[0].imm;
            if (k < 0 || k >= static_cast<int64_t>(input.size())) {
              throw Stop{{ExecOutcome::Kind::kInputExhausted, CrashKind::kTrap, here}};
            }
            var(ins.result_slot) = {Value::Tag::kInt,
                                    static_cast<unsigned char>(input[static_cast<size_t>(k)])};
            break;
          }
          case Opcode::kBinop: {
            const int64_t a = value(ops[0]).bits;
            const int64_t b = value(ops[1]).bits;
            int64_t r = 0;
            switch (ins.binop) {
              case ir::BinaryOp::kAdd: r = wrap_add(a, b); break;
              case ir::BinaryOp::kSub: r = wrap_sub(a, b); break;
              case ir::BinaryOp::kMul: r = wrap_mul(a, b); break;
              case ir::BinaryOp::kDiv:
                if (b == 0) crash(CrashKind::kDivByZero, here);
                // INT64_MIN / -1 wraps to INT64_MIN.
                r = (b == -1) ? wrap_sub(0, a) : a / b;
                break;
              case ir::BinaryOp::kLt: r = a < b; break;
              case ir::BinaryOp::kEq: r = a == b; break;
              case ir::BinaryOp::kAnd: r = a & b; break;
              case ir::BinaryOp::kOr: r = a | b; break;
            }
            var(ins.result_slot) = {Value::Tag::kInt, r};
            break;
          }
          case Opcode::kLoad:
            var(ins.result_slot) = memory[cell(ops[0], false)][0];
            break;
          case Opcode::kStore: {
            const Value v = value(ops[1]);
            memory[cell(ops[0], false)][0] = v;
            break;
          }
          case Opcode::kAddr:
            var(ins.result_slot) = {Value::Tag::kCell, ops[0].index};
            break;
          case Opcode::kFuncAddr:
            var(ins.result_slot) = {Value::Tag::kFunc, ops[0].index};
            break;
          case Opcode::kALoad: {
            const Value v = element(cell(ops[0], true), ops[1]);
            var(ins.result_slot) = v;
            break;
          }
          case Opcode::kAStore: {
            const Value v = value(ops[2]);
            element(cell(ops[0], true), ops[1]) = v;
            break;
          }
          case Opcode::kCall:
          case Opcode::kCallIndirect: {
            uint32_t callee = ops[0].index;
            if (ins.opcode == Opcode::kCallIndirect) {
              const Value p = var(ops[0].index);
              if (p.tag != Value::Tag::kFunc) crash(CrashKind::kBadPointer, here);
              callee = static_cast<uint32_t>(p.bits);
              if (program_.function(callee).params.size() != ops.size() - 1) {
                crash(CrashKind::kBadPointer, here);
              }
            }
            std::vector<Value> args;
            args.reserve(ops.size() - 1);
            for (size_t i = 1; i < ops.size(); ++i) args.push_back(value(ops[i]));
            std::optional<uint32_t> result_slot;
            if (ins.result) result_slot = ins.result_slot;
            // `fr` is invalidated by the push below.
            push_frame(callee, result_slot);
            const size_t base = frames.back().base;
            for (size_t i = 0; i < args.size(); ++i) slots[base + i] = args[i];
            break;
          }
          case Opcode::kNop:
            break;
        }
        continue;
      }

      const ir::Terminator &t = bb.terminator;
      switch (t.kind) {
        case ir::Terminator::Kind::kBr:
          fr.block = t.true_block;
          fr.ip = 0;
          enter_block(fr.function, fr.block);
          break;
        case ir::Terminator::Kind::kBrCond: {
          const bool taken = value(*t.value).bits != 0;
          fr.block = taken ? t.true_block : t.false_block;
          fr.ip = 0;
          enter_block(fr.function, fr.block);
          break;
        }
        case ir::Terminator::Kind::kRet: {
          Value rv{Value::Tag::kInt, 0};
          if (t.value) rv = value(*t.value);
          const std::optional<uint32_t> dest = fr.result_slot;
          const size_t base = fr.base;
          frames.pop_back();
          slots.resize(base);
          if (!frames.empty() && dest) slots[frames.back().base + *dest] = rv;
          break;
        }
        case ir::Terminator::Kind::kTrap:
          crash(CrashKind::kTrap, here);
      }
    }
  } catch (const Stop &stop) {
    result.outcome = stop.outcome;
    if (result.outcome.kind != ExecOutcome::Kind::kCrash) {
      result.outcome.location.reset();
    }
  }

  fb.exec_steps = steps;
  for (uint32_t flat = 0; flat < hits.size(); ++flat) {
    if (hits[flat] == 0) continue;
    const BlockId b = program_.block_at(flat);
    fb.block_hits[b] = hits[flat];
  }
  // Colliding blocks share a slot; their counts add up before bucketing.
  std::map<uint32_t, uint32_t> slot_counts;
  for (const auto &[b, n] : fb.block_hits) slot_counts[bitmap_index(b, plan_.bitmap_size)] += n;
  for (const auto &[slot, n] : slot_counts) fb.bitmap[slot] = bucketize(n);
  for (BlockId b : fb.boundary_hits) {
    fb.distance_sum += info_[program_.flat_index(b)].distance;
    ++fb.distance_count;
  }
  return result;
}

ExecResult execute(const ir::Program &program, std::string_view input,
                   const InstrumentationPlan &plan, uint64_t step_limit,
                   bool record_trace) {
  return Executor(program, plan).run(input, step_limit, record_trace);
}

}  // namespace hdfuzz::runtime
