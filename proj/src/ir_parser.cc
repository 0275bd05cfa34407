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

// TIR lexer, parser and linker/validator.
//
// Grammar (statements are separated by newlines or ';'):
//
//   program   := { 'entry' IDENT | global | func }
//   global    := 'global' '@'IDENT [ '[' INT ']' ] [ '=' INT ]
//   func      := 'func' IDENT '(' [ item { ',' item } ] ')' '{' { block } '}'
//   item      := IDENT | 'entry' '=' IDENT
//   block     := 'block' IDENT '{' { instr } terminator '}'
//   terminator:= 'br' IDENT | 'brcond' IDENT IDENT IDENT | 'ret' [IDENT]
//              | 'trap'

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hdfuzz/ir.h"

namespace hdfuzz::ir {

namespace {

struct Token {
  enum class Kind { kIdent, kGlobal, kInt, kSymbol, kNewline, kEof };
  Kind kind = Kind::kEof;
  std::string text;
  int64_t value = 0;
  int line = 1;
  int column = 1;
};

std::string describe(const Token &t) {
  switch (t.kind) {
    case Token::Kind::kEof:
      return "end of input";
    case Token::Kind::kNewline:
      return "end of line";
    case Token::Kind::kGlobal:
      return "'@" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipSpaceAndComments();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        t.kind = Token::Kind::kEof;
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (c == '\n' || c == ';') {
        t.kind = Token::Kind::kNewline;
        t.text = std::string(1, c);
        Advance();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Kind::kIdent;
        t.text = ReadIdent();
      } else if (c == '@') {
        Advance();
        if (pos_ >= text_.size() ||
            !(std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
          throw ParseError(t.line, t.column, "expected global name after '@'");
        }
        t.kind = Token::Kind::kGlobal;
        t.text = ReadIdent();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        t.kind = Token::Kind::kInt;
        ReadInt(t);
      } else if (std::string_view("{}()[]=,").find(c) != std::string_view::npos) {
        t.kind = Token::Kind::kSymbol;
        t.text = std::string(1, c);
        Advance();
      } else {
        throw ParseError(t.line, t.column,
                         std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void SkipSpaceAndComments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        Advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') Advance();
      } else {
        return;
      }
    }
  }

  std::string ReadIdent() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '.')) {
      Advance();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void ReadInt(Token &t) {
    size_t start = pos_;
    bool negative = false;
    if (text_[pos_] == '-') {
      negative = true;
      Advance();
    }
    int base = 10;
    if (pos_ + 1 < text_.size() && text_[pos_] == '0' &&
        (text_[pos_ + 1] == 'x' || text_[pos_ + 1] == 'X')) {
      base = 16;
      Advance();
      Advance();
    }
    size_t digits = pos_;
    while (pos_ < text_.size() &&
           std::isxdigit(static_cast<unsigned char>(text_[pos_])) &&
           (base == 16 || std::isdigit(static_cast<unsigned char>(text_[pos_])))) {
      Advance();
    }
    t.text = std::string(text_.substr(start, pos_ - start));
    if (digits == pos_) {
      throw ParseError(t.line, t.column, "malformed integer '" + t.text + "'");
    }
    if (pos_ < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
         text_[pos_] == '_')) {
      throw ParseError(t.line, t.column, "malformed integer near '" + t.text + "'");
    }
    uint64_t magnitude = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_,
                                     magnitude, base);
    (void)ptr;
    if (ec != std::errc() ||
        magnitude > (negative ? uint64_t{1} << 63 : (uint64_t{1} << 63) - 1)) {
      throw ParseError(t.line, t.column, "integer out of range '" + t.text + "'");
    }
    t.value = negative ? static_cast<int64_t>(0 - magnitude)
                       : static_cast<int64_t>(magnitude);
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const std::set<std::string, std::less<>> &Keywords() {
  static const std::set<std::string, std::less<>> kw = {
      "entry", "global", "func",   "block", "br",     "brcond", "ret",
      "trap",  "const",  "input",  "binop", "load",   "store",  "addr",
      "funcaddr", "call", "call_indirect", "aload", "astore", "nop"};
  return kw;
}

bool ParseBinop(std::string_view s, BinaryOp &op) {
  static const std::pair<std::string_view, BinaryOp> kOps[] = {
      {"add", BinaryOp::kAdd}, {"sub", BinaryOp::kSub}, {"mul", BinaryOp::kMul},
      {"div", BinaryOp::kDiv}, {"lt", BinaryOp::kLt},   {"eq", BinaryOp::kEq},
      {"and", BinaryOp::kAnd}, {"or", BinaryOp::kOr}};
  for (const auto &[name, value] : kOps) {
    if (name == s) {
      op = value;
      return true;
    }
  }
  return false;
}

}  // namespace

// Builds the Program from tokens, then resolves names and validates.
class Linker {
 public:
  explicit Linker(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program Run() {
    ParseTopLevel();
    Link();
    return std::move(program_);
  }

 private:
  // --- token helpers -------------------------------------------------------
  const Token &Peek() const { return toks_[pos_]; }
  const Token &Next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool AtSymbol(char c) const {
    return Peek().kind == Token::Kind::kSymbol && Peek().text[0] == c;
  }
  bool AtIdent(std::string_view word) const {
    return Peek().kind == Token::Kind::kIdent && Peek().text == word;
  }
  [[noreturn]] void Fail(const Token &t, const std::string &what) const {
    throw ParseError(t.line, t.column, what + ", found " + describe(t));
  }
  void ExpectSymbol(char c) {
    if (!AtSymbol(c)) Fail(Peek(), std::string("expected '") + c + "'");
    Next();
  }
  std::string ExpectName(const char *what) {
    const Token &t = Peek();
    if (t.kind != Token::Kind::kIdent) Fail(t, std::string("expected ") + what);
    if (Keywords().count(t.text)) {
      Fail(t, std::string("expected ") + what + " (keyword is reserved)");
    }
    return Next().text;
  }
  void SkipNewlines() {
    while (Peek().kind == Token::Kind::kNewline) Next();
  }
  void ExpectEndOfStatement() {
    if (Peek().kind == Token::Kind::kNewline) {
      Next();
      return;
    }
    if (AtSymbol('}') || Peek().kind == Token::Kind::kEof) return;
    Fail(Peek(), "expected end of statement");
  }

  // --- top level -----------------------------------------------------------
  void ParseTopLevel() {
    while (true) {
      SkipNewlines();
      const Token &t = Peek();
      if (t.kind == Token::Kind::kEof) break;
      if (AtIdent("entry")) {
        Next();
        if (entry_name_) Fail(t, "duplicate entry declaration");
        entry_tok_ = Peek();
        entry_name_ = ExpectName("entry function name");
        ExpectEndOfStatement();
      } else if (AtIdent("global")) {
        ParseGlobal();
      } else if (AtIdent("func")) {
        ParseFunction();
      } else {
        Fail(t, "expected 'entry', 'global' or 'func'");
      }
    }
  }

  void ParseGlobal() {
    Next();
    const Token &name_tok = Peek();
    if (name_tok.kind != Token::Kind::kGlobal) Fail(name_tok, "expected '@name'");
    GlobalCell g;
    g.name = Next().text;
    if (AtSymbol('[')) {
      Next();
      const Token &len = Peek();
      if (len.kind != Token::Kind::kInt || len.value <= 0 ||
          len.value > (1 << 20)) {
        Fail(len, "expected positive array length");
      }
      g.is_array = true;
      g.length = static_cast<uint32_t>(Next().value);
      ExpectSymbol(']');
    }
    if (AtSymbol('=')) {
      Next();
      if (Peek().kind != Token::Kind::kInt) Fail(Peek(), "expected initial value");
      g.init = Next().value;
    }
    ExpectEndOfStatement();
    if (program_.global_index_.count(g.name)) {
      throw ParseError(name_tok.line, name_tok.column,
                       "duplicate global '@" + g.name + "'");
    }
    program_.global_index_[g.name] =
        static_cast<uint32_t>(program_.globals_.size());
    program_.globals_.push_back(std::move(g));
  }

  void ParseFunction() {
    Next();
    const Token name_tok = Peek();
    Function fn;
    fn.name = ExpectName("function name");
    if (program_.function_index_.count(fn.name)) {
      throw ParseError(name_tok.line, name_tok.column,
                       "duplicate function '" + fn.name + "'");
    }
    ExpectSymbol('(');
    std::optional<std::string> entry_label;
    Token entry_tok;
    if (!AtSymbol(')')) {
      while (true) {
        if (AtIdent("entry")) {
          entry_tok = Next();
          if (entry_label) Fail(entry_tok, "duplicate entry label");
          ExpectSymbol('=');
          entry_label = ExpectName("entry block label");
        } else {
          const Token ptok = Peek();
          std::string p = ExpectName("parameter name");
          if (std::find(fn.params.begin(), fn.params.end(), p) != fn.params.end()) {
            throw ParseError(ptok.line, ptok.column, "duplicate parameter '" + p + "'");
          }
          fn.params.push_back(std::move(p));
        }
        if (AtSymbol(',')) {
          Next();
          continue;
        }
        break;
      }
    }
    ExpectSymbol(')');
    ExpectSymbol('{');
    while (true) {
      SkipNewlines();
      if (AtSymbol('}')) break;
      if (!AtIdent("block")) Fail(Peek(), "expected 'block' or '}'");
      ParseBlock(fn);
    }
    const Token close = Next();
    if (fn.blocks.empty()) {
      throw ParseError(close.line, close.column,
                       "function '" + fn.name + "' has no blocks");
    }
    if (entry_label) {
      auto it = fn.block_index.find(*entry_label);
      if (it == fn.block_index.end()) {
        throw ParseError(entry_tok.line, entry_tok.column,
                         "undefined entry block '" + *entry_label +
                             "' in function '" + fn.name + "'");
      }
      fn.entry_block = it->second;
    }
    program_.function_index_[fn.name] =
        static_cast<uint32_t>(program_.functions_.size());
    program_.functions_.push_back(std::move(fn));
  }

  void ParseBlock(Function &fn) {
    Next();
    const Token label_tok = Peek();
    BasicBlock bb;
    bb.label = ExpectName("block label");
    if (fn.block_index.count(bb.label)) {
      throw ParseError(label_tok.line, label_tok.column,
                       "duplicate block '" + bb.label + "' in function '" +
                           fn.name + "'");
    }
    ExpectSymbol('{');
    bool terminated = false;
    while (true) {
      SkipNewlines();
      if (AtSymbol('}')) break;
      const Token start = Peek();
      if (terminated) {
        throw ParseError(start.line, start.column,
                         "instruction after terminator in block '" + bb.label + "'");
      }
      if (ParseTerminator(bb.terminator)) {
        terminated = true;
      } else {
        bb.instructions.push_back(ParseInstruction());
      }
      ExpectEndOfStatement();
    }
    const Token close = Next();
    if (!terminated) {
      throw ParseError(close.line, close.column,
                       "block '" + bb.label + "' has no terminator");
    }
    fn.block_index[bb.label] = static_cast<uint32_t>(fn.blocks.size());
    fn.blocks.push_back(std::move(bb));
  }

  bool ParseTerminator(Terminator &term) {
    const Token start = Peek();
    if (start.kind != Token::Kind::kIdent) return false;
    term.line = start.line;
    term.column = start.column;
    if (start.text == "br") {
      Next();
      term.kind = Terminator::Kind::kBr;
      term.true_label = ExpectName("branch target");
    } else if (start.text == "brcond") {
      Next();
      term.kind = Terminator::Kind::kBrCond;
      term.value = Operand::Var(ExpectName("condition variable"));
      SkipComma();
      term.true_label = ExpectName("branch target");
      SkipComma();
      term.false_label = ExpectName("branch target");
    } else if (start.text == "ret") {
      Next();
      term.kind = Terminator::Kind::kRet;
      if (Peek().kind == Token::Kind::kIdent) {
        term.value = Operand::Var(ExpectName("return variable"));
      }
    } else if (start.text == "trap") {
      Next();
      term.kind = Terminator::Kind::kTrap;
    } else {
      return false;
    }
    return true;
  }

  void SkipComma() {
    if (AtSymbol(',')) Next();
  }

  bool AtOperandStart() const {
    const Token &t = Peek();
    return t.kind == Token::Kind::kIdent || t.kind == Token::Kind::kGlobal ||
           t.kind == Token::Kind::kInt;
  }

  // var | @global | int
  Operand ParseOperand() {
    SkipComma();
    const Token &t = Peek();
    switch (t.kind) {
      case Token::Kind::kIdent:
        return Operand::Var(ExpectName("operand"));
      case Token::Kind::kGlobal:
        return Operand::Global(Next().text);
      case Token::Kind::kInt:
        return Operand::Imm(Next().value);
      default:
        Fail(t, "expected operand");
    }
  }

  int64_t ParseImm(const char *what) {
    SkipComma();
    if (Peek().kind != Token::Kind::kInt) Fail(Peek(), std::string("expected ") + what);
    return Next().value;
  }

  void ParseCallTail(Instruction &ins, bool indirect) {
    if (indirect) {
      ins.operands.push_back(Operand::Var(ExpectName("function pointer variable")));
    } else {
      ins.operands.push_back(Operand::Func(ExpectName("callee name")));
    }
    while (AtSymbol(',') || AtOperandStart()) ins.operands.push_back(ParseOperand());
  }

  Instruction ParseInstruction() {
    Instruction ins;
    const Token start = Peek();
    ins.line = start.line;
    ins.column = start.column;
    if (start.kind != Token::Kind::kIdent) Fail(start, "expected instruction");
    // Forms without a result.
    if (start.text == "nop") {
      Next();
      ins.opcode = Opcode::kNop;
      return ins;
    }
    if (start.text == "store") {
      Next();
      ins.opcode = Opcode::kStore;
      ins.operands.push_back(ParseOperand());
      ins.operands.push_back(ParseOperand());
      return ins;
    }
    if (start.text == "astore") {
      Next();
      ins.opcode = Opcode::kAStore;
      for (int i = 0; i < 3; ++i) ins.operands.push_back(ParseOperand());
      return ins;
    }
    if (start.text == "call" || start.text == "call_indirect") {
      Next();
      ins.opcode = start.text == "call" ? Opcode::kCall : Opcode::kCallIndirect;
      ParseCallTail(ins, ins.opcode == Opcode::kCallIndirect);
      return ins;
    }
    ins.result = ExpectName("instruction or result variable");
    ExpectSymbol('=');
    const Token op = Peek();
    if (op.kind != Token::Kind::kIdent) Fail(op, "expected opcode");
    Next();
    if (op.text == "const") {
      ins.opcode = Opcode::kConst;
      ins.operands.push_back(Operand::Imm(ParseImm("integer constant")));
    } else if (op.text == "input") {
      ins.opcode = Opcode::kInput;
      int64_t off = ParseImm("input byte offset");
      if (off < 0) {
        throw ParseError(op.line, op.column, "input offset must be >= 0");
      }
      ins.operands.push_back(Operand::Imm(off));
    } else if (op.text == "binop") {
      ins.opcode = Opcode::kBinop;
      const Token name = Peek();
      if (name.kind != Token::Kind::kIdent || !ParseBinop(name.text, ins.binop)) {
        Fail(name, "expected binary operator (add, sub, mul, div, lt, eq, and, or)");
      }
      Next();
      ins.operands.push_back(ParseOperand());
      ins.operands.push_back(ParseOperand());
    } else if (op.text == "load") {
      ins.opcode = Opcode::kLoad;
      ins.operands.push_back(ParseOperand());
    } else if (op.text == "addr") {
      ins.opcode = Opcode::kAddr;
      if (Peek().kind != Token::Kind::kGlobal) Fail(Peek(), "expected '@global'");
      ins.operands.push_back(Operand::Global(Next().text));
    } else if (op.text == "funcaddr") {
      ins.opcode = Opcode::kFuncAddr;
      ins.operands.push_back(Operand::Func(ExpectName("function name")));
    } else if (op.text == "call" || op.text == "call_indirect") {
      ins.opcode = op.text == "call" ? Opcode::kCall : Opcode::kCallIndirect;
      ParseCallTail(ins, ins.opcode == Opcode::kCallIndirect);
    } else if (op.text == "aload") {
      ins.opcode = Opcode::kALoad;
      ins.operands.push_back(ParseOperand());
      ins.operands.push_back(ParseOperand());
    } else {
      Fail(op, "unknown opcode");
    }
    return ins;
  }

  // --- linking & validation ------------------------------------------------
  [[noreturn]] static void FailAt(int line, int column, const std::string &msg) {
    throw ParseError(line, column, msg);
  }

  void Link() {
    if (program_.functions_.empty()) FailAt(0, 0, "program has no functions");
    if (entry_name_) {
      auto f = program_.find_function(*entry_name_);
      if (!f) {
        FailAt(entry_tok_.line, entry_tok_.column,
               "undefined entry function '" + *entry_name_ + "'");
      }
      program_.entry_function_ = *f;
    }
    const Function &entry_fn = program_.functions_[program_.entry_function_];
    if (!entry_fn.params.empty()) {
      FailAt(0, 0, "entry function '" + entry_fn.name + "' must take no parameters");
    }
    uint32_t offset = 0;
    for (Function &fn : program_.functions_) {
      program_.block_offsets_.push_back(offset);
      offset += static_cast<uint32_t>(fn.blocks.size());
      LinkFunction(fn);
    }
    program_.total_blocks_ = offset;
  }

  void ResolveValue(Function &fn, Operand &op, const Instruction &ins,
                    bool allow_imm) {
    if (op.kind == Operand::Kind::kImm) {
      if (!allow_imm) FailAt(ins.line, ins.column, "operand must not be a literal");
      return;
    }
    if (op.kind != Operand::Kind::kVar) {
      FailAt(ins.line, ins.column, "expected variable or integer operand");
    }
    op.index = Slot(fn, op.name);
  }

  uint32_t Slot(Function &fn, const std::string &var) {
    auto it = std::find(fn.slots.begin(), fn.slots.end(), var);
    if (it != fn.slots.end()) return static_cast<uint32_t>(it - fn.slots.begin());
    fn.slots.push_back(var);
    return static_cast<uint32_t>(fn.slots.size() - 1);
  }

  // cell operand of load/store/aload/astore: @global or pointer variable.
  void ResolveMemory(Function &fn, Operand &op, const Instruction &ins,
                     bool want_array) {
    if (op.kind == Operand::Kind::kVar) {
      op.index = Slot(fn, op.name);
      return;
    }
    if (op.kind != Operand::Kind::kGlobal) {
      FailAt(ins.line, ins.column, "expected '@global' or pointer variable");
    }
    auto g = program_.find_global(op.name);
    if (!g) FailAt(ins.line, ins.column, "undefined global '@" + op.name + "'");
    const GlobalCell &cell = program_.globals_[*g];
    if (cell.is_array != want_array) {
      FailAt(ins.line, ins.column,
             "'@" + op.name + (want_array ? "' is not an array" : "' is an array"));
    }
    op.index = *g;
  }

  void LinkFunction(Function &fn) {
    for (const std::string &p : fn.params) Slot(fn, p);
    for (BasicBlock &bb : fn.blocks) {
      for (Instruction &ins : bb.instructions) LinkInstruction(fn, ins);
      LinkTerminator(fn, bb);
    }
    for (uint32_t b = 0; b < fn.blocks.size(); ++b) {
      for (uint32_t s : fn.blocks[b].successors) fn.blocks[s].predecessors.push_back(b);
    }
    CheckReachable(fn);
    CheckDefinedBeforeUse(fn);
  }

  void LinkInstruction(Function &fn, Instruction &ins) {
    auto &ops = ins.operands;
    switch (ins.opcode) {
      case Opcode::kConst:
      case Opcode::kInput:
      case Opcode::kNop:
        break;
      case Opcode::kBinop:
        ResolveValue(fn, ops[0], ins, true);
        ResolveValue(fn, ops[1], ins, true);
        break;
      case Opcode::kLoad:
        ResolveMemory(fn, ops[0], ins, false);
        break;
      case Opcode::kStore:
        ResolveMemory(fn, ops[0], ins, false);
        ResolveValue(fn, ops[1], ins, true);
        break;
      case Opcode::kALoad:
        ResolveMemory(fn, ops[0], ins, true);
        ResolveValue(fn, ops[1], ins, true);
        break;
      case Opcode::kAStore:
        ResolveMemory(fn, ops[0], ins, true);
        ResolveValue(fn, ops[1], ins, true);
        ResolveValue(fn, ops[2], ins, true);
        break;
      case Opcode::kAddr: {
        auto g = program_.find_global(ops[0].name);
        if (!g) FailAt(ins.line, ins.column, "undefined global '@" + ops[0].name + "'");
        ops[0].index = *g;
        break;
      }
      case Opcode::kFuncAddr: {
        auto f = program_.find_function(ops[0].name);
        if (!f) FailAt(ins.line, ins.column, "undefined function '" + ops[0].name + "'");
        ops[0].index = *f;
        break;
      }
      case Opcode::kCall: {
        auto f = program_.find_function(ops[0].name);
        if (!f) FailAt(ins.line, ins.column, "undefined function '" + ops[0].name + "'");
        ops[0].index = *f;
        size_t want = program_.functions_[*f].params.size();
        if (ops.size() - 1 != want) {
          FailAt(ins.line, ins.column,
                 "call to '" + ops[0].name + "' passes " +
                     std::to_string(ops.size() - 1) + " arguments, expected " +
                     std::to_string(want));
        }
        for (size_t i = 1; i < ops.size(); ++i) ResolveValue(fn, ops[i], ins, true);
        break;
      }
      case Opcode::kCallIndirect:
        ops[0].index = Slot(fn, ops[0].name);
        for (size_t i = 1; i < ops.size(); ++i) ResolveValue(fn, ops[i], ins, true);
        break;
    }
    if (ins.result) ins.result_slot = Slot(fn, *ins.result);
  }

  void LinkTerminator(Function &fn, BasicBlock &bb) {
    Terminator &t = bb.terminator;
    auto resolve = [&](const std::string &label) {
      auto b = fn.find_block(label);
      if (!b) {
        FailAt(t.line, t.column,
               "undefined block '" + label + "' in function '" + fn.name + "'");
      }
      return *b;
    };
    if (t.value) t.value->index = Slot(fn, t.value->name);
    switch (t.kind) {
      case Terminator::Kind::kBr:
        t.true_block = resolve(t.true_label);
        bb.successors = {t.true_block};
        break;
      case Terminator::Kind::kBrCond:
        t.true_block = resolve(t.true_label);
        t.false_block = resolve(t.false_label);
        bb.successors = {t.true_block};
        if (t.false_block != t.true_block) bb.successors.push_back(t.false_block);
        break;
      case Terminator::Kind::kRet:
      case Terminator::Kind::kTrap:
        break;
    }
  }

  void CheckReachable(const Function &fn) {
    std::vector<char> seen(fn.blocks.size(), 0);
    std::deque<uint32_t> work{fn.entry_block};
    seen[fn.entry_block] = 1;
    while (!work.empty()) {
      uint32_t b = work.front();
      work.pop_front();
      for (uint32_t s : fn.blocks[b].successors) {
        if (!seen[s]) {
          seen[s] = 1;
          work.push_back(s);
        }
      }
    }
    for (uint32_t b = 0; b < fn.blocks.size(); ++b) {
      if (!seen[b]) {
        FailAt(fn.blocks[b].terminator.line, 0,
               "block '" + fn.blocks[b].label + "' in function '" + fn.name +
                   "' is unreachable from the entry block");
      }
    }
  }

  // Every variable read must be defined on every path from the entry block.
  void CheckDefinedBeforeUse(const Function &fn) {
    const size_t nslots = fn.slots.size();
    const size_t nblocks = fn.blocks.size();
    using Bits = std::vector<char>;
    std::vector<Bits> out(nblocks, Bits(nslots, 1));
    std::vector<Bits> in(nblocks, Bits(nslots, 1));
    Bits params(nslots, 0);
    for (size_t i = 0; i < fn.params.size(); ++i) params[i] = 1;

    bool changed = true;
    while (changed) {
      changed = false;
      for (uint32_t b = 0; b < nblocks; ++b) {
        const BasicBlock &bb = fn.blocks[b];
        Bits cur(nslots, 1);
        if (b == fn.entry_block) {
          // The empty path into the entry block defines only parameters.
          cur = params;
        } else {
          for (uint32_t p : bb.predecessors) {
            for (size_t s = 0; s < nslots; ++s) cur[s] &= out[p][s];
          }
        }
        in[b] = cur;
        for (const Instruction &ins : bb.instructions) {
          if (ins.result) cur[ins.result_slot] = 1;
        }
        if (cur != out[b]) {
          out[b] = std::move(cur);
          changed = true;
        }
      }
    }
    for (uint32_t b = 0; b < nblocks; ++b) {
      const BasicBlock &bb = fn.blocks[b];
      Bits cur = in[b];
      auto check = [&](const Operand &op, int line, int column) {
        if (op.kind != Operand::Kind::kVar) return;
        if (!cur[op.index]) {
          FailAt(line, column,
                 "variable '" + op.name + "' in function '" + fn.name +
                     "' may be used before it is defined");
        }
      };
      for (const Instruction &ins : bb.instructions) {
        for (const Operand &op : ins.operands) check(op, ins.line, ins.column);
        if (ins.result) cur[ins.result_slot] = 1;
      }
      if (bb.terminator.value) {
        check(*bb.terminator.value, bb.terminator.line, bb.terminator.column);
      }
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  Program program_;
  std::optional<std::string> entry_name_;
  Token entry_tok_;
};

Program parse_program(std::string_view text) {
  Lexer lexer(text);
  Linker linker(lexer.Run());
  return linker.Run();
}

}  // namespace hdfuzz::ir
