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

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"
#include "random_program.h"

namespace hdfuzz::ir {
namespace {

std::string ErrorOf(const std::string &text) {
  try {
    parse_program(text);
  } catch (const ParseError &e) {
    return e.message();
  }
  return "";
}

TEST(ParseTest, MinimalTrapProgram) {
  Program p = parse_program("func main() { block b { trap } }");
  ASSERT_EQ(p.functions().size(), 1u);
  EXPECT_EQ(p.block_count(), 1u);
  EXPECT_EQ(p.function(0).entry().terminator.kind, Terminator::Kind::kTrap);
  EXPECT_TRUE(p.function(0).entry().successors.empty());
}

TEST(ParseTest, SemicolonsAndCommentsSeparateStatements) {
  Program p = parse_program(
      "# leading comment\n"
      "global @g = 7\n"
      "func main() { block a { x = input 0; store @g x; br b } block b { ret } }\n");
  EXPECT_EQ(p.function(0).blocks[0].instructions.size(), 2u);
  EXPECT_EQ(p.globals()[0].init, 7);
  EXPECT_EQ(p.function(0).blocks[0].successors, std::vector<uint32_t>{1});
  EXPECT_EQ(p.function(0).blocks[1].predecessors, std::vector<uint32_t>{0});
}

TEST(ParseTest, EntryDirectivesSelectFunctionAndBlock) {
  Program p = parse_program(
      "entry second\n"
      "func first() { block a { ret } }\n"
      "func second(entry=z) { block y { ret } block z { br y } }\n");
  EXPECT_EQ(p.entry_function(), 1u);
  EXPECT_EQ(p.function(1).entry_label(), "z");
}

TEST(ParseTest, CallChainFixtureParses) {
  Program p = parse_program(testing::read_fixture("callchain.tir"));
  EXPECT_EQ(p.functions().size(), 3u);
  EXPECT_EQ(p.block_count(), 14u);
  EXPECT_EQ(p.block_name({2, 3}), "C:C4");
  EXPECT_EQ(p.instr_name({2, 3, 0}), "C:C4:0");
}

TEST(ParseTest, UndefinedBlockIsReported) {
  EXPECT_EQ(ErrorOf("func main() { block a { br missing_block } }"),
            "undefined block 'missing_block' in function 'main'");
}

TEST(ParseTest, ValidationErrors) {
  EXPECT_NE(ErrorOf("func main() { block a { ret } } func main() { block a { ret } }")
                .find("duplicate function"),
            std::string::npos);
  EXPECT_NE(ErrorOf("func main() { block a { ret } block a { ret } }").find("duplicate block"),
            std::string::npos);
  EXPECT_NE(ErrorOf("func main() { block a { call f 1 2; ret } } func f(x) { block b { ret } }")
                .find("passes 2 arguments, expected 1"),
            std::string::npos);
  EXPECT_NE(ErrorOf("global @a[4]\nfunc main() { block a { x = load @a; ret } }")
                .find("is an array"),
            std::string::npos);
  EXPECT_NE(ErrorOf("global @s\nfunc main() { block a { x = aload @s 0; ret } }")
                .find("is not an array"),
            std::string::npos);
  EXPECT_NE(ErrorOf("func main() { block a { ret } block b { ret } }").find("unreachable"),
            std::string::npos);
  EXPECT_NE(ErrorOf("func main() { block a { ret; x = const 1 } }")
                .find("instruction after terminator"),
            std::string::npos);
  EXPECT_NE(ErrorOf("func main() { block a { x = const 1 } }").find("no terminator"),
            std::string::npos);
  EXPECT_NE(ErrorOf("func main(p) { block a { ret } }").find("must take no parameters"),
            std::string::npos);
  EXPECT_NE(ErrorOf("func main() { block a { x = frob 1; ret } }").find("unknown opcode"),
            std::string::npos);
}

TEST(ParseTest, UseBeforeDefinitionOnSomePath) {
  const std::string text =
      "func main() {\n"
      "  block a { c = input 0; brcond c b d }\n"
      "  block b { x = const 1; br d }\n"
      "  block d { ret x }\n"
      "}\n";
  EXPECT_NE(ErrorOf(text).find("'x' in function 'main' may be used before it is defined"),
            std::string::npos);
}

TEST(ParseTest, ErrorPositionsAreOneBased) {
  try {
    parse_program("func main() {\n  block a {\n    br nowhere\n  }\n}\n");
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GT(e.column(), 0);
  }
}

TEST(ParseTest, TrailingContentIsRejected) {
  EXPECT_FALSE(ErrorOf("func main() { block a { ret } } }").empty());
}

TEST(PrintTest, RoundTripIsAFixedPoint) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const std::string text = testing::random_program(rng);
    Program p = parse_program(text);
    const std::string once = print_program(p);
    const std::string twice = print_program(parse_program(once));
    ASSERT_EQ(once, twice) << text;
  }
}

TEST(TargetTest, DefaultIndexIsLastNonTerminator) {
  Program p = parse_program(testing::read_fixture("callchain.tir"));
  TargetSpec t = resolve_target(p, "C:C4");
  EXPECT_EQ(t.location, (InstrId{2, 3, 0}));
  ASSERT_EQ(t.data.size(), 2u);
  EXPECT_EQ(t.data[0].kind, Datum::Kind::kVar);
  EXPECT_EQ(t.data[0].name, "u");
  EXPECT_EQ(t.data[1].kind, Datum::Kind::kObject);
  EXPECT_EQ(t.data[1].name, "buf");
}

TEST(TargetTest, TerminatorTargetsHaveNoData) {
  Program p = parse_program(testing::read_fixture("callchain.tir"));
  TargetSpec t = resolve_target(p, "C:C2");
  EXPECT_EQ(t.location.index, 0u);
  EXPECT_TRUE(t.data.empty());
  TargetSpec term = resolve_target(p, "C:C4:1");
  EXPECT_TRUE(term.data.empty());
}

TEST(TargetTest, AddrOperandIsNotData) {
  Program p = parse_program(
      "global @g\nfunc main() { block a { q = addr @g; x = load q; ret } }");
  EXPECT_TRUE(resolve_target(p, "main:a:0").data.empty());
  ASSERT_EQ(resolve_target(p, "main:a:1").data.size(), 1u);
}

TEST(TargetTest, BadSpecsThrow) {
  Program p = parse_program(testing::read_fixture("callchain.tir"));
  EXPECT_THROW(resolve_target(p, "Z:C4"), TargetError);
  EXPECT_THROW(resolve_target(p, "C:Q"), TargetError);
  EXPECT_THROW(resolve_target(p, "C:C4:9"), TargetError);
  EXPECT_THROW(resolve_target(p, "C"), TargetError);
}

}  // namespace
}  // namespace hdfuzz::ir
