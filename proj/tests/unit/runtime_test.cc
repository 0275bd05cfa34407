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

#include <gtest/gtest.h>

#include <random>

#include "hdfuzz/pipeline.h"
#include "oracles.h"
#include "random_program.h"

namespace hdfuzz::runtime {
namespace {

using Kind = ExecOutcome::Kind;

InstrumentationPlan Empty() { return build_plan({}, {}, {}, {}); }

ExecResult RunText(const std::string &text, const std::string &input,
               uint64_t step_limit = kDefaultStepLimit) {
  ir::Program p = ir::parse_program(text);
  return execute(p, input, full_plan(p, {}, {}), step_limit);
}

TEST(ExecuteTest, TrapCrashesAtTheTerminator) {
  ir::Program p = ir::parse_program(testing::read_fixture("minimal.tir"));
  for (const std::string input : {"", "a", "zzzz"}) {
    ExecResult r = execute(p, input, Empty());
    EXPECT_EQ(r.outcome.kind, Kind::kCrash);
    EXPECT_EQ(r.outcome.crash, CrashKind::kTrap);
    EXPECT_EQ(*r.outcome.location, (ir::InstrId{0, 0, 0}));
    EXPECT_EQ(crash_key(p, r.outcome), "main:start:0:trap");
  }
}

TEST(ExecuteTest, ArithmeticWrapsAndCompares) {
  const std::string text =
      "global @out[4]\n"
      "func main() { block a {\n"
      "  big = const 9223372036854775807\n  w = binop add big 1\n  neg = binop lt w 0\n"
      "  q = binop div -7 2\n  t = binop eq q -3\n  both = binop and neg t\n"
      "  brcond both ok bad\n"
      "} block ok { ret } block bad { trap } }\n";
  EXPECT_EQ(RunText(text, "").outcome.kind, Kind::kOk);
}

TEST(ExecuteTest, DivisionByZero) {
  ExecResult r = RunText("func main() { block a { x = input 0; y = binop div 10 x; ret } }",
                     std::string(1, '\0'));
  EXPECT_EQ(r.outcome.crash, CrashKind::kDivByZero);
  EXPECT_EQ(*r.outcome.location, (ir::InstrId{0, 0, 1}));
  EXPECT_EQ(RunText("func main() { block a { x = input 0; y = binop div 10 x; ret } }", "\x02")
                .outcome.kind,
            Kind::kOk);
}

TEST(ExecuteTest, ArrayBounds) {
  const std::string text =
      "global @arr[4]\n"
      "func main() { block a { i = input 0; astore @arr i 1; v = aload @arr i; ret } }";
  EXPECT_EQ(RunText(text, "\x03").outcome.kind, Kind::kOk);
  ExecResult r = RunText(text, "\x04");
  EXPECT_EQ(r.outcome.crash, CrashKind::kArrayBounds);
  EXPECT_EQ(r.outcome.location->index, 1u);
}

TEST(ExecuteTest, InputExhaustedIsNotACrash) {
  ExecResult r = RunText("func main() { block a { x = input 2; ret } }", "ab");
  EXPECT_EQ(r.outcome.kind, Kind::kInputExhausted);
  EXPECT_FALSE(r.outcome.location.has_value());
}

TEST(ExecuteTest, StepLimitIsNotACrash) {
  ExecResult r = RunText("func main() { block a { br a } }", "", 50);
  EXPECT_EQ(r.outcome.kind, Kind::kStepLimit);
  EXPECT_EQ(r.feedback.exec_steps, 50u);
}

TEST(ExecuteTest, MemoryCallsAndPointers) {
  const std::string text =
      "global @g = 5\nglobal @fp\n"
      "func main() { block a {\n"
      "  p = addr @g\n  v = call bump p\n  f = funcaddr check\n  store @fp f\n"
      "  h = load @fp\n  call_indirect h v\n  ret\n"
      "} }\n"
      "func bump(q) { block b { x = load q; y = binop add x 1; store q y; ret y } }\n"
      "func check(v) { block c { e = binop eq v 6; brcond e bad done } block done { ret }\n"
      "  block bad { trap } }\n";
  ExecResult r = RunText(text, "");
  EXPECT_EQ(r.outcome.crash, CrashKind::kTrap);
  EXPECT_EQ(r.outcome.location->function, 2u);
}

TEST(ExecuteTest, BadPointers) {
  EXPECT_EQ(RunText("global @g\nfunc main() { block a { x = const 3; y = load x; ret } }", "")
                .outcome.crash,
            CrashKind::kBadPointer);
  EXPECT_EQ(RunText("func main() { block a { f = funcaddr two; call_indirect f 1; ret } }\n"
                "func two(a, b) { block b { ret } }",
                "")
                .outcome.crash,
            CrashKind::kBadPointer);
}

TEST(ExecuteTest, FreshGlobalsEveryExecution) {
  ir::Program p = ir::parse_program(
      "global @n\nfunc main() { block a { v = load @n; c = binop eq v 0;"
      " w = binop add v 1; store @n w; brcond c ok bad } block ok { ret } block bad { trap } }");
  const InstrumentationPlan plan = Empty();
  for (int i = 0; i < 3; ++i) EXPECT_EQ(execute(p, "", plan).outcome.kind, Kind::kOk);
}

TEST(FeedbackTest, SelectiveCoverageBucketsHitCounts) {
  ir::Program p = ir::parse_program(
      "global @n\nfunc main() {\n"
      "  block b1 { v = load @n; w = binop add v 1; store @n w; c = binop lt w 2; brcond c b2 b3 }\n"
      "  block b2 { br b1 }\n  block b3 { ret }\n}\n");
  InstrumentationPlan plan = build_plan({{0, 0}}, {}, {}, {});
  ExecResult r = execute(p, "", plan, kDefaultStepLimit, true);
  EXPECT_EQ(r.feedback.trace,
            (std::vector<ir::BlockId>{{0, 0}, {0, 1}, {0, 0}, {0, 2}}));
  EXPECT_EQ(r.feedback.block_hits, (std::map<ir::BlockId, uint32_t>{{{0, 0}, 2}}));
  EXPECT_EQ(r.feedback.bitmap,
            (std::map<uint32_t, uint8_t>{{bitmap_index({0, 0}, plan.bitmap_size), 2}}));
}

TEST(FeedbackTest, VfsAccumulatesPerExecution) {
  ir::Program p = ir::parse_program(testing::read_fixture("vfs_sum.tir"));
  const uint32_t f = *p.find_function("f");
  InstrumentationPlan plan = build_plan({}, {}, {{{f, 0}, 3.0}, {{0, 1}, 1.5}}, {});
  EXPECT_DOUBLE_EQ(execute(p, "", plan).feedback.vfs_sum, 7.5);
}

TEST(FeedbackTest, DistanceMeanUsesDistinctBoundaryBlocks) {
  ir::Program p = ir::parse_program(
      "global @n\nfunc main() {\n"
      "  block b1 { v = load @n; w = binop add v 1; store @n w; c = binop lt w 3; brcond c b2 b3 }\n"
      "  block b2 { br b1 }\n  block b3 { ret }\n}\n");
  InstrumentationPlan plan =
      build_plan({}, {{0, 0}, {0, 2}}, {}, {{{0, 0}, 2.0}, {{0, 2}, 4.0}});
  ExecResult r = execute(p, "", plan);
  EXPECT_EQ(r.feedback.distance_count, 2u);
  EXPECT_DOUBLE_EQ(r.feedback.distance_sum, 6.0);
}

TEST(PlanTest, BuildPlanInvariants) {
  InstrumentationPlan plan = build_plan({{0, 0}}, {{0, 0}, {0, 1}}, {}, {{{0, 0}, 1.0}});
  EXPECT_EQ(plan.boundary_blocks.size(), 1u);
  ASSERT_EQ(plan.diagnostics.size(), 1u);
  EXPECT_NE(plan.diagnostics[0].find("no distance"), std::string::npos);
  for (const auto &[b, d] : plan.boundary_blocks) EXPECT_TRUE(plan.coverage_blocks.count(b));
  EXPECT_THROW(build_plan({}, {}, {}, {}, 1000), std::invalid_argument);
  EXPECT_THROW(full_plan(ir::parse_program("func m() { block a { ret } }"), {}, {}, 0),
               std::invalid_argument);
}

TEST(PlanTest, FullPlanCoversEveryBlock) {
  ir::Program p = ir::parse_program(testing::read_fixture("callchain.tir"));
  InstrumentationPlan plan = full_plan(p, {}, {{{0, 0}, 7.0}});
  EXPECT_EQ(plan.coverage_blocks.size(), p.block_count());
  EXPECT_EQ(plan.boundary_blocks.size(), 1u);
  EXPECT_TRUE(plan.vfb_blocks.empty());
}

TEST(BucketTest, AflClasses) {
  const std::vector<std::pair<uint32_t, uint8_t>> cases = {
      {0, 0}, {1, 1}, {2, 2}, {3, 4}, {4, 8}, {7, 8}, {8, 16}, {15, 16},
      {16, 32}, {31, 32}, {32, 64}, {127, 64}, {128, 128}, {100000, 128}};
  for (auto [hits, bucket] : cases) EXPECT_EQ(bucketize(hits), bucket) << hits;
}

struct RandomCase {
  AnalysisBundle bundle;
  std::string input;
};

std::vector<RandomCase> RandomCases(uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<RandomCase> out;
  while (static_cast<int>(out.size()) < count) {
    auto p = std::make_shared<const ir::Program>(ir::parse_program(testing::random_program(rng)));
    const std::vector<ir::BlockId> all = p->all_blocks();
    AnalysisBundle b = analyze(p, std::vector<std::string>{p->block_name(all[rng() % all.size()])});
    std::string input(1 + rng() % 10, '\0');
    for (char &c : input) c = static_cast<char>(rng());
    out.push_back({std::move(b), input});
  }
  return out;
}

TEST(RuntimeProperty, SelectiveFeedbackIsAProjection) {
  for (const RandomCase &c : RandomCases(31, 60)) {
    const ir::Program &p = *c.bundle.program;
    PlanOptions sel;
    PlanOptions full;
    full.use_selective = false;
    const InstrumentationPlan sp = make_plan(c.bundle, sel);
    const InstrumentationPlan fp = make_plan(c.bundle, full);
    const ExecResult s = execute(p, c.input, sp, 5000);
    const ExecResult f = execute(p, c.input, fp, 5000);
    ASSERT_EQ(s.outcome, f.outcome);
    ASSERT_EQ(s.feedback, testing::project_feedback(f.feedback, sp)) << ir::print_program(p);
  }
}

TEST(RuntimeProperty, OutcomeDoesNotDependOnThePlan) {
  for (const RandomCase &c : RandomCases(32, 40)) {
    const ir::Program &p = *c.bundle.program;
    const ExecOutcome base = execute(p, c.input, Empty(), 5000).outcome;
    for (bool sel : {true, false}) {
      for (bool dist : {true, false}) {
        PlanOptions o;
        o.use_selective = sel;
        o.use_distance = dist;
        ASSERT_EQ(execute(p, c.input, make_plan(c.bundle, o), 5000).outcome, base);
      }
    }
  }
}

TEST(RuntimeProperty, RepeatedExecutionsAreIdentical) {
  for (const RandomCase &c : RandomCases(33, 10)) {
    const InstrumentationPlan plan = make_plan(c.bundle, {});
    const ExecResult first = execute(*c.bundle.program, c.input, plan, 5000, true);
    for (int i = 0; i < 100; ++i) {
      const ExecResult again = execute(*c.bundle.program, c.input, plan, 5000, true);
      ASSERT_EQ(again.outcome, first.outcome);
      ASSERT_EQ(again.feedback, first.feedback);
    }
  }
}

}  // namespace
}  // namespace hdfuzz::runtime
