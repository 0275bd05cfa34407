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

#include "hdfuzz/distance.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hdfuzz/pipeline.h"
#include "oracles.h"
#include "random_program.h"

namespace hdfuzz::distance {
namespace {

class CallChainDistances : public ::testing::Test {
 protected:
  void SetUp() override {
    program_ = ir::parse_program(testing::read_fixture("callchain.tir"));
    cg_ = analysis::build_call_graph(program_, analysis::points_to(program_));
    target_ = ir::resolve_target(program_, "C:C4");
  }
  uint32_t At(const BlockDistances &d, const std::string &fn, const std::string &bb) {
    const uint32_t f = *program_.find_function(fn);
    return d.at({f, *program_.function(f).find_block(bb)});
  }
  ir::Program program_;
  analysis::CallGraph cg_;
  ir::TargetSpec target_;
};

TEST_F(CallChainDistances, CallSiteDepths) {
  EXPECT_EQ(call_site_depths(program_.function(0)).depth, (std::map<uint32_t, uint32_t>{{2, 1}}));
  EXPECT_EQ(call_site_depths(program_.function(1)).depth, (std::map<uint32_t, uint32_t>{{2, 2}}));
  // C4 acts as the pseudo call site of the target function.
  EXPECT_EQ(call_site_depths(program_.function(2), 3).depth,
            (std::map<uint32_t, uint32_t>{{3, 2}}));
}

TEST_F(CallChainDistances, BlockDistances) {
  TargetDistances d = backward_step_distances(program_, cg_, target_);
  EXPECT_EQ(At(d.blocks, "C", "C4"), 0u);
  EXPECT_EQ(At(d.blocks, "C", "C2"), 1u);
  EXPECT_EQ(At(d.blocks, "C", "C3"), 1u);
  EXPECT_EQ(At(d.blocks, "C", "C1"), 2u);
  EXPECT_EQ(At(d.blocks, "B", "B3"), 3u);
  EXPECT_EQ(At(d.blocks, "B", "B2"), 4u);
  EXPECT_EQ(At(d.blocks, "B", "B1"), 5u);
  EXPECT_EQ(At(d.blocks, "A", "A3"), 6u);
  EXPECT_EQ(At(d.blocks, "A", "A1"), 7u);
  EXPECT_FALSE(d.blocks.count({0, 1}));  // A2 returns without calling B
  EXPECT_FALSE(d.blocks.count({2, 4}));  // C5
  EXPECT_EQ(d.entries, (std::map<uint32_t, uint32_t>{{0, 7}, {1, 5}, {2, 2}}));
}

TEST_F(CallChainDistances, FunctionLevelApproximation) {
  BlockDistances d = function_level_distances(program_, cg_, target_);
  EXPECT_EQ(At(d, "C", "C5"), 0u);
  EXPECT_EQ(At(d, "B", "B4"), 10u);
  EXPECT_EQ(At(d, "A", "A2"), 20u);
}

TEST(DistanceTest, LoopsAndRecursionConverge) {
  ir::Program p = ir::parse_program(
      "func main() { block a { call r 3; br a2 } block a2 { ret } }\n"
      "func r(n) {\n"
      "  block r0 { c = binop lt n 1; brcond c done rec }\n"
      "  block rec { m = binop sub n 1; call r m; br hop }\n"
      "  block hop { br r0 }\n"
      "  block done { trap }\n"
      "}\n");
  auto cg = analysis::build_call_graph(p, analysis::points_to(p));
  TargetDistances d = backward_step_distances(p, cg, ir::resolve_target(p, "r:done"));
  EXPECT_EQ(d.blocks.at({1, 0}), 1u);
  EXPECT_EQ(d.blocks.at({1, 1}), 2u);  // via the recursive call: entry is 1 away
  EXPECT_EQ(d.blocks.at({1, 2}), 2u);
  EXPECT_EQ(d.blocks.at({0, 0}), 2u);
  EXPECT_FALSE(d.blocks.count({0, 1}));
}

TEST(DistanceProperty, MatchesExplicitIcfgShortestPaths) {
  std::mt19937_64 rng(1234);
  int programs = 0;
  for (int i = 0; i < 250; ++i) {
    ir::Program p = ir::parse_program(testing::random_program(rng));
    auto cg = analysis::build_call_graph(p, analysis::points_to(p));
    const std::vector<ir::BlockId> all = p.all_blocks();
    for (int k = 0; k < 3; ++k) {
      const ir::BlockId target = all[rng() % all.size()];
      TargetDistances d =
          backward_step_distances(p, cg, ir::resolve_target(p, p.block_name(target)));
      auto oracle = testing::icfg_distances(p, cg, target);
      ASSERT_EQ(d.blocks, (BlockDistances(oracle.begin(), oracle.end())))
          << ir::print_program(p) << "target " << p.block_name(target);
    }
    ++programs;
  }
  EXPECT_GE(programs, 200);
}

TEST(DistanceProperty, WorklistOrderDoesNotMatter) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    ir::Program p = ir::parse_program(testing::random_program(rng));
    auto cg = analysis::build_call_graph(p, analysis::points_to(p));
    const std::vector<ir::BlockId> all = p.all_blocks();
    const ir::TargetSpec t = ir::resolve_target(p, p.block_name(all[rng() % all.size()]));
    const TargetDistances base = backward_step_distances(p, cg, t);
    for (uint64_t s = 1; s <= 5; ++s) {
      TargetDistances shuffled = backward_step_distances(p, cg, t, s * 7919);
      ASSERT_EQ(shuffled.blocks, base.blocks);
      ASSERT_EQ(shuffled.entries, base.entries);
    }
  }
}

TEST(CombineTest, HarmonicMean) {
  const ir::BlockId b{0, 0};
  EXPECT_DOUBLE_EQ(combine_targets({{{b, 2}}, {{b, 2}}}).at(b), 1.0);
  EXPECT_DOUBLE_EQ(combine_targets({{{b, 3}}, {{b, 6}}}).at(b), 2.0);
  EXPECT_EQ(combine_targets({{{b, 0}}, {{b, 6}}}).at(b), 0.0);
  // A target with no distance for the block contributes nothing.
  EXPECT_DOUBLE_EQ(combine_targets({{{b, 4}}, {}}).at(b), 4.0);
  EXPECT_TRUE(combine_targets({{}, {}}).empty());
}

TEST(CombineProperty, RandomTuplesMatchClosedForm) {
  std::mt19937_64 rng(3);
  const ir::BlockId b{0, 0};
  for (int i = 0; i < 1000; ++i) {
    const size_t n = 1 + rng() % 6;
    std::vector<BlockDistances> per;
    double inv = 0;
    bool zero = false;
    for (size_t k = 0; k < n; ++k) {
      const uint32_t d = static_cast<uint32_t>(rng() % 50);
      per.push_back({{b, d}});
      zero = zero || d == 0;
      if (d) inv += 1.0 / d;
    }
    const double got = combine_targets(per).at(b);
    if (zero) {
      ASSERT_EQ(got, 0.0);
    } else {
      ASSERT_LE(std::fabs(got - 1.0 / inv) / (1.0 / inv), 1e-12);
    }
  }
}

}  // namespace
}  // namespace hdfuzz::distance
