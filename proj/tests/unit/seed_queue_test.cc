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

#include "hdfuzz/seed_queue.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace hdfuzz::fuzzer {
namespace {

Seed WithDistance(uint64_t id, std::optional<double> d) {
  Seed s;
  s.id = id;
  s.distance = d;
  return s;
}

std::vector<uint64_t> Ids(const SeedQueue &q) {
  std::vector<uint64_t> out;
  for (const Seed &s : q) out.push_back(s.id);
  return out;
}

TEST(SeedQueueTest, InsertsInDistanceOrder) {
  SeedQueue q;
  q.insert(WithDistance(0, 2));
  q.insert(WithDistance(1, 7));
  q.insert(WithDistance(2, 5));
  EXPECT_EQ(Ids(q), (std::vector<uint64_t>{0, 2, 1}));
  EXPECT_EQ(*q.min_distance(), 2.0);
}

TEST(SeedQueueTest, AbsentDistancesGoLastInArrivalOrder) {
  SeedQueue q;
  q.insert(WithDistance(0, std::nullopt));
  q.insert(WithDistance(1, 9));
  q.insert(WithDistance(2, std::nullopt));
  q.insert(WithDistance(3, 1));
  EXPECT_EQ(Ids(q), (std::vector<uint64_t>{3, 1, 0, 2}));
}

TEST(SeedQueueTest, TiesAreFifo) {
  SeedQueue q;
  for (uint64_t i = 0; i < 5; ++i) q.insert(WithDistance(i, 3));
  EXPECT_EQ(Ids(q), (std::vector<uint64_t>{0, 1, 2, 3, 4}));
}

TEST(SeedQueueTest, CursorCyclesAndSurvivesInsertion) {
  SeedQueue q;
  q.insert(WithDistance(0, 1));
  q.insert(WithDistance(1, 5));
  EXPECT_EQ(q.next().id, 0u);
  q.insert(WithDistance(2, 0));  // lands before the cursor
  EXPECT_EQ(q.next().id, 1u);
  EXPECT_EQ(q.next().id, 2u);
  EXPECT_EQ(q.next().id, 0u);
}

TEST(SeedQueueTest, TracksMaximumVfs) {
  SeedQueue q;
  EXPECT_FALSE(q.max_vfs().has_value());
  Seed a = WithDistance(0, 1);
  a.vfs = 2.5;
  q.insert(a);
  Seed b = WithDistance(1, 1);
  b.vfs = 1.0;
  q.insert(b);
  EXPECT_EQ(*q.max_vfs(), 2.5);
}

TEST(SeedQueueProperty, RandomInsertionsEqualStableSort) {
  for (uint64_t trial = 0; trial < 5; ++trial) {
    std::mt19937_64 rng(trial);
    SeedQueue q;
    std::vector<Seed> all;
    for (uint64_t i = 0; i < 1000; ++i) {
      std::optional<double> d;
      if (rng() % 5) d = static_cast<double>(rng() % 60);
      Seed s = WithDistance(i, d);
      all.push_back(s);
      q.insert(s);
      ASSERT_TRUE(q.check_invariants()) << "after insertion " << i;
    }
    std::stable_sort(all.begin(), all.end(), [](const Seed &a, const Seed &b) {
      if (a.distance.has_value() != b.distance.has_value()) return a.distance.has_value();
      return a.distance && *a.distance < *b.distance;
    });
    std::vector<uint64_t> want;
    for (const Seed &s : all) want.push_back(s.id);
    ASSERT_EQ(Ids(q), want);
    std::vector<size_t> skips = q.skip_positions();
    ASSERT_EQ(skips.size(), 10u);
    for (size_t k = 0; k < skips.size(); ++k) EXPECT_EQ(skips[k], k * 100);
  }
}

}  // namespace
}  // namespace hdfuzz::fuzzer
