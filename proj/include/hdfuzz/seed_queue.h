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

// Circular seed queue kept sorted by seed distance.
//
// Seeds are ordered ascending by distance, seeds without a distance last, and
// FIFO among equal keys. A skip index holds an iterator to every 100th
// element so insertion does a binary search over the index followed by a
// short linear scan. The scheduling cursor cycles through the list and is
// stable across insertions.

#ifndef HDFUZZ_SEED_QUEUE_H_
#define HDFUZZ_SEED_QUEUE_H_

#include <cstddef>
#include <cstdint>
#include <list>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hdfuzz::fuzzer {

struct Seed {
  uint64_t id = 0;
  std::string bytes;
  std::optional<double> distance;
  double vfs = 0.0;
  uint32_t coverage_count = 0;          // distinct coverage blocks hit
  std::map<uint32_t, uint8_t> bitmap;   // bucketed coverage signature
  uint64_t exec_steps = 0;
  uint64_t discovery_time = 0;          // executions at discovery
  double discovery_seconds = 0.0;
  uint64_t times_scheduled = 0;
};

class SeedQueue {
 public:
  static constexpr size_t kSkipStride = 100;

  using iterator = std::list<Seed>::iterator;
  using const_iterator = std::list<Seed>::const_iterator;

  // Inserts after every seed whose key is <= the new seed's key.
  iterator insert(Seed seed);

  // Seed under the cursor; advances the cursor, wrapping at the end.
  // Requires a non-empty queue.
  Seed &next();

  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }
  const std::list<Seed> &items() const { return items_; }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }

  std::optional<double> min_distance() const { return min_distance_; }
  std::optional<double> max_vfs() const { return max_vfs_; }

  // Positions the skip index references (for checks).
  std::vector<size_t> skip_positions() const;
  // True when the order invariant and the skip index are consistent.
  bool check_invariants() const;

 private:
  static bool key_less(const Seed &a, const Seed &b);

  std::list<Seed> items_;
  std::vector<iterator> skip_;
  iterator cursor_ = items_.end();
  std::optional<double> min_distance_;
  std::optional<double> max_vfs_;
};

}  // namespace hdfuzz::fuzzer

#endif  // HDFUZZ_SEED_QUEUE_H_
