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

#include <algorithm>
#include <iterator>

namespace hdfuzz::fuzzer {

bool SeedQueue::key_less(const Seed &a, const Seed &b) {
  if (a.distance.has_value() != b.distance.has_value()) return a.distance.has_value();
  if (!a.distance) return false;
  return *a.distance < *b.distance;
}

SeedQueue::iterator SeedQueue::insert(Seed seed) {
  if (seed.distance && (!min_distance_ || *seed.distance < *min_distance_)) {
    min_distance_ = seed.distance;
  }
  if (!max_vfs_ || seed.vfs > *max_vfs_) max_vfs_ = seed.vfs;

  // Last skip entry whose key is <= the new key; the insertion point lies
  // strictly after it.
  auto after = std::upper_bound(skip_.begin(), skip_.end(), seed,
                                [](const Seed &s, const iterator &it) {
                                  return key_less(s, *it);
                                });
  iterator pos = items_.begin();
  if (after != skip_.begin()) pos = std::next(*std::prev(after));
  while (pos != items_.end() && !key_less(seed, *pos)) ++pos;

  const bool was_empty = items_.empty();
  iterator inserted = items_.insert(pos, std::move(seed));
  // Every referenced element past the insertion point moved one slot right;
  // its predecessor now sits at the referenced position.
  for (auto it = after; it != skip_.end(); ++it) *it = std::prev(*it);
  if ((items_.size() - 1) % kSkipStride == 0) skip_.push_back(std::prev(items_.end()));
  if (was_empty) cursor_ = items_.begin();
  return inserted;
}

Seed &SeedQueue::next() {
  if (cursor_ == items_.end()) cursor_ = items_.begin();
  Seed &s = *cursor_;
  ++cursor_;
  if (cursor_ == items_.end()) cursor_ = items_.begin();
  return s;
}

std::vector<size_t> SeedQueue::skip_positions() const {
  std::vector<size_t> out;
  size_t i = 0;
  auto s = skip_.begin();
  for (auto it = items_.begin(); it != items_.end() && s != skip_.end(); ++it, ++i) {
    if (&*it == &**s) {
      out.push_back(i);
      ++s;
    }
  }
  return out;
}

bool SeedQueue::check_invariants() const {
  for (auto it = items_.begin(); it != items_.end(); ++it) {
    auto nx = std::next(it);
    if (nx != items_.end() && key_less(*nx, *it)) return false;
  }
  const std::vector<size_t> pos = skip_positions();
  const size_t expected = (items_.size() + kSkipStride - 1) / kSkipStride;
  if (pos.size() != expected || skip_.size() != expected) return false;
  for (size_t k = 0; k < pos.size(); ++k) {
    if (pos[k] != k * kSkipStride) return false;
  }
  return true;
}

}  // namespace hdfuzz::fuzzer
