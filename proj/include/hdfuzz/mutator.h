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

// Havoc-style byte mutator. Each child applies 1..max_stack operations drawn
// uniformly from bit flip, byte set, byte add/sub, byte insert, byte delete,
// block duplicate and splice.

#ifndef HDFUZZ_MUTATOR_H_
#define HDFUZZ_MUTATOR_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hdfuzz::fuzzer {

using Rng = std::mt19937_64;

enum class MutationOp {
  kBitFlip,
  kByteSet,
  kByteArith,
  kByteInsert,
  kByteDelete,
  kBlockDuplicate,
  kSplice,
};

inline constexpr size_t kMutationOpCount = 7;
inline constexpr size_t kDefaultMaxInputLength = 4096;
inline constexpr uint32_t kDefaultMaxStack = 8;

class Mutator {
 public:
  explicit Mutator(size_t max_length = kDefaultMaxInputLength,
                   uint32_t max_stack = kDefaultMaxStack)
      : max_length_(max_length), max_stack_(max_stack) {}

  // Exactly `energy` children. `splice_pool` supplies splice partners and may
  // be empty.
  std::vector<std::string> mutate(const std::string &bytes, uint32_t energy, Rng &rng,
                                  const std::vector<std::string> &splice_pool) const;

  std::string mutate_one(const std::string &bytes, Rng &rng,
                         const std::vector<std::string> &splice_pool) const;

  void apply(MutationOp op, std::string &data, Rng &rng,
             const std::vector<std::string> &splice_pool) const;

  size_t max_length() const { return max_length_; }

 private:
  size_t max_length_;
  uint32_t max_stack_;
};

}  // namespace hdfuzz::fuzzer

#endif  // HDFUZZ_MUTATOR_H_
