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

#include "hdfuzz/mutator.h"

#include <algorithm>

namespace hdfuzz::fuzzer {

namespace {

constexpr int kArithMax = 35;
constexpr size_t kMaxBlock = 16;

// Uniform in [0, n). n > 0.
size_t pick(Rng &rng, size_t n) { return static_cast<size_t>(rng() % n); }

char random_byte(Rng &rng) { return static_cast<char>(rng() & 0xff); }

}  // namespace

void Mutator::apply(MutationOp op, std::string &data, Rng &rng,
                    const std::vector<std::string> &splice_pool) const {
  // Operations that need an existing byte degrade to an insertion.
  if (data.empty() && op != MutationOp::kSplice) op = MutationOp::kByteInsert;
  switch (op) {
    case MutationOp::kBitFlip: {
      const size_t bit = pick(rng, data.size() * 8);
      data[bit / 8] = static_cast<char>(data[bit / 8] ^ (1 << (bit % 8)));
      break;
    }
    case MutationOp::kByteSet:
      data[pick(rng, data.size())] = random_byte(rng);
      break;
    case MutationOp::kByteArith: {
      const size_t at = pick(rng, data.size());
      const int delta = 1 + static_cast<int>(pick(rng, kArithMax));
      const int sign = pick(rng, 2) ? 1 : -1;
      data[at] = static_cast<char>(static_cast<unsigned char>(data[at]) + sign * delta);
      break;
    }
    case MutationOp::kByteInsert:
      data.insert(data.begin() + static_cast<std::ptrdiff_t>(pick(rng, data.size() + 1)),
                  random_byte(rng));
      break;
    case MutationOp::kByteDelete: {
      const size_t len = 1 + pick(rng, std::min<size_t>(data.size(), 4));
      data.erase(pick(rng, data.size() - len + 1), len);
      break;
    }
    case MutationOp::kBlockDuplicate: {
      const size_t len = 1 + pick(rng, std::min(data.size(), kMaxBlock));
      const size_t from = pick(rng, data.size() - len + 1);
      const size_t to = pick(rng, data.size() + 1);
      const std::string block = data.substr(from, len);
      data.insert(to, block);
      break;
    }
    case MutationOp::kSplice: {
      if (splice_pool.empty()) {
        if (!data.empty()) apply(MutationOp::kBitFlip, data, rng, splice_pool);
        break;
      }
      const std::string &other = splice_pool[pick(rng, splice_pool.size())];
      const size_t cut = pick(rng, data.size() + 1);
      const size_t other_cut = pick(rng, other.size() + 1);
      data = data.substr(0, cut) + other.substr(other_cut);
      break;
    }
  }
  if (data.size() > max_length_) data.resize(max_length_);
}

std::string Mutator::mutate_one(const std::string &bytes, Rng &rng,
                                const std::vector<std::string> &splice_pool) const {
  std::string data = bytes.substr(0, max_length_);
  const uint32_t stack = 1 + static_cast<uint32_t>(pick(rng, max_stack_));
  for (uint32_t i = 0; i < stack; ++i) {
    apply(static_cast<MutationOp>(pick(rng, kMutationOpCount)), data, rng, splice_pool);
  }
  if (data.empty()) data.push_back(random_byte(rng));
  return data;
}

std::vector<std::string> Mutator::mutate(const std::string &bytes, uint32_t energy, Rng &rng,
                                         const std::vector<std::string> &splice_pool) const {
  std::vector<std::string> out;
  out.reserve(energy);
  for (uint32_t i = 0; i < energy; ++i) out.push_back(mutate_one(bytes, rng, splice_pool));
  return out;
}

}  // namespace hdfuzz::fuzzer
