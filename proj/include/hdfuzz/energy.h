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

// Annealed power schedule.
//
// A seed's energy is P_AFL * P_dist * P_value, rounded and clamped to
// [1, kMaxEnergy]. Both annealed terms share the form
//   2^(10 * score * (1 - T) + 0.5 * T - 5),   T = 20^(-elapsed / t_x)
// with score = 1 - normalized distance or the normalized value-flow score.

#ifndef HDFUZZ_ENERGY_H_
#define HDFUZZ_ENERGY_H_

#include <cstdint>
#include <optional>

namespace hdfuzz::fuzzer {

inline constexpr uint32_t kMaxEnergy = 4096;
inline constexpr double kBaseEnergy = 16.0;

double t_exp(double elapsed, double t_x);

// (v - lo) / (hi - lo), or 0.5 when the range is degenerate.
double normalize(double v, double lo, double hi);

double energy_vfs(double vfs_normalized, double temperature);

// Absent distance normalizes to 1 (farthest).
double energy_distance(std::optional<double> distance_normalized, double temperature);

// 16 * clamp(avg_steps / steps, 0.25, 4) * clamp(coverage / max_coverage,
// 0.25, 1), never below 1.
double energy_afl(double seed_exec_steps, double avg_exec_steps, double seed_coverage,
                  double max_coverage);

struct EnergyTerms {
  double afl = 1.0;
  double distance = 1.0;
  double value = 1.0;
  uint32_t total = 1;
};

// round(afl * distance * value) clamped to [1, kMaxEnergy].
uint32_t combine_energy(double afl, double distance, double value);

}  // namespace hdfuzz::fuzzer

#endif  // HDFUZZ_ENERGY_H_
