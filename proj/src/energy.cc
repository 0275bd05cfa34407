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

#include "hdfuzz/energy.h"

#include <algorithm>
#include <cmath>

namespace hdfuzz::fuzzer {

double t_exp(double elapsed, double t_x) { return std::pow(20.0, -elapsed / t_x); }

double normalize(double v, double lo, double hi) {
  if (!(hi > lo)) return 0.5;
  return std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
}

namespace {

double annealed(double score, double temperature) {
  return std::exp2(10.0 * score * (1.0 - temperature) + 0.5 * temperature - 5.0);
}

}  // namespace

double energy_vfs(double vfs_normalized, double temperature) {
  return annealed(vfs_normalized, temperature);
}

double energy_distance(std::optional<double> distance_normalized, double temperature) {
  return annealed(1.0 - distance_normalized.value_or(1.0), temperature);
}

double energy_afl(double seed_exec_steps, double avg_exec_steps, double seed_coverage,
                  double max_coverage) {
  double speed = 1.0;
  if (seed_exec_steps > 0) speed = std::clamp(avg_exec_steps / seed_exec_steps, 0.25, 4.0);
  double coverage = 1.0;
  if (max_coverage > 0) coverage = std::clamp(seed_coverage / max_coverage, 0.25, 1.0);
  return std::max(1.0, kBaseEnergy * speed * coverage);
}

uint32_t combine_energy(double afl, double distance, double value) {
  const double p = std::round(afl * distance * value);
  return static_cast<uint32_t>(std::clamp(p, 1.0, static_cast<double>(kMaxEnergy)));
}

}  // namespace hdfuzz::fuzzer
