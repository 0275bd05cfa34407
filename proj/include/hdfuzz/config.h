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

// Campaign manifests: `key = value` lines, `#` comments. Keys:
//
//   time_budget  t_x  seed  step_limit  bitmap_size  max_input_length
//   max_stack    virtual_time  stop_on_first_crash   ablation
//   target       initial_seed_hex
//
// `target` and `initial_seed_hex` may repeat. `ablation` is one of none,
// nodist, novalue, noselect.

#ifndef HDFUZZ_CONFIG_H_
#define HDFUZZ_CONFIG_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "hdfuzz/campaign.h"

namespace hdfuzz::fuzzer {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Applies every assignment in `text` on top of `config`.
void apply_config_text(std::string_view text, CampaignConfig &config);

// Sets the three ablation switches: all on for "none".
void apply_ablation(std::string_view name, CampaignConfig &config);

// "none", "nodist", "novalue", "noselect", or "custom" for other mixes.
std::string ablation_name(const CampaignConfig &config);

std::string hex_encode(std::string_view bytes);
// Throws ConfigError on odd length or non-hex characters.
std::string hex_decode(std::string_view hex);

}  // namespace hdfuzz::fuzzer

#endif  // HDFUZZ_CONFIG_H_
