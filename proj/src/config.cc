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

#include "hdfuzz/config.h"

#include <charconv>
#include <sstream>

namespace hdfuzz::fuzzer {

namespace {

std::string_view trim(std::string_view s) {
  const char *ws = " \t\r";
  const size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view v, const std::string &where) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError(where + ": invalid number '" + std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view v, const std::string &where) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(where + ": invalid boolean '" + std::string(v) + "'");
}

}  // namespace

void apply_ablation(std::string_view name, CampaignConfig &config) {
  config.use_distance = config.use_value = config.use_selective = true;
  if (name == "none") return;
  if (name == "nodist") {
    config.use_distance = false;
  } else if (name == "novalue") {
    config.use_value = false;
  } else if (name == "noselect") {
    config.use_selective = false;
  } else {
    throw ConfigError("unknown ablation '" + std::string(name) + "'");
  }
}

std::string ablation_name(const CampaignConfig &c) {
  const int off = !c.use_distance + !c.use_value + !c.use_selective;
  if (off == 0) return "none";
  if (off > 1) return "custom";
  if (!c.use_distance) return "nodist";
  if (!c.use_value) return "novalue";
  return "noselect";
}

void apply_config_text(std::string_view text, CampaignConfig &config) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  bool targets_reset = false;
  bool seeds_reset = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(where + ": missing value for '" + key + "'");

    if (key == "time_budget") {
      config.time_budget = parse_number<double>(value, where);
    } else if (key == "t_x") {
      config.t_x = parse_number<double>(value, where);
    } else if (key == "seed") {
      config.rng_seed = parse_number<uint64_t>(value, where);
    } else if (key == "step_limit") {
      config.step_limit = parse_number<uint64_t>(value, where);
    } else if (key == "bitmap_size") {
      config.bitmap_size = parse_number<uint32_t>(value, where);
    } else if (key == "max_input_length") {
      config.max_input_length = parse_number<size_t>(value, where);
    } else if (key == "max_stack") {
      config.max_stack = parse_number<uint32_t>(value, where);
    } else if (key == "virtual_time") {
      config.virtual_time = parse_bool(value, where);
    } else if (key == "stop_on_first_crash") {
      config.stop_on_first_crash = parse_bool(value, where);
    } else if (key == "ablation") {
      apply_ablation(value, config);
    } else if (key == "target") {
      if (!targets_reset) config.targets.clear();
      targets_reset = true;
      config.targets.emplace_back(value);
    } else if (key == "initial_seed_hex") {
      if (!seeds_reset) config.initial_seeds.clear();
      seeds_reset = true;
      config.initial_seeds.push_back(hex_decode(value));
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

std::string hex_encode(std::string_view bytes) {
  static const char *digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

std::string hex_decode(std::string_view hex) {
  if (hex.size() % 2) throw ConfigError("odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ConfigError(std::string("invalid hex digit '") + c + "'");
  };
  std::string out;
  out.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2) {
    out.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  return out;
}

}  // namespace hdfuzz::fuzzer
