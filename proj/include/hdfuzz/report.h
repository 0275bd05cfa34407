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

// JSON and Graphviz renderings of analysis, campaign and replay results.
// The JSON layouts are described by the schemas under docs/schemas.

#ifndef HDFUZZ_REPORT_H_
#define HDFUZZ_REPORT_H_

#include <cstdint>
#include <string>

#include "json.hpp"

#include "hdfuzz/campaign.h"
#include "hdfuzz/pipeline.h"
#include "hdfuzz/runtime.h"

namespace hdfuzz::report {

inline constexpr const char *kAnalyzeSchema = "hdfuzz.analyze/1";
inline constexpr const char *kCampaignSchema = "hdfuzz.campaign/1";
inline constexpr const char *kReplaySchema = "hdfuzz.replay/1";

// FNV-1a 64 of the canonical program text, as 16 hex digits.
std::string program_digest(const ir::Program &program);

nlohmann::json analyze_report(const AnalysisBundle &bundle);

// Wall-clock fields are omitted in virtual-time mode so identical
// configurations produce identical reports.
nlohmann::json campaign_report(const AnalysisBundle &bundle,
                               const fuzzer::CampaignConfig &config,
                               const fuzzer::CampaignStats &stats,
                               const fuzzer::SeedQueue &queue);

nlohmann::json replay_report(const ir::Program &program, const runtime::ExecResult &result);

std::string callgraph_dot(const AnalysisBundle &bundle);
// Per-function CFG clusters; slice blocks are filled, boundary blocks boxed.
std::string cfg_dot(const AnalysisBundle &bundle);

// Crash file name: crash-<index>-<key> with ':' replaced by '_'.
std::string crash_file_name(const fuzzer::CrashRecord &crash);

}  // namespace hdfuzz::report

#endif  // HDFUZZ_REPORT_H_
