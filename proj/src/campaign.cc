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

#include "hdfuzz/campaign.h"

#include <algorithm>
#include <chrono>

namespace hdfuzz::fuzzer {

namespace {

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

void widen(std::optional<double> &lo, std::optional<double> &hi, double v) {
  if (!lo || v < *lo) lo = v;
  if (!hi || v > *hi) hi = v;
}

}  // namespace

void CampaignConfig::validate() const {
  if (!(t_x > 0)) throw std::invalid_argument("t_x must be positive");
  if (!(time_budget > 0)) throw std::invalid_argument("time budget must be positive");
  if (step_limit == 0) throw std::invalid_argument("step limit must be positive");
  if (!use_distance && !use_value && !use_selective) {
    throw std::invalid_argument("at least one feedback channel must be enabled");
  }
  if (bitmap_size == 0 || (bitmap_size & (bitmap_size - 1)) != 0) {
    throw std::invalid_argument("bitmap size must be a power of two");
  }
  if (max_input_length == 0) throw std::invalid_argument("max input length must be positive");
  if (max_stack == 0) throw std::invalid_argument("max stack must be positive");
}

std::optional<double> seed_distance(const runtime::ExecutionFeedback &feedback) {
  if (feedback.distance_count == 0) return std::nullopt;
  return feedback.distance_sum / feedback.distance_count;
}

Interest is_interesting(const runtime::ExecutionFeedback &feedback,
                        const runtime::ExecOutcome &outcome, const SeedQueue &queue,
                        const std::map<uint32_t, uint8_t> &virgin) {
  Interest r;
  r.crash = outcome.is_crash();
  for (const auto &[slot, bits] : feedback.bitmap) {
    auto it = virgin.find(slot);
    const uint8_t seen = it == virgin.end() ? 0 : it->second;
    if (bits & ~seen) {
      r.new_coverage = true;
      break;
    }
  }
  if (auto d = seed_distance(feedback)) {
    r.closer = !queue.min_distance() || *d < *queue.min_distance();
  }
  r.stronger_value = !queue.max_vfs() || feedback.vfs_sum > *queue.max_vfs();
  return r;
}

EnergyTerms seed_energy(const Seed &seed, const CampaignStats &stats, double elapsed,
                        const CampaignConfig &config) {
  EnergyTerms e;
  const double temperature = t_exp(elapsed, config.t_x);
  e.afl = energy_afl(static_cast<double>(seed.exec_steps), stats.avg_exec_steps(),
                     seed.coverage_count, stats.max_coverage);
  if (config.use_distance) {
    std::optional<double> d;
    if (seed.distance) {
      d = normalize(*seed.distance, stats.min_distance.value_or(*seed.distance),
                    stats.max_distance.value_or(*seed.distance));
    }
    e.distance = energy_distance(d, temperature);
  }
  if (config.use_value) {
    e.value = energy_vfs(normalize(seed.vfs, stats.min_vfs.value_or(seed.vfs),
                                   stats.max_vfs.value_or(seed.vfs)),
                         temperature);
  }
  e.total = combine_energy(e.afl, e.distance, e.value);
  return e;
}

namespace {

PlanOptions plan_options(const CampaignConfig &c) {
  PlanOptions o;
  o.use_distance = c.use_distance;
  o.use_value = c.use_value;
  o.use_selective = c.use_selective;
  o.bitmap_size = c.bitmap_size;
  return o;
}

const AnalysisBundle &checked(const AnalysisBundle &bundle) {
  if (!bundle.reachable()) {
    std::string msg = "unreachable target";
    for (const std::string &t : bundle.unreachable_targets()) msg += " " + t;
    throw std::runtime_error(msg);
  }
  return bundle;
}

}  // namespace

Campaign::Campaign(const AnalysisBundle &bundle, CampaignConfig config)
    : bundle_(checked(bundle)),
      config_((config.validate(), std::move(config))),
      plan_(make_plan(bundle_, plan_options(config_))),
      executor_(*bundle_.program, plan_),
      mutator_(config_.max_input_length, config_.max_stack),
      rng_(config_.rng_seed) {}

double Campaign::elapsed() const {
  if (config_.virtual_time) return static_cast<double>(stats_.executions);
  return now_seconds() - start_;
}

EnergyTerms Campaign::energy(const Seed &seed) const {
  return seed_energy(seed, stats_, elapsed(), config_);
}

bool Campaign::budget_left() const { return elapsed() < config_.time_budget; }

bool Campaign::should_stop() const {
  return config_.stop_on_first_crash && !stats_.crashes.empty();
}

void Campaign::evaluate(const std::string &input, bool force_keep) {
  runtime::ExecResult r = executor_.run(input, config_.step_limit);
  ++stats_.executions;
  const runtime::ExecutionFeedback &fb = r.feedback;
  stats_.total_exec_steps += fb.exec_steps;
  const uint32_t coverage = static_cast<uint32_t>(fb.block_hits.size());
  stats_.max_coverage = std::max(stats_.max_coverage, coverage);
  const std::optional<double> dist = seed_distance(fb);
  if (dist) widen(stats_.min_distance, stats_.max_distance, *dist);
  widen(stats_.min_vfs, stats_.max_vfs, fb.vfs_sum);

  const Interest interest = is_interesting(fb, r.outcome, queue_, virgin_);
  for (const auto &[slot, bits] : fb.bitmap) virgin_[slot] |= bits;

  if (interest.crash) {
    ++stats_.crash_executions;
    const std::string key = runtime::crash_key(*bundle_.program, r.outcome);
    if (!stats_.tte.count(key)) {
      CrashRecord rec;
      rec.index = stats_.crashes.size();
      rec.key = key;
      rec.input = input;
      rec.outcome = r.outcome;
      rec.executions = stats_.executions;
      rec.seconds = now_seconds() - start_;
      stats_.tte[key] = rec.executions;
      stats_.tte_seconds[key] = rec.seconds;
      stats_.crashes.push_back(std::move(rec));
    }
  } else if (force_keep || interest.keep()) {
    Seed s;
    s.id = next_seed_id_++;
    s.bytes = input;
    s.distance = dist;
    s.vfs = fb.vfs_sum;
    s.coverage_count = coverage;
    s.bitmap = fb.bitmap;
    s.exec_steps = fb.exec_steps;
    s.discovery_time = stats_.executions;
    s.discovery_seconds = now_seconds() - start_;
    queue_.insert(std::move(s));
    corpus_.push_back(input);
    stats_.queue_size.emplace_back(stats_.executions, queue_.size());
  }
  if (on_exec_) on_exec_(*this, input, r);
}

CampaignStats Campaign::run() {
  start_ = now_seconds();
  std::vector<std::string> seeds = config_.initial_seeds;
  if (seeds.empty()) seeds.push_back(std::string(4, '\0'));
  for (const std::string &s : seeds) {
    if (!budget_left() || should_stop()) break;
    evaluate(s.substr(0, config_.max_input_length), true);
  }
  while (budget_left() && !should_stop() && !queue_.empty()) {
    Seed &seed = queue_.next();
    ++seed.times_scheduled;
    ++stats_.rounds;
    if (on_schedule_) on_schedule_(*this, seed);
    const uint32_t energy = seed_energy(seed, stats_, elapsed(), config_).total;
    // Copy: list nodes are stable, but the bytes are read after insertions.
    const std::string parent = seed.bytes;
    const std::vector<std::string> children = mutator_.mutate(parent, energy, rng_, corpus_);
    for (const std::string &child : children) {
      if (!budget_left() || should_stop()) break;
      evaluate(child, false);
    }
  }
  stats_.elapsed_seconds = now_seconds() - start_;
  return stats_;
}

CampaignStats run_campaign(const AnalysisBundle &bundle, const CampaignConfig &config) {
  Campaign c(bundle, config);
  return c.run();
}

}  // namespace hdfuzz::fuzzer
