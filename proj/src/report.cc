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

#include "hdfuzz/report.h"

#include <cstdio>
#include <sstream>

#include "hdfuzz/config.h"

namespace hdfuzz::report {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double> &v) {
  return v ? json(*v) : json(nullptr);
}

json datum_json(const ir::Datum &d) {
  return {{"kind", d.kind == ir::Datum::Kind::kVar ? "var" : "object"}, {"name", d.name}};
}

json outcome_json(const ir::Program &program, const runtime::ExecOutcome &o) {
  json j = {{"kind", runtime::outcome_name(o.kind)}};
  if (o.is_crash()) {
    j["crash_kind"] = runtime::crash_kind_name(o.crash);
    j["location"] = program.instr_name(*o.location);
    j["key"] = runtime::crash_key(program, o);
  }
  return j;
}

std::string dot_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string program_digest(const ir::Program &program) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : ir::print_program(program)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json analyze_report(const AnalysisBundle &bundle) {
  const ir::Program &p = *bundle.program;
  json j;
  j["schema"] = kAnalyzeSchema;
  j["program_digest"] = program_digest(p);
  j["entry"] = p.function(p.entry_function()).name;
  j["reachable"] = bundle.reachable();

  json targets = json::array();
  for (const TargetProducts &t : bundle.per_target) {
    json data = json::array();
    for (const ir::Datum &d : t.spec.data) data.push_back(datum_json(d));
    json sites = json::object();
    for (const auto &[b, d] : t.distances.call_sites) sites[p.block_name(b)] = d;
    json entries = json::object();
    for (const auto &[f, d] : t.distances.entries) entries[p.function(f).name] = d;
    targets.push_back({{"location", p.instr_name(t.spec.location)},
                       {"block", p.block_name(t.spec.block())},
                       {"data", data},
                       {"reachable", t.reachable},
                       {"control_slice_size", t.control.size()},
                       {"value_slice_size", t.value.size()},
                       {"call_site_distances", sites},
                       {"entry_distances", entries}});
  }
  j["targets"] = targets;

  json edges = json::array();
  for (const analysis::CallEdge &e : bundle.callgraph.edges()) {
    edges.push_back({{"caller", p.function(e.caller).name},
                     {"site", p.instr_name(e.site)},
                     {"callee", p.function(e.callee).name}});
  }
  json unresolved = json::array();
  for (const ir::InstrId &s : bundle.callgraph.unresolved_sites()) {
    unresolved.push_back(p.instr_name(s));
  }
  j["call_graph"] = {{"edges", edges}, {"unresolved", unresolved}};

  json vfg_edges = json::array();
  for (const auto &[from, to] : bundle.vfg.edges()) {
    vfg_edges.push_back({p.instr_name(bundle.vfg.nodes()[from]),
                         p.instr_name(bundle.vfg.nodes()[to])});
  }
  j["vfg"] = {{"nodes", bundle.vfg.node_count()},
              {"edge_count", bundle.vfg.edge_count()},
              {"edges", vfg_edges}};

  json blocks = json::array();
  for (ir::BlockId b : p.all_blocks()) {
    json e = {{"name", p.block_name(b)}};
    auto s = bundle.slice.blocks.find(b);
    e["slice"] = s == bundle.slice.blocks.end() ? json(nullptr)
                                                : json(slicing::provenance_name(s->second));
    e["boundary"] = bundle.boundary.contains(b);
    auto d = bundle.distances.find(b);
    e["distance"] = d == bundle.distances.end() ? json(nullptr) : json(d->second);
    json per_target = json::array();
    for (const TargetProducts &t : bundle.per_target) {
      auto td = t.distances.blocks.find(b);
      per_target.push_back(td == t.distances.blocks.end() ? json(nullptr) : json(td->second));
    }
    e["target_distances"] = per_target;
    auto v = bundle.vfb.find(b);
    e["vfb"] = v == bundle.vfb.end() ? json(nullptr) : json(v->second);
    blocks.push_back(e);
  }
  j["blocks"] = blocks;
  j["max_vfd"] = bundle.vfd.max_vfd;
  j["diagnostics"] = bundle.diagnostics;
  return j;
}

json campaign_report(const AnalysisBundle &bundle, const fuzzer::CampaignConfig &c,
                     const fuzzer::CampaignStats &stats, const fuzzer::SeedQueue &queue) {
  const ir::Program &p = *bundle.program;
  json j;
  j["schema"] = kCampaignSchema;
  j["program_digest"] = program_digest(p);
  json targets = json::array();
  for (const ir::TargetSpec &t : bundle.targets) targets.push_back(p.instr_name(t.location));
  json initial = json::array();
  for (const std::string &s : c.initial_seeds) initial.push_back(fuzzer::hex_encode(s));
  j["config"] = {{"targets", targets},
                 {"virtual_time", c.virtual_time},
                 {"time_budget", c.time_budget},
                 {"t_x", c.t_x},
                 {"rng_seed", c.rng_seed},
                 {"step_limit", c.step_limit},
                 {"bitmap_size", c.bitmap_size},
                 {"stop_on_first_crash", c.stop_on_first_crash},
                 {"max_input_length", c.max_input_length},
                 {"max_stack", c.max_stack},
                 {"initial_seeds", initial},
                 {"ablation", fuzzer::ablation_name(c)},
                 {"distance_term", c.use_distance},
                 {"value_term", c.use_value},
                 {"selective_instrumentation", c.use_selective}};

  json history = json::array();
  for (const auto &[at, size] : stats.queue_size) history.push_back({at, size});
  json s = {{"executions", stats.executions},
            {"crash_executions", stats.crash_executions},
            {"rounds", stats.rounds},
            {"unique_crashes", stats.crashes.size()},
            {"queue_size", queue.size()},
            {"queue_size_history", history},
            {"min_vfs", optional_number(stats.min_vfs)},
            {"max_vfs", optional_number(stats.max_vfs)},
            {"min_distance", optional_number(stats.min_distance)},
            {"max_distance", optional_number(stats.max_distance)},
            {"max_coverage", stats.max_coverage},
            {"tte_executions", stats.tte}};
  if (!c.virtual_time) {
    s["elapsed_seconds"] = stats.elapsed_seconds;
    s["tte_seconds"] = stats.tte_seconds;
  }
  j["stats"] = s;

  json crashes = json::array();
  for (const fuzzer::CrashRecord &cr : stats.crashes) {
    json e = {{"index", cr.index},
              {"key", cr.key},
              {"outcome", outcome_json(p, cr.outcome)},
              {"input_hex", fuzzer::hex_encode(cr.input)},
              {"file", crash_file_name(cr)},
              {"tte_executions", cr.executions}};
    if (!c.virtual_time) e["tte_seconds"] = cr.seconds;
    crashes.push_back(e);
  }
  j["crashes"] = crashes;

  json seeds = json::array();
  for (const fuzzer::Seed &sd : queue.items()) {
    seeds.push_back({{"id", sd.id},
                     {"input_hex", fuzzer::hex_encode(sd.bytes)},
                     {"distance", optional_number(sd.distance)},
                     {"vfs", sd.vfs},
                     {"coverage", sd.coverage_count},
                     {"exec_steps", sd.exec_steps},
                     {"discovered_at", sd.discovery_time},
                     {"times_scheduled", sd.times_scheduled}});
  }
  j["queue"] = seeds;
  return j;
}

json replay_report(const ir::Program &program, const runtime::ExecResult &result) {
  const runtime::ExecutionFeedback &fb = result.feedback;
  json hits = json::object();
  for (const auto &[b, n] : fb.block_hits) hits[program.block_name(b)] = n;
  json boundary = json::array();
  for (ir::BlockId b : fb.boundary_hits) boundary.push_back(program.block_name(b));
  json bitmap = json::array();
  for (const auto &[slot, bits] : fb.bitmap) bitmap.push_back({slot, bits});
  json trace = json::array();
  for (ir::BlockId b : fb.trace) trace.push_back(program.block_name(b));
  return {{"schema", kReplaySchema},
          {"program_digest", program_digest(program)},
          {"outcome", outcome_json(program, result.outcome)},
          {"trace", trace},
          {"feedback",
           {{"block_hits", hits},
            {"bitmap", bitmap},
            {"boundary_hits", boundary},
            {"distance_sum", fb.distance_sum},
            {"distance_count", fb.distance_count},
            {"seed_distance", optional_number(fuzzer::seed_distance(fb))},
            {"vfs_sum", fb.vfs_sum},
            {"exec_steps", fb.exec_steps}}}};
}

std::string callgraph_dot(const AnalysisBundle &bundle) {
  const ir::Program &p = *bundle.program;
  std::ostringstream out;
  out << "digraph callgraph {\n";
  for (uint32_t f = 0; f < p.functions().size(); ++f) {
    out << "  \"" << dot_escape(p.function(f).name) << "\"";
    if (bundle.slice.functions.count(f)) out << " [style=filled, fillcolor=lightblue]";
    out << ";\n";
  }
  for (const analysis::CallEdge &e : bundle.callgraph.edges()) {
    out << "  \"" << dot_escape(p.function(e.caller).name) << "\" -> \""
        << dot_escape(p.function(e.callee).name) << "\" [label=\""
        << dot_escape(p.function(e.caller).blocks[e.site.block].label) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string cfg_dot(const AnalysisBundle &bundle) {
  const ir::Program &p = *bundle.program;
  std::ostringstream out;
  out << "digraph cfg {\n  node [shape=ellipse];\n";
  for (uint32_t f = 0; f < p.functions().size(); ++f) {
    const ir::Function &fn = p.function(f);
    out << "  subgraph \"cluster_" << dot_escape(fn.name) << "\" {\n    label=\""
        << dot_escape(fn.name) << "\";\n";
    for (uint32_t b = 0; b < fn.blocks.size(); ++b) {
      const ir::BlockId id{f, b};
      out << "    \"" << dot_escape(p.block_name(id)) << "\" [label=\""
          << dot_escape(fn.blocks[b].label);
      if (auto d = bundle.distances.find(id); d != bundle.distances.end()) {
        out << "\\nd=" << d->second;
      }
      out << "\"";
      if (bundle.slice.contains(id)) out << ", style=filled, fillcolor=lightblue";
      if (bundle.boundary.contains(id)) out << ", shape=box";
      out << "];\n";
    }
    out << "  }\n";
    for (uint32_t b = 0; b < fn.blocks.size(); ++b) {
      for (uint32_t s : fn.blocks[b].successors) {
        out << "  \"" << dot_escape(p.block_name({f, b})) << "\" -> \""
            << dot_escape(p.block_name({f, s})) << "\";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string crash_file_name(const fuzzer::CrashRecord &crash) {
  std::string key = crash.key;
  for (char &c : key) {
    if (c == ':' || c == '/') c = '_';
  }
  return "crash-" + std::to_string(crash.index) + "-" + key;
}

}  // namespace hdfuzz::report
