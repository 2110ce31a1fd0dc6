/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The fdra Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "fdra/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "fdra/baselines.hpp"
#include "fdra/errors.hpp"
#include "fdra/hetnet.hpp"
#include "fdra/threshold.hpp"
#include "fdra/units.hpp"

namespace fdra {

const char* library_version() { return FDRA_VERSION_STRING; }
const char* library_revision() { return FDRA_GIT_REVISION; }

int RunOutput::failures() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                        [](const ResultRow& r) { return !r.ok; }));
}

std::vector<double> sweep_points(const ScenarioConfig& cfg) {
  if (cfg.sweep == SweepVariable::None) return {std::nan("")};
  return cfg.sweep_values;
}

ScenarioConfig at_sweep_point(const ScenarioConfig& cfg, double value) {
  ScenarioConfig c = cfg;
  switch (cfg.sweep) {
    case SweepVariable::None: break;
    case SweepVariable::BetaDb: c.beta_db = value; break;
    case SweepVariable::FdFraction: c.fd_fraction = value; break;
    case SweepVariable::RMin:
      c.r_mind = value;
      c.r_minu = value;
      break;
    case SweepVariable::UserCount: c.users = static_cast<int>(value); break;
  }
  return c;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double beta_linear(double beta_db) { return beta_from_db(beta_db); }

DcOptions dc_options(const ScenarioConfig& c) {
  DcOptions o;
  o.relative_tolerance = c.dc_tolerance;
  o.max_iterations = c.dc_max_iterations;
  return o;
}

struct TaskOutput {
  std::vector<ResultRow> rows;
  std::vector<HetTraceRecord> het;
  std::vector<DcTraceRecord> dc;
};

ResultRow base_row(const ScenarioConfig& c, std::uint64_t seed, double sweep, SchemeKind s) {
  ResultRow r;
  r.scenario_id = c.id;
  r.seed = seed;
  r.sweep_value = sweep;
  r.scheme = scheme_name(s);
  return r;
}

void mark_failed(ResultRow& r, const std::string& what) {
  r.ok = false;
  r.error = what;
  r.sum_rate = r.dl_rate = r.ul_rate = 0.0;
  r.iterations = -1;
}

void record_dc(TaskOutput& out, const ResultRow& row, int outer, const DcReport& rep) {
  for (std::size_t i = 0; i < rep.objective_trace.size(); ++i)
    out.dc.push_back({{row.seed, row.sweep_value, row.scheme}, outer, static_cast<int>(i),
                      rep.objective_trace[i]});
}

CellSetup single_cell_setup(const ScenarioConfig& c, const Topology& topo,
                            const ChannelRealization& ch) {
  const int K = c.users;
  CellSetup s;
  s.ch = cell_channel(ch, 0, topo.users_of(0));
  const int fd = static_cast<int>(std::lround(c.fd_fraction * K));
  s.caps.assign(K, Duplex::HalfDuplex);
  for (int k = 0; k < fd; ++k) s.caps[k] = Duplex::FullDuplex;
  s.w = c.dl_weights.empty() ? std::vector<double>(K, 1.0) : c.dl_weights;
  s.v = c.ul_weights.empty() ? std::vector<double>(K, 1.0) : c.ul_weights;
  s.p_bs = dbm_to_mw(c.bs_power_dbm);
  s.p_user.assign(K, dbm_to_mw(c.ue_power_dbm));
  s.beta = beta_linear(c.beta_db);
  return s;
}

TaskOutput run_single_cell(const ScenarioConfig& c, std::uint64_t seed, double sweep) {
  TaskOutput out;
  Rng topo_rng = make_rng(seed, 1);
  Rng chan_rng = make_rng(seed, 2);
  const Topology topo = single_cell_topology(c.env, c.users, topo_rng);
  const ChannelRealization ch = realize_channels(topo, c.env, chan_rng);
  const CellSetup setup = single_cell_setup(c, topo, ch);
  for (SchemeKind s : c.schemes) {
    ResultRow row = base_row(c, seed, sweep, s);
    const auto t0 = Clock::now();
    try {
      const SchemeOutcome o = run_scheme(s, setup, dc_options(c));
      row.sum_rate = o.rates.weighted;
      row.dl_rate = o.rates.dl;
      row.ul_rate = o.rates.ul;
      row.iterations = o.iterations;
      if (c.dc_trace) record_dc(out, row, 0, o.dc);
    } catch (const std::exception& e) {
      mark_failed(row, e.what());
    }
    row.wall_time_ms = elapsed_ms(t0);
    out.rows.push_back(row);
  }
  return out;
}

TaskOutput run_hetnet(const ScenarioConfig& c, std::uint64_t seed, double sweep) {
  TaskOutput out;
  const HetPowers powers{dbm_to_mw(c.bs_power_dbm), dbm_to_mw(c.femto_bs_power_dbm),
                         dbm_to_mw(c.ue_power_dbm)};
  HetConfig hc;
  hc.r_mind = c.r_mind;
  hc.r_minu = c.r_minu;
  hc.outer_iterations = c.outer_iterations;
  hc.tolerance = c.hetnet_tolerance;
  hc.dc = dc_options(c);
  for (SchemeKind s : c.schemes) {
    ResultRow row = base_row(c, seed, sweep, s);
    const auto t0 = Clock::now();
    try {
      Rng topo_rng = make_rng(seed, 1);
      Rng chan_rng = make_rng(seed, 2);
      const double fd = s == SchemeKind::FD_HD ? 0.0 : c.fd_fraction;
      HetNetwork net = build_hetnet(c.layout, powers, fd, beta_linear(c.beta_db), topo_rng);
      const ChannelRealization ch = realize_channels(net.topology, c.env, chan_rng);
      const HetResult r = alternating_optimize(net, ch, hc);
      row.sum_rate = r.femto_sum_rate;
      row.dl_rate = r.macro_dl_rate;
      row.ul_rate = r.macro_ul_rate;
      row.iterations = r.outer_iterations;
      for (const auto& t : r.trace) out.het.push_back({{seed, sweep, row.scheme}, t});
      if (c.dc_trace)
        for (std::size_t i = 0; i < r.power_reports.size(); ++i)
          record_dc(out, row, static_cast<int>(i), r.power_reports[i]);
    } catch (const std::exception& e) {
      mark_failed(row, e.what());
    }
    row.wall_time_ms = elapsed_ms(t0);
    out.rows.push_back(row);
  }
  return out;
}

void run_threshold(const ScenarioConfig& c, RunOutput& out) {
  ThresholdSetup ts;
  ts.env = c.env;
  ts.users = c.users;
  ts.bs_power_mw = dbm_to_mw(c.bs_power_dbm);
  ts.ue_power_mw = dbm_to_mw(c.ue_power_dbm);
  ts.placement = c.pair_placement;
  std::vector<double> all;
  for (std::uint64_t seed : c.seeds) {
    Rng rng = make_rng(seed, 3);
    const auto v = monte_carlo_threshold_cdf(ts, c.threshold_draws, rng);
    all.insert(all.end(), v.begin(), v.end());
  }
  std::sort(all.begin(), all.end());
  out.thresholds_db.reserve(all.size());
  for (double b : all) out.thresholds_db.push_back(linear_to_db(b));
  const int steps =
      static_cast<int>(std::floor((c.cdf_beta_max_db - c.cdf_beta_min_db) / c.cdf_beta_step_db + 1e-9));
  for (int i = 0; i <= steps; ++i) {
    const double db = c.cdf_beta_min_db + i * c.cdf_beta_step_db;
    out.cdf.push_back({db, empirical_cdf(all, db_to_linear(db))});
  }
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << body;
  f.flush();
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string shortest(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string key_prefix(const std::string& id, const RowKey& k) {
  return id + "," + std::to_string(k.seed) + "," + shortest(k.sweep_value) + "," + k.scheme;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  if (s.empty()) return std::nan("");
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error("malformed number '" + s + "' in results CSV");
  return x;
}

}  // namespace

RunOutput run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  RunOutput out;
  out.config = cfg;
  if (cfg.mode == ScenarioMode::ThresholdCdf) {
    run_threshold(cfg, out);
    return out;
  }

  struct Task {
    std::uint64_t seed;
    double sweep;
  };
  std::vector<Task> tasks;
  for (double x : sweep_points(cfg))
    for (std::uint64_t s : cfg.seeds) tasks.push_back({s, x});

  // Task order fixes the output order regardless of scheduling.
  std::vector<TaskOutput> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        const ScenarioConfig c = at_sweep_point(cfg, tasks[i].sweep);
        results[i] = c.mode == ScenarioMode::Hetnet ? run_hetnet(c, tasks[i].seed, tasks[i].sweep)
                                                    : run_single_cell(c, tasks[i].seed, tasks[i].sweep);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (auto& r : results) {
    out.rows.insert(out.rows.end(), r.rows.begin(), r.rows.end());
    out.hetnet_trace.insert(out.hetnet_trace.end(), r.het.begin(), r.het.end());
    out.dc_trace.insert(out.dc_trace.end(), r.dc.begin(), r.dc.end());
  }
  return out;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += key_prefix(r.scenario_id, {r.seed, r.sweep_value, r.scheme}) + "," +
           fixed6(r.sum_rate) + "," + fixed6(r.dl_rate) + "," + fixed6(r.ul_rate) + "," +
           std::to_string(r.iterations) + "," + fixed6(r.wall_time_ms) + "\n";
  }
  return out;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  write_file(path, format_csv(rows));
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error("results CSV header mismatch");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 9) throw Error("results CSV row has " + std::to_string(f.size()) + " fields");
    ResultRow r;
    r.scenario_id = f[0];
    r.seed = std::stoull(f[1]);
    r.sweep_value = parse_number(f[2]);
    r.scheme = f[3];
    r.sum_rate = parse_number(f[4]);
    r.dl_rate = parse_number(f[5]);
    r.ul_rate = parse_number(f[6]);
    r.iterations = std::stoi(f[7]);
    r.wall_time_ms = parse_number(f[8]);
    r.ok = r.iterations >= 0;
    rows.push_back(r);
  }
  return rows;
}

std::string format_cdf_csv(const std::vector<CdfPoint>& points) {
  std::string out = "beta_db,cdf_value\n";
  for (const auto& p : points) out += shortest(p.beta_db) + "," + fixed6(p.cdf) + "\n";
  return out;
}

std::string format_hetnet_trace_csv(const std::string& id, const std::vector<HetTraceRecord>& trace) {
  std::string out =
      "scenario_id,seed,sweep_value,scheme,outer_iter,femto_sum_rate,macro_dl_rate,macro_ul_rate\n";
  for (const auto& t : trace)
    out += key_prefix(id, t.key) + "," + std::to_string(t.row.outer_iter) + "," +
           fixed6(t.row.femto_sum_rate) + "," + fixed6(t.row.macro_dl_rate) + "," +
           fixed6(t.row.macro_ul_rate) + "\n";
  return out;
}

std::string format_dc_trace_csv(const std::string& id, const std::vector<DcTraceRecord>& trace) {
  std::string out = "scenario_id,seed,sweep_value,scheme,outer_iter,dc_iter,objective\n";
  char buf[64];
  for (const auto& t : trace) {
    std::snprintf(buf, sizeof buf, "%.9f", t.merit);
    out += key_prefix(id, t.key) + "," + std::to_string(t.outer_iter) + "," +
           std::to_string(t.dc_iter) + "," + buf + "\n";
  }
  return out;
}

std::string format_metadata(const RunOutput& run) {
  nlohmann::ordered_json j;
  j["scenario_id"] = run.config.id;
  j["mode"] = mode_name(run.config.mode);
  j["version"] = library_version();
  j["git_revision"] = library_revision();
  j["seeds"] = run.config.seeds;
  j["rows"] = run.rows.size();
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& r : run.rows)
    if (!r.ok)
      failures.push_back({{"seed", r.seed},
                          {"sweep_value", shortest(r.sweep_value)},
                          {"scheme", r.scheme},
                          {"error", r.error}});
  j["failures"] = failures;
  j["config"] = to_ini(run.config);
  return j.dump(2) + "\n";
}

std::vector<std::string> write_outputs(const RunOutput& run, const std::string& path) {
  std::vector<std::string> written;
  auto put = [&](const std::string& p, const std::string& body) {
    write_file(p, body);
    written.push_back(p);
  };
  if (run.config.mode == ScenarioMode::ThresholdCdf) {
    put(path, format_cdf_csv(run.cdf));
  } else {
    put(path, format_csv(run.rows));
  }
  put(path + ".meta.json", format_metadata(run));
  if (run.config.mode == ScenarioMode::Hetnet)
    put(path + ".hetnet_trace.csv", format_hetnet_trace_csv(run.config.id, run.hetnet_trace));
  if (run.config.dc_trace && run.config.mode != ScenarioMode::ThresholdCdf)
    put(path + ".dc_trace.csv", format_dc_trace_csv(run.config.id, run.dc_trace));
  return written;
}

}  // namespace fdra
