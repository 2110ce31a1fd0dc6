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

#include "fdra/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "fdra/errors.hpp"

namespace fdra {

const char* mode_name(ScenarioMode m) {
  switch (m) {
    case ScenarioMode::SingleCell: return "single_cell";
    case ScenarioMode::Hetnet: return "hetnet";
    case ScenarioMode::ThresholdCdf: return "threshold_cdf";
  }
  return "?";
}

const char* sweep_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::None: return "none";
    case SweepVariable::BetaDb: return "beta_db";
    case SweepVariable::FdFraction: return "fd_fraction";
    case SweepVariable::RMin: return "r_min";
    case SweepVariable::UserCount: return "user_count";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "-inf") return -std::numeric_limits<double>::infinity();
  if (v == "inf") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError(key, "expected a number, got '" + v + "'");
}

long long to_integer(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  long long x = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& raw) {
  long long x = to_integer(key, raw);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
    throw ConfigError(key, "integer out of range");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  for (const auto& item : split_list(raw)) out.push_back(to_double(key, item));
  return out;
}

// Accepts "1,2,5" and inclusive ranges such as "1-20".
std::vector<std::uint64_t> to_seeds(const std::string& key, const std::string& raw) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split_list(raw)) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      long long s = to_integer(key, item);
      if (s < 0) throw ConfigError(key, "seeds must be non-negative");
      out.push_back(static_cast<std::uint64_t>(s));
      continue;
    }
    long long lo = to_integer(key, item.substr(0, dash));
    long long hi = to_integer(key, item.substr(dash + 1));
    if (lo < 0 || hi < lo) throw ConfigError(key, "invalid seed range '" + item + "'");
    for (long long s = lo; s <= hi; ++s) out.push_back(static_cast<std::uint64_t>(s));
  }
  return out;
}

std::string fmt(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char tmp[64];
    std::snprintf(tmp, sizeof tmp, "%.*g", prec, x);
    if (std::strtod(tmp, nullptr) == x) return tmp;
  }
  return buf;
}

template <class T>
std::string join(const std::vector<T>& xs, const std::function<std::string(const T&)>& f) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + f(xs[i]);
  return out;
}

struct Setting {
  const char* key;
  std::function<void(ScenarioConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define FDRA_DOUBLE(KEY, FIELD)                                                     \
  Setting {                                                                         \
    KEY, [](ScenarioConfig& c, const std::string& k, const std::string& v) {        \
      c.FIELD = to_double(k, v);                                                    \
    },                                                                              \
        [](const ScenarioConfig& c) { return fmt(c.FIELD); }                        \
  }
#define FDRA_INT(KEY, FIELD)                                                        \
  Setting {                                                                         \
    KEY, [](ScenarioConfig& c, const std::string& k, const std::string& v) {        \
      c.FIELD = to_int(k, v);                                                       \
    },                                                                              \
        [](const ScenarioConfig& c) { return std::to_string(c.FIELD); }             \
  }

const std::vector<Setting>& settings() {
  static const std::vector<Setting> table = {
      {"scenario.id", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.id = trim(v); },
       [](const ScenarioConfig& c) { return c.id; }},
      {"scenario.mode",
       [](ScenarioConfig& c, const std::string& k, const std::string& raw) {
         const std::string v = trim(raw);
         for (auto m : {ScenarioMode::SingleCell, ScenarioMode::Hetnet, ScenarioMode::ThresholdCdf})
           if (v == mode_name(m)) {
             c.mode = m;
             return;
           }
         throw ConfigError(k, "unknown mode '" + v + "'");
       },
       [](const ScenarioConfig& c) { return std::string(mode_name(c.mode)); }},
      {"scenario.output", [](ScenarioConfig& c, const std::string&, const std::string& v) { c.output = trim(v); },
       [](const ScenarioConfig& c) { return c.output; }},
      {"scenario.dc_trace",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.dc_trace = to_bool(k, v); },
       [](const ScenarioConfig& c) { return std::string(c.dc_trace ? "true" : "false"); }},

      {"environment.pathloss",
       [](ScenarioConfig& c, const std::string& k, const std::string& raw) {
         const std::string v = trim(raw);
         if (v == "hata_urban") c.env.pathloss_kind = PathlossKind::HataUrban;
         else if (v == "itu_indoor") c.env.pathloss_kind = PathlossKind::ItuIndoor;
         else throw ConfigError(k, "expected hata_urban or itu_indoor, got '" + v + "'");
       },
       [](const ScenarioConfig& c) {
         return std::string(c.env.pathloss_kind == PathlossKind::HataUrban ? "hata_urban"
                                                                            : "itu_indoor");
       }},
      FDRA_DOUBLE("environment.carrier_freq_mhz", env.carrier_freq_mhz),
      FDRA_DOUBLE("environment.bs_height_m", env.bs_height_m),
      FDRA_DOUBLE("environment.ue_height_m", env.ue_height_m),
      FDRA_DOUBLE("environment.ue_pair_height_m", env.ue_pair_height_m),
      FDRA_DOUBLE("environment.cell_radius_m", env.cell_radius_m),
      FDRA_DOUBLE("environment.itu_exponent", env.itu_exponent),
      FDRA_DOUBLE("environment.itu_floor_penalty_db", env.itu_floor_penalty_db),
      FDRA_DOUBLE("environment.noise_density_dbm_hz", env.noise_density_dbm_hz),
      FDRA_DOUBLE("environment.subchannel_bw_hz", env.subchannel_bw_hz),
      FDRA_INT("environment.num_subchannels", env.num_subchannels),
      FDRA_DOUBLE("environment.min_distance_m", env.min_distance_m),
      {"environment.unit_fading",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.env.unit_fading = to_bool(k, v); },
       [](const ScenarioConfig& c) { return std::string(c.env.unit_fading ? "true" : "false"); }},

      FDRA_DOUBLE("power.bs_power_dbm", bs_power_dbm),
      FDRA_DOUBLE("power.ue_power_dbm", ue_power_dbm),
      FDRA_DOUBLE("power.beta_db", beta_db),

      FDRA_INT("population.users", users),
      FDRA_DOUBLE("population.fd_fraction", fd_fraction),
      {"population.dl_weights",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.dl_weights = to_doubles(k, v); },
       [](const ScenarioConfig& c) { return join<double>(c.dl_weights, fmt); }},
      {"population.ul_weights",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.ul_weights = to_doubles(k, v); },
       [](const ScenarioConfig& c) { return join<double>(c.ul_weights, fmt); }},

      FDRA_DOUBLE("hetnet.macro_radius_m", layout.macro_radius_m),
      FDRA_DOUBLE("hetnet.femto_radius_m", layout.femto_radius_m),
      FDRA_DOUBLE("hetnet.femto_ring_m", layout.femto_ring_m),
      FDRA_INT("hetnet.macro_users", layout.macro_users),
      {"hetnet.femto_users",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.layout.femto_users.clear();
         for (const auto& item : split_list(v)) c.layout.femto_users.push_back(to_int(k, item));
       },
       [](const ScenarioConfig& c) {
         return join<int>(c.layout.femto_users, [](const int& x) { return std::to_string(x); });
       }},
      FDRA_DOUBLE("hetnet.femto_bs_power_dbm", femto_bs_power_dbm),
      FDRA_DOUBLE("hetnet.r_mind", r_mind),
      FDRA_DOUBLE("hetnet.r_minu", r_minu),
      FDRA_INT("hetnet.outer_iterations", outer_iterations),
      FDRA_DOUBLE("hetnet.tolerance", hetnet_tolerance),

      FDRA_INT("threshold.draws", threshold_draws),
      {"threshold.pair_placement",
       [](ScenarioConfig& c, const std::string& k, const std::string& raw) {
         const std::string v = trim(raw);
         if (v == "realized") c.pair_placement = PairPlacement::Realized;
         else if (v == "independent") c.pair_placement = PairPlacement::Independent;
         else throw ConfigError(k, "expected realized or independent, got '" + v + "'");
       },
       [](const ScenarioConfig& c) {
         return std::string(c.pair_placement == PairPlacement::Realized ? "realized" : "independent");
       }},
      FDRA_DOUBLE("threshold.beta_min_db", cdf_beta_min_db),
      FDRA_DOUBLE("threshold.beta_max_db", cdf_beta_max_db),
      FDRA_DOUBLE("threshold.beta_step_db", cdf_beta_step_db),

      FDRA_DOUBLE("dc.tolerance", dc_tolerance),
      FDRA_INT("dc.max_iterations", dc_max_iterations),

      {"run.schemes",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         c.schemes.clear();
         for (const auto& item : split_list(v)) {
           auto s = parse_scheme(item);
           if (!s) throw ConfigError(k, "unknown scheme '" + item + "'");
           c.schemes.push_back(*s);
         }
       },
       [](const ScenarioConfig& c) {
         return join<SchemeKind>(c.schemes, [](const SchemeKind& s) { return std::string(scheme_name(s)); });
       }},
      {"run.seeds", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.seeds = to_seeds(k, v); },
       [](const ScenarioConfig& c) {
         return join<std::uint64_t>(c.seeds, [](const std::uint64_t& s) { return std::to_string(s); });
       }},
      {"run.sweep_variable",
       [](ScenarioConfig& c, const std::string& k, const std::string& raw) {
         const std::string v = trim(raw);
         for (auto s : {SweepVariable::None, SweepVariable::BetaDb, SweepVariable::FdFraction,
                        SweepVariable::RMin, SweepVariable::UserCount})
           if (v == sweep_name(s)) {
             c.sweep = s;
             return;
           }
         throw ConfigError(k, "unknown sweep variable '" + v + "'");
       },
       [](const ScenarioConfig& c) { return std::string(sweep_name(c.sweep)); }},
      {"run.sweep_values",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.sweep_values = to_doubles(k, v); },
       [](const ScenarioConfig& c) { return join<double>(c.sweep_values, fmt); }},
      FDRA_INT("run.threads", threads),
  };
  return table;
}

#undef FDRA_DOUBLE
#undef FDRA_INT

}  // namespace

void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& s : settings())
    if (key == s.key) {
      s.set(cfg, key, value);
      return;
    }
  throw ConfigError(key, "unknown key");
}

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const char* key, const std::string& what) {
    if (!ok) throw ConfigError(key, what);
  };
  require(!id.empty(), "scenario.id", "must not be empty");
  require(id.find_first_of(",\"\n") == std::string::npos, "scenario.id",
          "must not contain commas, quotes or newlines");
  env.validate();
  require(std::isfinite(bs_power_dbm), "power.bs_power_dbm", "must be finite");
  require(std::isfinite(ue_power_dbm), "power.ue_power_dbm", "must be finite");
  require(!std::isnan(beta_db) && beta_db <= 0.0, "power.beta_db",
          "must be <= 0 dB (use -inf for perfect cancellation)");
  require(users >= 1, "population.users", "must be at least 1");
  require(fd_fraction >= 0.0 && fd_fraction <= 1.0, "population.fd_fraction",
          "must lie in [0, 1]");
  for (double w : dl_weights) require(w >= 0.0 && std::isfinite(w), "population.dl_weights", "must be >= 0");
  for (double w : ul_weights) require(w >= 0.0 && std::isfinite(w), "population.ul_weights", "must be >= 0");
  const bool resizes_users = sweep == SweepVariable::UserCount;
  require(dl_weights.empty() || (!resizes_users && static_cast<int>(dl_weights.size()) == users),
          "population.dl_weights", "needs one entry per user");
  require(ul_weights.empty() || (!resizes_users && static_cast<int>(ul_weights.size()) == users),
          "population.ul_weights", "needs one entry per user");
  require(layout.macro_radius_m > 0, "hetnet.macro_radius_m", "must be positive");
  require(layout.femto_radius_m > 0, "hetnet.femto_radius_m", "must be positive");
  require(layout.femto_ring_m >= 0, "hetnet.femto_ring_m", "must be >= 0");
  require(layout.macro_users >= 1, "hetnet.macro_users", "must be at least 1");
  require(!layout.femto_users.empty(), "hetnet.femto_users", "at least one femto cell required");
  for (int k : layout.femto_users) require(k >= 1, "hetnet.femto_users", "each femto needs a user");
  require(std::isfinite(femto_bs_power_dbm), "hetnet.femto_bs_power_dbm", "must be finite");
  require(r_mind >= 0 && std::isfinite(r_mind), "hetnet.r_mind", "must be >= 0");
  require(r_minu >= 0 && std::isfinite(r_minu), "hetnet.r_minu", "must be >= 0");
  require(outer_iterations >= 1, "hetnet.outer_iterations", "must be at least 1");
  require(hetnet_tolerance > 0, "hetnet.tolerance", "must be positive");
  require(threshold_draws >= 1, "threshold.draws", "must be at least 1");
  require(cdf_beta_step_db > 0, "threshold.beta_step_db", "must be positive");
  require(cdf_beta_min_db < cdf_beta_max_db, "threshold.beta_min_db", "must be below beta_max_db");
  require(dc_tolerance > 0, "dc.tolerance", "must be positive");
  require(dc_max_iterations >= 1, "dc.max_iterations", "must be at least 1");
  require(!seeds.empty(), "run.seeds", "must not be empty");
  require(threads >= 0, "run.threads", "must be >= 0");
  if (mode != ScenarioMode::ThresholdCdf) require(!schemes.empty(), "run.schemes", "must not be empty");
  if (mode == ScenarioMode::Hetnet) {
    require(dl_weights.empty() && ul_weights.empty(), "population.dl_weights",
            "per-user weights are not supported in hetnet mode");
  }
  if (mode == ScenarioMode::Hetnet)
    for (auto s : schemes)
      require(s == SchemeKind::FD_FD || s == SchemeKind::FD_HD, "run.schemes",
              "hetnet mode supports FD-FD and FD-HD only");
  if (sweep == SweepVariable::None) return;
  require(!sweep_values.empty(), "run.sweep_values", "must not be empty when sweeping");
  require(mode != ScenarioMode::ThresholdCdf, "run.sweep_variable",
          "threshold_cdf mode does not sweep");
  for (double x : sweep_values) {
    switch (sweep) {
      case SweepVariable::BetaDb:
        require(!std::isnan(x) && x <= 0.0, "run.sweep_values", "beta_db values must be <= 0");
        break;
      case SweepVariable::FdFraction:
        require(x >= 0.0 && x <= 1.0, "run.sweep_values", "fd_fraction values must lie in [0, 1]");
        break;
      case SweepVariable::RMin:
        require(mode == ScenarioMode::Hetnet, "run.sweep_variable", "r_min needs hetnet mode");
        require(x >= 0.0 && std::isfinite(x), "run.sweep_values", "r_min values must be >= 0");
        break;
      case SweepVariable::UserCount:
        require(mode == ScenarioMode::SingleCell, "run.sweep_variable",
                "user_count needs single_cell mode");
        require(x >= 1.0 && x == std::floor(x), "run.sweep_values",
                "user_count values must be positive integers");
        break;
      case SweepVariable::None: break;
    }
  }
}

ScenarioConfig parse_config(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }
  ScenarioConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError(section, "keys must live inside a [section]");
    for (const auto& [key, value] : body) apply_setting(cfg, section + "." + key, value.data());
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_ini(const ScenarioConfig& cfg) {
  std::string out, current;
  for (const auto& s : settings()) {
    const std::string key = s.key;
    const auto dot = key.find('.');
    const std::string section = key.substr(0, dot);
    if (section != current) {
      out += (current.empty() ? "" : "\n") + ("[" + section + "]\n");
      current = section;
    }
    out += key.substr(dot + 1) + " = " + s.get(cfg) + "\n";
  }
  return out;
}

std::vector<std::string> preset_names() {
  return {"indoor_single", "outdoor_single", "hetnet_fig11"};
}

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  c.id = name;
  c.output = name + ".csv";
  c.env.num_subchannels = 64;
  c.env.subchannel_bw_hz = 150e3;
  c.env.carrier_freq_mhz = 2000.0;
  c.env.noise_density_dbm_hz = -170.0;
  c.ue_power_dbm = 23.0;
  c.users = 20;
  c.fd_fraction = 1.0;
  if (name == "outdoor_single") {
    c.env.pathloss_kind = PathlossKind::HataUrban;
    c.env.cell_radius_m = 1000.0;
    c.env.min_distance_m = 10.0;
    c.bs_power_dbm = 43.0;
    c.schemes = {SchemeKind::HD_D, SchemeKind::HD_U, SchemeKind::HHD,
                 SchemeKind::FD_HD, SchemeKind::FD_FD, SchemeKind::UpperBound};
  } else if (name == "indoor_single") {
    c.env.pathloss_kind = PathlossKind::ItuIndoor;
    c.env.cell_radius_m = 20.0;
    c.env.min_distance_m = 1.0;
    c.bs_power_dbm = 24.0;
    c.schemes = {SchemeKind::HD_D, SchemeKind::HD_U, SchemeKind::HHD,
                 SchemeKind::FD_HD, SchemeKind::FD_FD, SchemeKind::UpperBound};
  } else if (name == "hetnet_fig11") {
    c.mode = ScenarioMode::Hetnet;
    c.env.pathloss_kind = PathlossKind::HataUrban;
    c.env.cell_radius_m = 500.0;
    c.env.min_distance_m = 10.0;
    c.bs_power_dbm = 43.0;
    c.femto_bs_power_dbm = 24.0;
    c.layout = HetLayout{};
    c.fd_fraction = 0.5;
    c.r_mind = 35.0;
    c.r_minu = 35.0;
    c.schemes = {SchemeKind::FD_FD};
  } else {
    throw UnknownPresetError("unknown preset '" + name + "'");
  }
  c.validate();
  return c;
}

ScenarioConfig desk_scale(ScenarioConfig c) {
  const double full = c.env.num_subchannels;
  c.env.num_subchannels = 16;
  c.r_mind *= 16.0 / full;
  c.r_minu *= 16.0 / full;
  if (c.mode != ScenarioMode::Hetnet) c.users = 10;
  c.validate();
  return c;
}

}  // namespace fdra
