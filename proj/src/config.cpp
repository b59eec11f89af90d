// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The vlc-slipt Authors

#include "vlc/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace vlc {

using nlohmann::json;

Algorithm parse_algorithm(const std::string& name) {
  if (name == "iterative") return Algorithm::kIterative;
  if (name == "baseline") return Algorithm::kBaseline;
  if (name == "oracle") return Algorithm::kOracle;
  if (name == "all") return Algorithm::kAll;
  throw ConfigError("unknown algorithm '" + name + "'");
}

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kIterative:
      return "iterative";
    case Algorithm::kBaseline:
      return "baseline";
    case Algorithm::kOracle:
      return "oracle";
    case Algorithm::kAll:
      return "all";
  }
  return "?";
}

void ScenarioConfig::validate() const {
  try {
    phys.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(trials >= 1, "trials must be >= 1");
  require(n_iu >= 0 && n_ehu >= 0 && n_iu + n_ehu > 0, "need at least one user");
  require(ap_rows > 0 && ap_cols > 0, "AP grid must be nonempty");
  require(n_iu < ap_rows * ap_cols, "n_iu must be smaller than the AP count");
  require(room_dims.minCoeff() > 0, "room dimensions must be positive");
  require(user_height >= 0 && user_height < room_dims.z(), "user height must be below the ceiling");
  require(ap_spacing >= 0, "AP spacing must be nonnegative");
  require(!fov_list.empty() && !alpha_list.empty() && !eta_list.empty(),
          "fov, alpha and eta lists must be nonempty");
  for (double f : fov_list) require(f > 0 && f < 90, "FoV values must lie in (0, 90) degrees");
  for (double a : alpha_list) require(a >= 0 && a <= 1, "alpha values must lie in [0, 1]");
  for (double e : eta_list) require(e >= 0 && e <= 1, "eta values must lie in [0, 1]");
  require(rate_threshold >= 0 && energy_threshold >= 0, "thresholds must be nonnegative");
  require(omega > 0, "omega must be positive");
  require(tol_rel > 0 && max_iter >= 1 && dual_step0 > 0, "solver tolerances must be positive");
  require(oracle_grid_points >= 2, "oracle_grid_points must be >= 2");
  require(threads >= 0, "threads must be >= 0");
}

namespace {

using Setter = std::function<void(ScenarioConfig&, const json&)>;

double number(const json& v) {
  if (!v.is_number()) throw ConfigError("expected a number, got " + v.dump());
  return v.get<double>();
}

int integer(const json& v) {
  if (!v.is_number_integer()) throw ConfigError("expected an integer, got " + v.dump());
  return v.get<int>();
}

std::vector<double> numbers(const json& v) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError("expected a number or list, got " + v.dump());
  std::vector<double> out;
  for (const json& e : v) out.push_back(number(e));
  return out;
}

Setter scalar(double PhysParams::*field, double unit = 1.0) {
  return [field, unit](ScenarioConfig& c, const json& v) { c.phys.*field = number(v) * unit; };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"bandwidth_hz", scalar(&PhysParams::bandwidth_W)},
      {"pd_area_iu_m2", scalar(&PhysParams::pd_area_iu)},
      {"pd_area_iu_cm2", scalar(&PhysParams::pd_area_iu, 1e-4)},
      {"pd_area_ehu_m2", scalar(&PhysParams::pd_area_ehu)},
      {"optical_filter_gain", scalar(&PhysParams::optical_filter_gain)},
      {"half_intensity_angle_deg", scalar(&PhysParams::half_intensity_angle)},
      {"conv_factor_a_per_w", scalar(&PhysParams::conv_factor_rho)},
      {"refractive_index", scalar(&PhysParams::refractive_index)},
      {"bias_max_A", scalar(&PhysParams::bias_max_IH)},
      {"bias_max_mA", scalar(&PhysParams::bias_max_IH, 1e-3)},
      {"bias_min_A", scalar(&PhysParams::bias_min_IL)},
      {"bias_min_mA", scalar(&PhysParams::bias_min_IL, 1e-3)},
      {"fill_factor", scalar(&PhysParams::fill_factor)},
      {"led_power_w_per_a", scalar(&PhysParams::led_power_Popt)},
      {"thermal_voltage_V", scalar(&PhysParams::thermal_voltage_Vt)},
      {"thermal_voltage_mV", scalar(&PhysParams::thermal_voltage_Vt, 1e-3)},
      {"dark_current_A", scalar(&PhysParams::dark_current_I0)},
      {"noise_psd_a2_per_hz", scalar(&PhysParams::noise_psd_N0)},
      {"wall_reflectance", scalar(&PhysParams::wall_reflectance)},
      {"wall_patch_edge_m", scalar(&PhysParams::wall_patch_edge)},
      {"room_m",
       [](ScenarioConfig& c, const json& v) {
         const auto d = numbers(v);
         if (d.size() != 3) throw ConfigError("room_m needs [x, y, z]");
         c.room_dims = Point(d[0], d[1], d[2]);
       }},
      {"user_height_m", [](ScenarioConfig& c, const json& v) { c.user_height = number(v); }},
      {"ap_grid",
       [](ScenarioConfig& c, const json& v) {
         if (!v.is_array() || v.size() != 2) throw ConfigError("ap_grid needs [rows, cols]");
         c.ap_rows = integer(v[0]);
         c.ap_cols = integer(v[1]);
       }},
      {"ap_spacing_m", [](ScenarioConfig& c, const json& v) { c.ap_spacing = number(v); }},
      {"n_iu", [](ScenarioConfig& c, const json& v) { c.n_iu = integer(v); }},
      {"n_ehu", [](ScenarioConfig& c, const json& v) { c.n_ehu = integer(v); }},
      {"fov_deg", [](ScenarioConfig& c, const json& v) { c.fov_list = numbers(v); }},
      {"alpha", [](ScenarioConfig& c, const json& v) { c.alpha_list = numbers(v); }},
      {"eta", [](ScenarioConfig& c, const json& v) { c.eta_list = numbers(v); }},
      {"rate_threshold_bps", [](ScenarioConfig& c, const json& v) { c.rate_threshold = number(v); }},
      {"energy_threshold_W",
       [](ScenarioConfig& c, const json& v) { c.energy_threshold = number(v); }},
      {"energy_threshold_uJ",
       [](ScenarioConfig& c, const json& v) { c.energy_threshold = number(v) * 1e-6; }},
      {"omega", [](ScenarioConfig& c, const json& v) { c.omega = number(v); }},
      {"trials", [](ScenarioConfig& c, const json& v) { c.trials = integer(v); }},
      {"seed",
       [](ScenarioConfig& c, const json& v) {
         if (!v.is_number_unsigned()) throw ConfigError("seed must be a nonnegative integer");
         c.seed = v.get<std::uint64_t>();
       }},
      {"algorithm",
       [](ScenarioConfig& c, const json& v) {
         if (!v.is_string()) throw ConfigError("algorithm must be a string");
         c.algorithm = parse_algorithm(v.get<std::string>());
       }},
      {"tol_rel", [](ScenarioConfig& c, const json& v) { c.tol_rel = number(v); }},
      {"max_iter", [](ScenarioConfig& c, const json& v) { c.max_iter = integer(v); }},
      {"dual_step0", [](ScenarioConfig& c, const json& v) { c.dual_step0 = number(v); }},
      {"randomize_duals",
       [](ScenarioConfig& c, const json& v) {
         if (!v.is_boolean()) throw ConfigError("randomize_duals must be true or false");
         c.randomize_duals = v.get<bool>();
       }},
      {"oracle_grid_points",
       [](ScenarioConfig& c, const json& v) { c.oracle_grid_points = integer(v); }},
      {"threads", [](ScenarioConfig& c, const json& v) { c.threads = integer(v); }},
      {"out",
       [](ScenarioConfig& c, const json& v) {
         if (!v.is_string()) throw ConfigError("out must be a string");
         c.out_path = v.get<std::string>();
       }},
  };
  return table;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ScenarioConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const json::exception& e) {
      throw ConfigError("bad value for '" + key + "': " + e.what());
    } catch (const ConfigError& e) {
      throw ConfigError("bad value for '" + key + "': " + e.what());
    }
  }
  cfg.phys.fov_semi_angle = cfg.fov_list.front();
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace vlc
