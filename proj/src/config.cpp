#include "fsm4d/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fsm4d {

static bool power_of_two(long long x) { return x > 0 && (x & (x - 1)) == 0; }

void validate(const SystemConfig& cfg) {
  auto fail = [](const std::string& what) { throw ConfigError("invalid config: " + what); };
  if (!(cfg.f_c > 0)) fail("f_c must be > 0");
  if (cfg.N < 2 || !power_of_two(cfg.N)) fail("N must be a power of two >= 2");
  if (!(cfg.d_over_lambda > 0)) fail("d_over_lambda must be > 0");
  if (!(cfg.z0 > 0)) fail("z0 must be > 0");
  if (!(cfg.v_max >= 0)) fail("v_max must be >= 0");
  if (!(cfg.T_int > 0)) fail("T_int must be > 0");
  if (!(cfg.sigma_phi >= 0)) fail("sigma_phi must be >= 0");
  if (!(cfg.c_light > 0)) fail("c_light must be > 0");
  if (cfg.n_mc < 1) fail("n_mc must be >= 1");
  if (cfg.n_t < 2) fail("n_t must be >= 2");
  // time grid must resolve the fastest Doppler phasor: >= 8 samples per cycle
  double cycles = 2.0 * cfg.f_c * cfg.v_max / cfg.c_light * cfg.T_int;
  int n_t_min = std::max(64, 8 * (int)std::ceil(cycles));
  if (cfg.n_t < n_t_min) {
    std::ostringstream os;
    os << "n_t must be >= max(64, 8*ceil(f_D(v_max)*T_int)) = " << n_t_min;
    fail(os.str());
  }
  if (!power_of_two(cfg.A) || !power_of_two(cfg.B) || !power_of_two(cfg.C) ||
      !power_of_two(cfg.qam_order))
    fail("A, B, C, qam_order must be powers of two");
  if ((long long)cfg.A * cfg.B * cfg.C * cfg.qam_order < 2)
    fail("grid must carry at least one bit");
  if (!(cfg.fov_deg > 0 && cfg.fov_deg < 90)) fail("fov_deg must be in (0, 90)");
  if (cfg.B_cb < 1) fail("B_cb must be >= 1");
  if (cfg.N_D < 1) fail("N_D must be >= 1");
}

SystemConfig full_scale(SystemConfig cfg) {
  cfg.N = 4096;
  cfg.n_t = 4096;
  cfg.n_mc = 64;
  return cfg;
}

using nlohmann::json;

SystemConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config: JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("invalid config: top level must be an object");

  SystemConfig cfg;
  const std::set<std::string> known = {
      "f_c", "N", "d_over_lambda", "z0", "v_max", "T_int", "snr_db", "omega",
      "sigma_phi", "alpha_atm", "c_light", "n_mc", "n_t", "seed",
      "A", "B", "C", "qam_order", "fov_deg", "mode", "B_cb", "N_D"};
  for (auto& [key, val] : j.items()) {
    if (!known.count(key)) throw ConfigError("invalid config: unknown key '" + key + "'");
    try {
      if (key == "f_c") cfg.f_c = val.get<double>();
      else if (key == "N") cfg.N = val.get<int>();
      else if (key == "d_over_lambda") cfg.d_over_lambda = val.get<double>();
      else if (key == "z0") cfg.z0 = val.get<double>();
      else if (key == "v_max") cfg.v_max = val.get<double>();
      else if (key == "T_int") cfg.T_int = val.get<double>();
      else if (key == "snr_db") cfg.snr_db = val.get<double>();
      else if (key == "omega") cfg.omega = val.get<double>();
      else if (key == "sigma_phi") cfg.sigma_phi = val.get<double>();
      else if (key == "alpha_atm") cfg.alpha_atm = val.get<double>();
      else if (key == "c_light") cfg.c_light = val.get<double>();
      else if (key == "n_mc") cfg.n_mc = val.get<int>();
      else if (key == "n_t") cfg.n_t = val.get<int>();
      else if (key == "seed") cfg.seed = val.get<uint64_t>();
      else if (key == "A") cfg.A = val.get<int>();
      else if (key == "B") cfg.B = val.get<int>();
      else if (key == "C") cfg.C = val.get<int>();
      else if (key == "qam_order") cfg.qam_order = val.get<int>();
      else if (key == "fov_deg") cfg.fov_deg = val.get<double>();
      else if (key == "B_cb") cfg.B_cb = val.get<int>();
      else if (key == "N_D") cfg.N_D = val.get<int>();
      else if (key == "mode") {
        std::string m = val.get<std::string>();
        if (m == "uniform") cfg.mode = GridMode::Uniform;
        else if (m == "orthogonal") cfg.mode = GridMode::Orthogonal;
        else throw ConfigError("invalid config: mode must be 'uniform' or 'orthogonal'");
      }
    } catch (const json::exception&) {
      throw ConfigError("invalid config: bad type for key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("invalid config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

std::string config_to_json(const SystemConfig& cfg) {
  json j;
  j["f_c"] = cfg.f_c;
  j["N"] = cfg.N;
  j["d_over_lambda"] = cfg.d_over_lambda;
  j["z0"] = cfg.z0;
  j["v_max"] = cfg.v_max;
  j["T_int"] = cfg.T_int;
  j["snr_db"] = cfg.snr_db;
  j["omega"] = cfg.omega;
  j["sigma_phi"] = cfg.sigma_phi;
  j["alpha_atm"] = cfg.alpha_atm;
  j["c_light"] = cfg.c_light;
  j["n_mc"] = cfg.n_mc;
  j["n_t"] = cfg.n_t;
  j["seed"] = cfg.seed;
  j["A"] = cfg.A;
  j["B"] = cfg.B;
  j["C"] = cfg.C;
  j["qam_order"] = cfg.qam_order;
  j["fov_deg"] = cfg.fov_deg;
  j["mode"] = cfg.mode == GridMode::Uniform ? "uniform" : "orthogonal";
  j["B_cb"] = cfg.B_cb;
  j["N_D"] = cfg.N_D;
  return j.dump(2);
}

} // namespace fsm4d
