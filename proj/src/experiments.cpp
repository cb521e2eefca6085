#include "fsm4d/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>

#include "fsm4d/detector.hpp"
#include "fsm4d/dfnt.hpp"
#include "fsm4d/metrics.hpp"
#include "fsm4d/rng.hpp"

namespace fsm4d {

std::vector<double> velocity_sweep_grid() {
  std::vector<double> v(41);
  for (int i = 0; i < 41; ++i) v[i] = 5.0 * i;
  return v;
}

std::uint64_t config_hash(const SystemConfig& cfg) {
  std::string dump = config_to_json(cfg); // keys sorted, so the hash is canonical
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string version_string() { return "fsm4d 0.1.0"; }

namespace {

std::string fmt_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

nlohmann::json base_metadata(const std::string& name, const SystemConfig& cfg) {
  nlohmann::json m;
  m["experiment"] = name;
  m["version"] = version_string();
  m["seed"] = cfg.seed;
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  m["config_hash"] = buf;
  m["config"] = nlohmann::json::parse(config_to_json(cfg));
  return m;
}

nlohmann::json scheme_names_json(const std::vector<Scheme>& schemes) {
  nlohmann::json a = nlohmann::json::array();
  for (Scheme s : schemes) a.push_back(scheme_name(s));
  return a;
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

MeanStd mean_std(const double* x, int n) {
  MeanStd r;
  for (int i = 0; i < n; ++i) r.mean += x[i];
  r.mean /= n;
  if (n > 1) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double d = x[i] - r.mean;
      acc += d * d;
    }
    r.stddev = std::sqrt(acc / (n - 1));
  }
  return r;
}

} // namespace

RhoSweep run_rho_sweep(const SystemConfig& cfg, const std::vector<Scheme>& schemes) {
  DerivedGeometry geom = derive_geometry(cfg);
  TimeGrid tg(cfg.n_t, cfg.T_int);

  RhoSweep sw;
  sw.v = velocity_sweep_grid();
  sw.schemes = schemes;
  const int nv = static_cast<int>(sw.v.size());
  const int ns = static_cast<int>(schemes.size());
  const int nm = cfg.n_mc;

  SystemConfig ref_cfg = cfg;
  ref_cfg.sigma_phi = 0.0;
  Trajectory ref_traj{0.0, 0.0, cfg.z0};
  ProjectionSeries ref = project_tracking(ref_cfg, geom, ref_traj, tg, 0);
  sw.g_ref = coherent_gain(ref.p_nearfield, tg, 0.0);

  std::vector<double> rho(static_cast<size_t>(nv) * ns * nm);
  auto run_velocity = [&](int vi) {
    for (int trial = 0; trial < nm; ++trial) {
      SplitMix64 traj_rng(derive_stream(cfg.seed,
                                        (static_cast<std::uint64_t>(vi) << 3) | kStreamTrajectory,
                                        trial));
      double x0 = (traj_rng.uniform() - 0.5) * geom.w_spot;
      Trajectory traj{x0, sw.v[vi], cfg.z0};
      std::uint64_t noise_seed =
          derive_stream(cfg.seed, (static_cast<std::uint64_t>(vi) << 3) | kStreamPhaseNoise, trial);
      ProjectionSeries ps = project_tracking(cfg, geom, traj, tg, noise_seed);
      for (int si = 0; si < ns; ++si) {
        double f_hat = scheme_temporal_frequency(schemes[si], cfg, sw.v[vi]);
        const auto& base =
            schemes[si] == Scheme::OtfsStyle ? ps.p_farfield : ps.p_nearfield;
        double g = coherent_gain(base, tg, f_hat);
        rho[(static_cast<size_t>(vi) * ns + si) * nm + trial] = g / sw.g_ref;
      }
    }
  };

  {
    std::vector<std::future<void>> futs;
    futs.reserve(nv);
    for (int vi = 0; vi < nv; ++vi)
      futs.push_back(std::async(std::launch::async, run_velocity, vi));
    for (auto& f : futs) f.get();
  }

  double snr_lin = std::pow(10.0, cfg.snr_db / 10.0);
  auto alloc = [&](std::vector<std::vector<double>>& m) {
    m.assign(ns, std::vector<double>(nv, 0.0));
  };
  alloc(sw.mean_rho);
  alloc(sw.std_rho);
  alloc(sw.mean_db);
  alloc(sw.std_db);
  alloc(sw.mean_se);
  alloc(sw.std_se);

  std::vector<double> db(nm), se(nm);
  for (int si = 0; si < ns; ++si) {
    for (int vi = 0; vi < nv; ++vi) {
      const double* r = &rho[(static_cast<size_t>(vi) * ns + si) * nm];
      for (int t = 0; t < nm; ++t) {
        double clamped = std::max(r[t], 1e-300);
        db[t] = 20.0 * std::log10(clamped);
        se[t] = spectral_efficiency(r[t], snr_lin);
      }
      MeanStd a = mean_std(r, nm);
      sw.mean_rho[si][vi] = a.mean;
      sw.std_rho[si][vi] = a.stddev;
      MeanStd b = mean_std(db.data(), nm);
      sw.mean_db[si][vi] = b.mean;
      sw.std_db[si][vi] = b.stddev;
      MeanStd c = mean_std(se.data(), nm);
      sw.mean_se[si][vi] = c.mean;
      sw.std_se[si][vi] = c.stddev;
    }
  }

  sw.sinc_analytic.resize(nv);
  for (int vi = 0; vi < nv; ++vi)
    sw.sinc_analytic[vi] =
        std::abs(sinc_norm(doppler_frequency(sw.v[vi], cfg) * cfg.T_int));
  return sw;
}

namespace {

ExperimentResult sweep_experiment(const std::string& name, const SystemConfig& cfg,
                                  const std::vector<Scheme>& schemes,
                                  const char* y_prefix,
                                  const std::vector<std::vector<double>> RhoSweep::*mean,
                                  const std::vector<std::vector<double>> RhoSweep::*stddev,
                                  bool with_sinc) {
  RhoSweep sw = run_rho_sweep(cfg, schemes);
  ExperimentResult res;
  res.name = name;
  res.columns.push_back("v");
  res.data.push_back(sw.v);
  for (size_t si = 0; si < schemes.size(); ++si) {
    std::string tag = scheme_name(schemes[si]);
    res.columns.push_back(y_prefix + tag);
    res.data.push_back((sw.*mean)[si]);
    res.columns.push_back("std_" + tag);
    res.data.push_back((sw.*stddev)[si]);
  }
  if (with_sinc) {
    res.columns.push_back("sinc_analytic");
    res.data.push_back(sw.sinc_analytic);
  }
  res.metadata = base_metadata(name, cfg);
  res.metadata["schemes"] = scheme_names_json(schemes);
  res.metadata["g_ref"] = sw.g_ref;
  return res;
}

} // namespace

ExperimentResult run_corr_sweep(const SystemConfig& cfg, const RunOptions& opts) {
  return sweep_experiment("corr_sweep", cfg, opts.schemes, "rho_",
                          &RhoSweep::mean_rho, &RhoSweep::std_rho, true);
}

ExperimentResult run_abs_gain(const SystemConfig& cfg, const RunOptions& opts) {
  ExperimentResult res =
      sweep_experiment("abs_gain", cfg, opts.schemes, "gain_db_",
                       &RhoSweep::mean_db, &RhoSweep::std_db, false);
  res.metadata["gain_reference"] = "clean static broadside focus (0 dB)";
  return res;
}

ExperimentResult run_spec_eff(const SystemConfig& cfg, const RunOptions& opts) {
  ExperimentResult res = sweep_experiment("spec_eff", cfg, opts.schemes, "se_",
                                          &RhoSweep::mean_se, &RhoSweep::std_se, false);
  res.metadata["snr_db"] = cfg.snr_db;
  return res;
}

ExperimentResult run_btsm_quant(const SystemConfig& cfg, const RunOptions&) {
  std::vector<Scheme> schemes{Scheme::Btsm};
  ExperimentResult res = sweep_experiment("btsm_quant", cfg, schemes, "rho_",
                                          &RhoSweep::mean_rho, &RhoSweep::std_rho, false);
  res.metadata["codebook"] = btsm_codebook(cfg);
  res.metadata["codebook_size_rho_0.9"] = btsm_codebook_size(0.9, cfg);
  res.metadata["codebook_size_rho_0.5"] = btsm_codebook_size(0.5, cfg);
  res.metadata["inverse_sinc_0.9"] = inverse_sinc(0.9);
  res.metadata["inverse_sinc_0.5"] = inverse_sinc(0.5);
  return res;
}

ExperimentResult run_capacity(const SystemConfig& cfg, const RunOptions&) {
  double snr_lin = std::pow(10.0, cfg.snr_db / 10.0);
  const std::vector<Scheme> schemes{Scheme::Ldma, Scheme::Ttd, Scheme::Fsm};

  int k_top = 2 * multiplexing_capacity(Scheme::Fsm, cfg);
  ExperimentResult res;
  res.name = "capacity";
  res.columns = {"K"};
  res.data.emplace_back();
  for (int k = 1; k <= k_top; ++k) res.data[0].push_back(k);

  res.metadata = base_metadata("capacity", cfg);
  res.metadata["schemes"] = scheme_names_json(schemes);
  for (Scheme s : schemes) {
    int k_max = multiplexing_capacity(s, cfg);
    std::vector<double> col;
    col.reserve(k_top);
    for (int k = 1; k <= k_top; ++k) col.push_back(sum_rate(snr_lin, k, k_max));
    res.columns.push_back(std::string("rate_") + scheme_name(s));
    res.data.push_back(std::move(col));
    res.metadata["k_max"][scheme_name(s)] = k_max;
    res.metadata["peak"][scheme_name(s)] = peak_sum_rate(snr_lin, k_max);
  }

  // velocity-axis depth sweep: A=B=4 fixed, C doubling doubles K_max
  nlohmann::json c_sweep = nlohmann::json::array();
  for (int c : {1, 2, 4, 8}) {
    SystemConfig cc = cfg;
    cc.A = 4;
    cc.B = 4;
    cc.C = c;
    int k_max = multiplexing_capacity(Scheme::Fsm, cc);
    c_sweep.push_back({{"C", c},
                       {"k_max", k_max},
                       {"peak", peak_sum_rate(snr_lin, k_max)}});
  }
  res.metadata["c_sweep"] = c_sweep;
  return res;
}

ExperimentResult run_nf_spread(const SystemConfig& cfg, const RunOptions&) {
  DerivedGeometry geom = derive_geometry(cfg);
  DopplerProfile p = nf_doppler_profile(geom, cfg.v_max, cfg.z0);
  ExperimentResult res;
  res.name = "nf_spread";
  res.columns = {"xi_m", "f_true_hz", "f_dev_hz"};
  res.data = {p.xi, p.f_true, p.f_dev};
  res.metadata = base_metadata("nf_spread", cfg);
  res.metadata["v"] = cfg.v_max;
  res.metadata["f_plane_hz"] = p.f_plane;
  return res;
}

ExperimentResult run_dfnt_bench(const SystemConfig& cfg, const RunOptions& opts) {
  BenchResult bench = bench_scaling(cfg, opts.bench_sizes, 10.0, 1000, opts.bench_reps);
  ExperimentResult res;
  res.name = "dfnt_bench";
  res.columns = {"N", "flops_model", "t_dfnt_ns", "t_direct_ns",
                 "slope_dfnt", "slope_direct"};
  res.data.assign(6, {});
  for (const BenchRow& row : bench.rows) {
    res.data[0].push_back(row.n);
    res.data[1].push_back(row.flops_model);
    res.data[2].push_back(row.t_dfnt_ns);
    res.data[3].push_back(row.t_direct_ns);
    res.data[4].push_back(bench.slope_dfnt);
    res.data[5].push_back(bench.slope_direct);
  }
  res.metadata = base_metadata("dfnt_bench", cfg);
  res.metadata["flops_rate"] = opts.flops_rate;
  res.metadata["note"] = "timing columns are wall-clock medians, not seed-reproducible";

  DerivedGeometry geom = derive_geometry(cfg);
  nlohmann::json solvers = nlohmann::json::array();
  const std::pair<SolverKind, const char*> kinds[] = {
      {SolverKind::Svd, "svd"},       {SolverKind::MmseZf, "mmse_zf"},
      {SolverKind::Mf, "mf"},         {SolverKind::Omp, "omp"},
      {SolverKind::Somp, "somp"},     {SolverKind::Dfnt, "dfnt"}};
  for (auto [kind, tag] : kinds) {
    FlopEstimate e = flop_estimate(kind, cfg.N, geom.T_c, opts.flops_rate);
    solvers.push_back({{"solver", tag},
                       {"flops", e.flops},
                       {"seconds", e.seconds},
                       {"ratio_vs_Tc", e.ratio_vs_Tc}});
  }
  res.metadata["solver_estimates"] = solvers;
  return res;
}

ExperimentResult run_detect(const SystemConfig& cfg, const RunOptions& opts) {
  DerivedGeometry geom = derive_geometry(cfg);
  ManifoldGrid grid = build_grid(geom, cfg.A, cfg.B, cfg.C, cfg.qam_order,
                                 cfg.mode, cfg.fov_deg);
  ExperimentResult res;
  res.name = "detect";
  res.columns = {"snr_db", "ser", "ber"};
  res.data.assign(3, {});
  for (size_t i = 0; i < opts.snr_values.size(); ++i) {
    SystemConfig point = cfg;
    point.snr_db = opts.snr_values[i];
    std::uint64_t seed = derive_stream(cfg.seed, 0xde7ec7ULL, i);
    SerResult r = ser_monte_carlo(grid, geom, point, opts.n_symbols, seed);
    res.data[0].push_back(point.snr_db);
    res.data[1].push_back(r.ser);
    res.data[2].push_back(r.ber);
  }
  res.metadata = base_metadata("detect", cfg);
  res.metadata["n_symbols"] = opts.n_symbols;
  res.metadata["bits_per_symbol"] = grid.bits_per_symbol;
  return res;
}

ExperimentResult run_beam_map(const SystemConfig& cfg, const RunOptions& opts) {
  DerivedGeometry geom = derive_geometry(cfg);
  ManifoldGrid grid = build_grid(geom, cfg.A, cfg.B, cfg.C, cfg.qam_order,
                                 cfg.mode, cfg.fov_deg);
  double theta0 = grid.thetas[grid.A() / 2];
  double x_peak = cfg.z0 * std::sin(theta0);
  double half_x = std::max(8.0 * geom.w_spot, 0.05);
  double half_z = std::max(2.5 * geom.dz_fresnel, 0.5);

  auto map_for = [&](double v) {
    Symbol4D s{theta0, cfg.z0, v, 0, grid.qam[0]};
    CVec w = precode(s, geom);
    return beam_intensity_map(w, geom, x_peak - half_x, x_peak + half_x, opts.map_nx,
                              std::max(cfg.z0 - half_z, 1e-3), cfg.z0 + half_z,
                              opts.map_nz);
  };
  BeamMap m50 = map_for(50.0);
  BeamMap m100 = map_for(100.0);

  ExperimentResult res;
  res.name = "beam_map";
  res.columns = {"z_m", "x_m", "i_v50", "i_v100"};
  res.data.assign(4, {});
  double max_diff = 0.0;
  for (int j = 0; j < m50.nz; ++j)
    for (int i = 0; i < m50.nx; ++i) {
      size_t idx = static_cast<size_t>(j) * m50.nx + i;
      res.data[0].push_back(m50.zs[j]);
      res.data[1].push_back(m50.xs[i]);
      res.data[2].push_back(m50.intensity[idx]);
      res.data[3].push_back(m100.intensity[idx]);
      max_diff = std::max(max_diff, std::abs(m50.intensity[idx] - m100.intensity[idx]));
    }
  res.metadata = base_metadata("beam_map", cfg);
  res.metadata["theta0_deg"] = theta0 * 180.0 / kPi;
  res.metadata["x_peak_m"] = x_peak;
  res.metadata["peak_raw_v50"] = m50.peak_raw;
  res.metadata["peak_raw_v100"] = m100.peak_raw;
  res.metadata["max_abs_diff"] = max_diff;
  return res;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "corr_sweep", "abs_gain", "spec_eff", "nf_spread", "btsm_quant",
      "capacity",   "dfnt_bench", "detect", "beam_map"};
  return names;
}

ExperimentResult run_experiment(const std::string& name, const SystemConfig& cfg,
                                const RunOptions& opts) {
  if (name == "corr_sweep") return run_corr_sweep(cfg, opts);
  if (name == "abs_gain") return run_abs_gain(cfg, opts);
  if (name == "spec_eff") return run_spec_eff(cfg, opts);
  if (name == "nf_spread") return run_nf_spread(cfg, opts);
  if (name == "btsm_quant") return run_btsm_quant(cfg, opts);
  if (name == "capacity") return run_capacity(cfg, opts);
  if (name == "dfnt_bench") return run_dfnt_bench(cfg, opts);
  if (name == "detect") return run_detect(cfg, opts);
  if (name == "beam_map") return run_beam_map(cfg, opts);
  throw ConfigError("unknown experiment: " + name);
}

std::string metadata_path_for(const std::string& csv_path) {
  std::string base = csv_path;
  if (base.size() > 4 && base.compare(base.size() - 4, 4, ".csv") == 0)
    base.resize(base.size() - 4);
  return base + ".meta.json";
}

void write_outputs(const ExperimentResult& result, const std::string& csv_path) {
  if (result.data.empty() || result.columns.size() != result.data.size())
    throw std::runtime_error("write_outputs: malformed result table");
  size_t rows = result.data[0].size();
  for (const auto& col : result.data)
    if (col.size() != rows) throw std::runtime_error("write_outputs: ragged columns");

  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("write_outputs: cannot open " + csv_path);
  for (size_t c = 0; c < result.columns.size(); ++c)
    csv << (c ? "," : "") << result.columns[c];
  csv << "\n";
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < result.data.size(); ++c)
      csv << (c ? "," : "") << fmt_g12(result.data[c][r]);
    csv << "\n";
  }
  csv.close();
  if (!csv) throw std::runtime_error("write_outputs: failed writing " + csv_path);

  std::string meta_path = metadata_path_for(csv_path);
  std::ofstream meta(meta_path);
  if (!meta) throw std::runtime_error("write_outputs: cannot open " + meta_path);
  meta << result.metadata.dump(2) << "\n";
  meta.close();
  if (!meta) throw std::runtime_error("write_outputs: failed writing " + meta_path);
}

} // namespace fsm4d
