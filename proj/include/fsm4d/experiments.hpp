#pragma once
// Experiment runners: each produces one CSV (x column, then per-scheme
// y/std columns) plus a JSON metadata sidecar carrying the resolved
// configuration, seed, config hash, and any derived scalars. Same config
// and seed give byte-identical output regardless of thread schedule.
#include <string>
#include <vector>

#include "json.hpp"

#include "fsm4d/channel.hpp"
#include "fsm4d/config.hpp"

namespace fsm4d {

struct RunOptions {
  std::vector<Scheme> schemes = {Scheme::Fsm, Scheme::Btsm, Scheme::Ttd,
                                 Scheme::OtfsStyle, Scheme::Ldma};
  // dfnt_bench
  std::vector<int> bench_sizes = {256, 512, 1024, 2048, 4096, 8192, 16384};
  double flops_rate = 1e13;
  int bench_reps = 0; // 0 = adaptive
  // detect: snr_db is per-element, so the default sweep sits below 0 dB to
  // straddle the waterfall once the array gain (30 dB at N=1024) is added
  std::vector<double> snr_values = {-24, -20, -16, -12, -8, -4, 0};
  int n_symbols = 2000;
  // beam_map
  int map_nx = 101;
  int map_nz = 101;
};

struct ExperimentResult {
  std::string name;
  std::vector<std::string> columns;       // columns[0] is the x axis
  std::vector<std::vector<double>> data;  // column-major, equal lengths
  nlohmann::json metadata;
};

std::vector<double> velocity_sweep_grid(); // 41 points, 0..200 m/s
std::uint64_t config_hash(const SystemConfig& cfg);
std::string version_string();

ExperimentResult run_corr_sweep(const SystemConfig& cfg, const RunOptions& opts);
ExperimentResult run_abs_gain(const SystemConfig& cfg, const RunOptions& opts);
ExperimentResult run_spec_eff(const SystemConfig& cfg, const RunOptions& opts);
ExperimentResult run_nf_spread(const SystemConfig& cfg, const RunOptions& opts);
ExperimentResult run_btsm_quant(const SystemConfig& cfg, const RunOptions& opts);
ExperimentResult run_capacity(const SystemConfig& cfg, const RunOptions& opts);
ExperimentResult run_dfnt_bench(const SystemConfig& cfg, const RunOptions& opts);
ExperimentResult run_detect(const SystemConfig& cfg, const RunOptions& opts);
ExperimentResult run_beam_map(const SystemConfig& cfg, const RunOptions& opts);

ExperimentResult run_experiment(const std::string& name, const SystemConfig& cfg,
                                const RunOptions& opts);
const std::vector<std::string>& experiment_names();

std::string metadata_path_for(const std::string& csv_path);
void write_outputs(const ExperimentResult& result, const std::string& csv_path);

// Velocity sweep of the normalized correlation, shared by the corr_sweep,
// abs_gain, spec_eff and btsm_quant runners. Per-trial statistics are
// aggregated three ways: on rho itself, on 20 log10(rho), and on the
// spectral efficiency at the configured SNR.
struct RhoSweep {
  std::vector<double> v;
  std::vector<Scheme> schemes;
  // [scheme][velocity]
  std::vector<std::vector<double>> mean_rho, std_rho;
  std::vector<std::vector<double>> mean_db, std_db;
  std::vector<std::vector<double>> mean_se, std_se;
  std::vector<double> sinc_analytic;
  double g_ref = 0.0;
};

RhoSweep run_rho_sweep(const SystemConfig& cfg, const std::vector<Scheme>& schemes);

} // namespace fsm4d
