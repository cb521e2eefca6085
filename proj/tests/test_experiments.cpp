#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fsm4d/experiments.hpp"
#include "fsm4d/metrics.hpp"

using namespace fsm4d;

namespace {

// shrunk array and Monte Carlo so the sweep runners stay fast in unit tests;
// n_t stays at the default, the Doppler sampling floor forbids anything
// shorter at v_max = 200
SystemConfig sweep_config(int n) {
  SystemConfig cfg;
  cfg.N = n;
  cfg.n_mc = 4;
  return cfg;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("velocity sweep grid covers 0..200 in 5 m/s steps") {
  auto v = velocity_sweep_grid();
  REQUIRE(v.size() == 41);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 200.0);
  for (int i = 1; i < 41; ++i) CHECK(v[i] - v[i - 1] == doctest::Approx(5.0));
}

TEST_CASE("config hash is canonical and sensitive") {
  SystemConfig a, b;
  CHECK(config_hash(a) == config_hash(b));
  b.N = 2048;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("sweep statistics: fsm holds, ttd follows the window sinc, ldma equals ttd") {
  SystemConfig cfg = sweep_config(256);
  RhoSweep sw = run_rho_sweep(cfg, {Scheme::Fsm, Scheme::Ttd, Scheme::Ldma, Scheme::Btsm});

  CHECK(sw.g_ref == doctest::Approx(0.9594).epsilon(1e-3));

  for (int vi = 0; vi < 41; ++vi) {
    CHECK(sw.mean_rho[0][vi] >= 0.99); // fsm
    CHECK(std::abs(sw.mean_rho[1][vi] - sw.sinc_analytic[vi]) < 0.02);
    CHECK(std::abs(sw.mean_rho[2][vi] - sw.mean_rho[1][vi]) < 1e-15);
  }

  // btsm floors at worst-case quantization points, recovers near bin centers
  for (int vi : {0, 5, 10, 20, 40}) // v = 0, 25, 50, 100, 200
    CHECK(std::abs(sw.mean_rho[3][vi] - 0.0276) < 0.01);
  for (int vi : {1, 4, 6}) // v = 5, 20, 30: 1.25 m/s from a bin center
    CHECK(sw.mean_rho[3][vi] >= 0.4);
}

TEST_CASE("sweep means are stable against the array size") {
  RhoSweep a = run_rho_sweep(sweep_config(256),
                             {Scheme::Fsm, Scheme::Ttd, Scheme::Ldma, Scheme::Btsm});
  RhoSweep b = run_rho_sweep(sweep_config(512),
                             {Scheme::Fsm, Scheme::Ttd, Scheme::Ldma, Scheme::Btsm});
  for (int si = 0; si < 4; ++si)
    for (int vi = 0; vi < 41; ++vi)
      CHECK(std::abs(a.mean_rho[si][vi] - b.mean_rho[si][vi]) < 0.02);
}

TEST_CASE("tracked and untracked beams split by the predicted margin") {
  SystemConfig cfg = sweep_config(256);
  cfg.c_light = 3e8; // round light speed puts the top speed on a sinc null
  RunOptions opts;
  opts.schemes = {Scheme::Fsm, Scheme::Ttd};
  ExperimentResult res = run_abs_gain(cfg, opts);
  REQUIRE(res.columns.size() == 5); // v, gain_db_fsm, std_fsm, gain_db_ttd, std_ttd
  double gap = res.data[1][40] - res.data[3][40];
  CHECK(gap > 50.0);

  SystemConfig exact = sweep_config(256); // default light speed is off the null
  ExperimentResult res2 = run_abs_gain(exact, opts);
  CHECK(res2.data[1][40] - res2.data[3][40] > 48.0);
}

TEST_CASE("corr sweep output is byte reproducible") {
  SystemConfig cfg = sweep_config(256);
  cfg.n_mc = 2;
  RunOptions opts;
  opts.schemes = {Scheme::Fsm, Scheme::Ttd};

  ExperimentResult r1 = run_corr_sweep(cfg, opts);
  ExperimentResult r2 = run_corr_sweep(cfg, opts);
  write_outputs(r1, "exp_repro_1.csv");
  write_outputs(r2, "exp_repro_2.csv");
  CHECK(slurp("exp_repro_1.csv") == slurp("exp_repro_2.csv"));

  // header row carries the column names
  std::string head = slurp("exp_repro_1.csv");
  CHECK(head.rfind("v,rho_fsm,std_fsm,rho_ttd,std_ttd,sinc_analytic\n", 0) == 0);

  // sidecar holds the reproducibility context
  std::string meta_path = metadata_path_for("exp_repro_1.csv");
  CHECK(meta_path == "exp_repro_1.meta.json");
  nlohmann::json meta = nlohmann::json::parse(slurp(meta_path));
  CHECK(meta["experiment"] == "corr_sweep");
  CHECK(meta["version"] == version_string());
  CHECK(meta["seed"] == cfg.seed);
  CHECK(meta.contains("config_hash"));
  CHECK(meta["config"]["N"] == 256);
  CHECK(meta["g_ref"].get<double>() > 0.9);

  std::remove("exp_repro_1.csv");
  std::remove("exp_repro_1.meta.json");
  std::remove("exp_repro_2.csv");
  std::remove("exp_repro_2.meta.json");
}

TEST_CASE("spectral efficiency sweep matches the closed form of its own rho") {
  SystemConfig cfg = sweep_config(256);
  RunOptions opts;
  opts.schemes = {Scheme::Fsm};
  ExperimentResult res = run_spec_eff(cfg, opts);
  REQUIRE(res.columns[1] == "se_fsm");
  CHECK(res.metadata["snr_db"] == cfg.snr_db);
  // fsm holds rho ~ 0.9998 at every speed, so se sits just under log2(101)
  for (double se : res.data[1]) {
    CHECK(se > 6.0);
    CHECK(se < std::log2(101.0) + 1e-9);
  }
}

TEST_CASE("btsm quantization sweep carries its codebook in the sidecar") {
  SystemConfig cfg = sweep_config(256);
  ExperimentResult res = run_btsm_quant(cfg, RunOptions{});
  REQUIRE(res.columns.size() == 3); // v, rho_btsm, std_btsm
  CHECK(res.metadata["codebook"].size() == 16);
  CHECK(res.metadata["codebook_size_rho_0.9"] == 187);
  CHECK(std::abs(res.metadata["inverse_sinc_0.9"].get<double>() - 0.2504) < 1e-3);
}

TEST_CASE("capacity table reproduces the budget peaks") {
  SystemConfig cfg; // geometry-free experiment, full-size config is fine
  ExperimentResult res = run_capacity(cfg, RunOptions{});
  REQUIRE(res.columns.size() == 4); // K, rate_ldma, rate_ttd, rate_fsm
  REQUIRE(res.data[0].size() == 128);

  auto at_k = [&](int col, int k) { return res.data[col][k - 1]; };
  CHECK(at_k(1, 4) == doctest::Approx(18.8018).epsilon(1e-4));
  CHECK(at_k(2, 16) == doctest::Approx(45.7277).epsilon(1e-4));
  CHECK(at_k(3, 64) == doctest::Approx(86.883).epsilon(1e-4));
  CHECK(at_k(1, 50) == doctest::Approx(0.010907).epsilon(1e-3));
  CHECK(at_k(2, 50) == doctest::Approx(0.318045).epsilon(1e-3));
  CHECK(at_k(3, 50) == doctest::Approx(79.2481).epsilon(1e-4));

  CHECK(res.metadata["k_max"]["fsm"] == 64);
  CHECK(res.metadata["k_max"]["ttd"] == 16);
  CHECK(res.metadata["k_max"]["ldma"] == 4);

  // velocity-axis doubling doubles the user budget and raises the peak
  auto cs = res.metadata["c_sweep"];
  REQUIRE(cs.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(cs[i]["k_max"] == 16 << i);
  for (int i = 1; i < 4; ++i)
    CHECK(cs[i]["peak"].get<double>() > cs[i - 1]["peak"].get<double>());
}

TEST_CASE("near-field doppler spread table") {
  SystemConfig cfg;
  cfg.N = 512;
  ExperimentResult res = run_nf_spread(cfg, RunOptions{});
  REQUIRE(res.columns.size() == 3);
  REQUIRE(res.data[0].size() == 512);
  CHECK(res.metadata["f_plane_hz"].get<double>() ==
        doctest::Approx(doppler_frequency(cfg.v_max, cfg)));
  // deviation at array center is minus the plane-wave shift
  int mid = 255;
  CHECK(std::abs(res.data[2][mid]) > 0.99 * res.metadata["f_plane_hz"].get<double>());
}

TEST_CASE("detection error-rate experiment runs per snr point") {
  SystemConfig cfg;
  cfg.N = 256;
  cfg.z0 = 2.0;
  cfg.A = cfg.B = cfg.C = 2;
  cfg.qam_order = 4;
  RunOptions opts;
  // -24 dB per element is 0 dB after combining at N=256; 0 dB is clean
  opts.snr_values = {-24.0, 0.0};
  opts.n_symbols = 200;
  ExperimentResult res = run_detect(cfg, opts);
  REQUIRE(res.columns.size() == 3);
  REQUIRE(res.data[0].size() == 2);
  CHECK(res.data[1][0] > 0.05);            // waterfall region has real errors
  CHECK(res.data[1][1] < res.data[1][0]);  // ser falls with snr
  CHECK(res.metadata["bits_per_symbol"] == 5);
}

TEST_CASE("beam map experiment shows velocity-invariant focusing") {
  SystemConfig cfg;
  cfg.N = 256;
  cfg.z0 = 2.0;
  RunOptions opts;
  opts.map_nx = 41;
  opts.map_nz = 41;
  ExperimentResult res = run_beam_map(cfg, opts);
  REQUIRE(res.columns.size() == 4);
  REQUIRE(res.data[0].size() == 41u * 41u);

  double peak50 = 0.0;
  for (double x : res.data[2]) peak50 = std::max(peak50, x);
  CHECK(peak50 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.metadata["max_abs_diff"].get<double>() < 1e-3);
}

TEST_CASE("scaling bench experiment emits the model and fitted slopes") {
  SystemConfig cfg;
  RunOptions opts;
  opts.bench_sizes = {256, 512};
  opts.bench_reps = 2;
  ExperimentResult res = run_dfnt_bench(cfg, opts);
  REQUIRE(res.columns.size() == 6);
  REQUIRE(res.data[0].size() == 2);
  CHECK(res.data[4][0] == res.data[4][1]); // slope columns are constant
  CHECK(res.metadata["solver_estimates"].size() == 6);
  CHECK(res.metadata.contains("note"));
}

TEST_CASE("experiment dispatch knows every name and rejects strangers") {
  CHECK(experiment_names().size() == 9);
  SystemConfig cfg;
  CHECK_THROWS_AS(run_experiment("warp_drive", cfg, RunOptions{}), ConfigError);
}

TEST_CASE("metadata path derivation") {
  CHECK(metadata_path_for("out/results.csv") == "out/results.meta.json");
  CHECK(metadata_path_for("plain.dat") == "plain.dat.meta.json");
}

TEST_CASE("write_outputs validates table shape") {
  ExperimentResult bad;
  bad.name = "x";
  bad.columns = {"a", "b"};
  bad.data = {{1.0, 2.0}, {3.0}};
  CHECK_THROWS_AS(write_outputs(bad, "exp_bad.csv"), std::runtime_error);
}
