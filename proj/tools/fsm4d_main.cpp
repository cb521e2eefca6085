#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fsm4d/config.hpp"
#include "fsm4d/experiments.hpp"
#include "fsm4d/manifold.hpp"

namespace {

struct CliState {
  std::string config_path;
  std::string out_path;
  std::string schemes_csv;
  bool full = false;
  long long seed = -1;

  // detect
  std::vector<double> snr_values;
  int n_symbols = 0;
  int A = 0, B = 0, C = 0, qam = 0;

  // dfnt_bench
  std::vector<int> sizes;
  int reps = 0;
  double flops_rate = 0.0;

  // beam_map
  int nx = 0, nz = 0;
};

void add_common(CLI::App* sub, CliState& st) {
  sub->add_option("--config", st.config_path, "JSON config file (defaults used if omitted)")
      ->check(CLI::ExistingFile);
  sub->add_flag("--full", st.full, "full-scale preset: N=4096, n_t=4096, n_mc=64");
  sub->add_option("--seed", st.seed, "override the config seed");
  sub->add_option("--out", st.out_path, "output CSV path (default <experiment>.csv)");
  sub->add_option("--schemes", st.schemes_csv,
                  "comma-separated scheme list: fsm,btsm,ttd,otfs,ldma");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"near-field space-time modulation experiment runner"};
  app.set_version_flag("--version", fsm4d::version_string());
  app.require_subcommand(1);

  CliState st;
  for (const std::string& name : fsm4d::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    add_common(sub, st);
    if (name == "detect") {
      sub->add_option("--snr", st.snr_values, "SNR sweep points in dB")->delimiter(',');
      sub->add_option("--symbols", st.n_symbols, "Monte Carlo symbols per SNR point");
      sub->add_option("--A", st.A, "angle cardinality override");
      sub->add_option("--B", st.B, "depth cardinality override");
      sub->add_option("--C", st.C, "velocity cardinality override");
      sub->add_option("--qam", st.qam, "QAM order override");
    } else if (name == "dfnt_bench") {
      sub->alias("dfnt-bench");
      sub->add_option("--sizes", st.sizes, "aperture sizes to benchmark")->delimiter(',');
      sub->add_option("--reps", st.reps, "fixed repetitions per size (default adaptive)");
      sub->add_option("--flops-rate", st.flops_rate, "hardware rate for flop-model timings");
    } else if (name == "beam_map") {
      sub->add_option("--nx", st.nx, "lateral sample count");
      sub->add_option("--nz", st.nz, "depth sample count");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  std::string name = app.get_subcommands().front()->get_name();

  try {
    fsm4d::SystemConfig cfg;
    if (!st.config_path.empty()) cfg = fsm4d::load_config(st.config_path);
    if (st.full) cfg = fsm4d::full_scale(cfg);
    if (st.seed >= 0) cfg.seed = static_cast<std::uint64_t>(st.seed);
    if (st.A > 0) cfg.A = st.A;
    if (st.B > 0) cfg.B = st.B;
    if (st.C > 0) cfg.C = st.C;
    if (st.qam > 0) cfg.qam_order = st.qam;
    fsm4d::validate(cfg);

    fsm4d::RunOptions opts;
    if (!st.schemes_csv.empty()) opts.schemes = fsm4d::parse_scheme_list(st.schemes_csv);
    if (!st.snr_values.empty()) opts.snr_values = st.snr_values;
    if (st.n_symbols > 0) opts.n_symbols = st.n_symbols;
    if (!st.sizes.empty()) opts.bench_sizes = st.sizes;
    if (st.reps > 0) opts.bench_reps = st.reps;
    if (st.flops_rate > 0.0) opts.flops_rate = st.flops_rate;
    if (st.nx > 0) opts.map_nx = st.nx;
    if (st.nz > 0) opts.map_nz = st.nz;

    std::string out = st.out_path.empty() ? name + ".csv" : st.out_path;
    fsm4d::ExperimentResult result = fsm4d::run_experiment(name, cfg, opts);
    fsm4d::write_outputs(result, out);
    std::printf("%s: %zu rows -> %s (metadata %s)\n", name.c_str(),
                result.data.empty() ? size_t{0} : result.data[0].size(), out.c_str(),
                fsm4d::metadata_path_for(out).c_str());
    return 0;
  } catch (const fsm4d::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const fsm4d::GridError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
