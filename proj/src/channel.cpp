#include "fsm4d/channel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fsm4d/rng.hpp"

namespace fsm4d {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Fsm: return "fsm";
    case Scheme::Btsm: return "btsm";
    case Scheme::Ttd: return "ttd";
    case Scheme::OtfsStyle: return "otfs";
    case Scheme::Ldma: return "ldma";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  std::string s;
  s.reserve(name.size());
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "fsm") return Scheme::Fsm;
  if (s == "btsm") return Scheme::Btsm;
  if (s == "ttd") return Scheme::Ttd;
  if (s == "otfs" || s == "otfs_style") return Scheme::OtfsStyle;
  if (s == "ldma") return Scheme::Ldma;
  throw ConfigError("unknown scheme: " + name);
}

std::vector<Scheme> parse_scheme_list(const std::string& csv) {
  std::vector<Scheme> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    Scheme s = parse_scheme(tok);
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  if (out.empty()) throw ConfigError("scheme list is empty");
  return out;
}

TimeGrid::TimeGrid(int n_t, double T_int) : n_t_(n_t), T_(T_int) {
  if (n_t < 1) throw std::invalid_argument("TimeGrid: n_t must be positive");
  if (!(T_int > 0.0)) throw std::invalid_argument("TimeGrid: T_int must be positive");
}

double atmospheric_amplitude(const SystemConfig& cfg) {
  double loss_db = cfg.alpha_atm * cfg.z0 / 1000.0;
  return std::pow(10.0, -loss_db / 20.0);
}

ChannelSeries simulate_channel(const SystemConfig& cfg, const DerivedGeometry& geom,
                               const Trajectory& traj, const TimeGrid& tg,
                               std::uint64_t noise_seed) {
  const int N = geom.N;
  const int n_t = tg.size();
  ChannelSeries h;
  h.N = N;
  h.n_t = n_t;
  h.data.resize(static_cast<size_t>(N) * n_t);

  double amp = atmospheric_amplitude(cfg) / std::sqrt(static_cast<double>(N));
  double f_d = doppler_frequency(traj.v, geom);
  double two_pi = 2.0 * kPi;
  SplitMix64 rng(noise_seed);
  bool noisy = cfg.sigma_phi > 0.0;

  for (int j = 0; j < n_t; ++j) {
    double t = tg.t(j);
    double xu = traj.x0 + traj.v * t;
    double carrier = two_pi * f_d * t;
    for (int n = 0; n < N; ++n) {
      double dx = geom.xi[n] - xu;
      double r = std::sqrt(traj.r0 * traj.r0 + dx * dx);
      double phase = -(geom.k * r + carrier);
      if (noisy) phase += cfg.sigma_phi * rng.normal();
      h.at(n, j) = std::polar(amp, phase);
    }
  }
  return h;
}

std::vector<double> btsm_codebook(const SystemConfig& cfg) {
  std::vector<double> cb(cfg.B_cb);
  for (int i = 0; i < cfg.B_cb; ++i)
    cb[i] = (i + 0.5) * cfg.v_max / cfg.B_cb;
  return cb;
}

double btsm_quantized_velocity(const SystemConfig& cfg, double v) {
  double step = cfg.v_max / cfg.B_cb;
  int idx = static_cast<int>(std::floor(v / step));
  idx = std::clamp(idx, 0, cfg.B_cb - 1);
  return (idx + 0.5) * step;
}

double otfs_bin_frequency(const SystemConfig& cfg, double v) {
  double f = doppler_frequency(v, cfg);
  double bin_w = doppler_frequency(cfg.v_max, cfg) / cfg.N_D;
  int idx = static_cast<int>(std::floor(f / bin_w));
  idx = std::clamp(idx, 0, cfg.N_D - 1);
  return (idx + 0.5) * bin_w;
}

double scheme_temporal_frequency(Scheme s, const SystemConfig& cfg, double v) {
  switch (s) {
    case Scheme::Fsm: return doppler_frequency(v, cfg);
    case Scheme::Btsm: return doppler_frequency(btsm_quantized_velocity(cfg, v), cfg);
    case Scheme::OtfsStyle: return otfs_bin_frequency(cfg, v);
    case Scheme::Ttd:
    case Scheme::Ldma: return 0.0;
  }
  return 0.0;
}

ChannelSeries tracking_weights_nearfield(const DerivedGeometry& geom,
                                         const Trajectory& est, const TimeGrid& tg) {
  const int N = geom.N;
  const int n_t = tg.size();
  ChannelSeries w;
  w.N = N;
  w.n_t = n_t;
  w.data.resize(static_cast<size_t>(N) * n_t);
  double amp = 1.0 / std::sqrt(static_cast<double>(N));
  double half_inv_r = 0.5 / est.r0;
  for (int j = 0; j < n_t; ++j) {
    double xu = est.x0 + est.v * tg.t(j);
    for (int n = 0; n < N; ++n) {
      double dx = geom.xi[n] - xu;
      w.at(n, j) = std::polar(amp, -geom.k * dx * dx * half_inv_r);
    }
  }
  return w;
}

ChannelSeries tracking_weights_farfield(const DerivedGeometry& geom,
                                        const Trajectory& est, const TimeGrid& tg) {
  const int N = geom.N;
  const int n_t = tg.size();
  ChannelSeries w;
  w.N = N;
  w.n_t = n_t;
  w.data.resize(static_cast<size_t>(N) * n_t);
  double amp = 1.0 / std::sqrt(static_cast<double>(N));
  for (int j = 0; j < n_t; ++j) {
    double slope = geom.k * (est.x0 + est.v * tg.t(j)) / est.r0;
    for (int n = 0; n < N; ++n)
      w.at(n, j) = std::polar(amp, slope * geom.xi[n]);
  }
  return w;
}

ChannelSeries weights_series(Scheme s, const SystemConfig& cfg, const DerivedGeometry& geom,
                             const Trajectory& est, const TimeGrid& tg) {
  ChannelSeries w = (s == Scheme::OtfsStyle)
                        ? tracking_weights_farfield(geom, est, tg)
                        : tracking_weights_nearfield(geom, est, tg);
  double f_hat = scheme_temporal_frequency(s, cfg, est.v);
  if (f_hat != 0.0) {
    for (int j = 0; j < tg.size(); ++j) {
      cplx tone = std::polar(1.0, -2.0 * kPi * f_hat * tg.t(j));
      for (int n = 0; n < w.N; ++n) w.at(n, j) *= tone;
    }
  }
  return w;
}

ProjectionSeries project_tracking(const SystemConfig& cfg, const DerivedGeometry& geom,
                                  const Trajectory& traj, const TimeGrid& tg,
                                  std::uint64_t noise_seed) {
  const int N = geom.N;
  const int n_t = tg.size();
  ProjectionSeries ps;
  ps.p_nearfield.resize(n_t);
  ps.p_farfield.resize(n_t);

  double amp_h = atmospheric_amplitude(cfg) / std::sqrt(static_cast<double>(N));
  double amp_w = 1.0 / std::sqrt(static_cast<double>(N));
  double f_d = doppler_frequency(traj.v, geom);
  double two_pi = 2.0 * kPi;
  double half_inv_r = 0.5 / traj.r0;
  SplitMix64 rng(noise_seed);
  bool noisy = cfg.sigma_phi > 0.0;

  for (int j = 0; j < n_t; ++j) {
    double t = tg.t(j);
    double xu = traj.x0 + traj.v * t;
    double carrier = two_pi * f_d * t;
    double ff_slope = geom.k * xu / traj.r0;
    cplx acc_nf = 0.0;
    cplx acc_ff = 0.0;
    for (int n = 0; n < N; ++n) {
      double dx = geom.xi[n] - xu;
      double r = std::sqrt(traj.r0 * traj.r0 + dx * dx);
      double h_phase = -(geom.k * r + carrier);
      if (noisy) h_phase += cfg.sigma_phi * rng.normal();
      // conj(h) * w, with w's unit amplitude folded in
      acc_nf += std::polar(amp_h * amp_w, -h_phase - geom.k * dx * dx * half_inv_r);
      acc_ff += std::polar(amp_h * amp_w, -h_phase + ff_slope * geom.xi[n]);
    }
    ps.p_nearfield[j] = acc_nf;
    ps.p_farfield[j] = acc_ff;
  }
  return ps;
}

DopplerProfile nf_doppler_profile(const DerivedGeometry& geom, double v, double r0) {
  if (!(r0 > 0.0)) throw std::invalid_argument("nf_doppler_profile: r0 must be positive");
  DopplerProfile p;
  p.xi = geom.xi;
  p.f_plane = doppler_frequency(v, geom);
  p.f_true.resize(geom.N);
  p.f_dev.resize(geom.N);
  for (int n = 0; n < geom.N; ++n) {
    double xi = geom.xi[n];
    double f = p.f_plane * xi / std::sqrt(r0 * r0 + xi * xi);
    p.f_true[n] = f;
    p.f_dev[n] = f - p.f_plane;
  }
  return p;
}

} // namespace fsm4d
