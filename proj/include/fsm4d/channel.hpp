#pragma once
// Time-resolved link simulation for a user sliding parallel to the array.
//
// Channel model, per element n and midpoint sample t:
//   h_n(t) = A_atm / sqrt(N) * exp(-j [ k r_n(t) + 2 pi f_D t - phi_n(t) ])
// with r_n(t) the exact element-to-user distance, f_D the round-trip
// Doppler shift of the user speed, and phi iid Gaussian phase noise.
//
// Every scheme is given the same genie trajectory estimate; they differ in
// the temporal servo frequency and in whether the spatial profile carries
// the quadratic (near-field) term. That isolates the temporal tracking
// question from beam pointing.
#include <cstdint>
#include <string>
#include <vector>

#include "fsm4d/config.hpp"
#include "fsm4d/geometry.hpp"
#include "fsm4d/manifold.hpp"

namespace fsm4d {

enum class Scheme { Fsm, Btsm, Ttd, OtfsStyle, Ldma };

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);
std::vector<Scheme> parse_scheme_list(const std::string& csv);

struct Trajectory {
  double x0 = 0.0; // lateral offset at mid-integration, m
  double v = 0.0;  // lateral speed, m/s
  double r0 = 0.0; // broadside range, m
};

// Midpoint samples centered on the integration window: t_j in
// (-T/2, T/2), step T/n_t. Sample averages over these points converge to
// the window integral without endpoint bias.
class TimeGrid {
public:
  TimeGrid(int n_t, double T_int);
  int size() const { return n_t_; }
  double T() const { return T_; }
  double dt() const { return T_ / n_t_; }
  double t(int j) const { return (2 * j + 1 - n_t_) * (0.5 * T_ / n_t_); }

private:
  int n_t_;
  double T_;
};

struct ChannelSeries {
  int N = 0;
  int n_t = 0;
  CVec data; // column-major: data[t * N + n]

  cplx& at(int n, int t) { return data[static_cast<size_t>(t) * N + n]; }
  const cplx& at(int n, int t) const { return data[static_cast<size_t>(t) * N + n]; }
};

// One-way atmospheric amplitude over the broadside range, alpha_atm in dB/km.
double atmospheric_amplitude(const SystemConfig& cfg);

ChannelSeries simulate_channel(const SystemConfig& cfg, const DerivedGeometry& geom,
                               const Trajectory& traj, const TimeGrid& tg,
                               std::uint64_t noise_seed);

// Codebook of admissible synthetic speeds: bin centers (i + 1/2) v_max / B.
std::vector<double> btsm_codebook(const SystemConfig& cfg);
double btsm_quantized_velocity(const SystemConfig& cfg, double v);
double otfs_bin_frequency(const SystemConfig& cfg, double v);

// Temporal servo frequency each scheme runs at for a user speed v.
double scheme_temporal_frequency(Scheme s, const SystemConfig& cfg, double v);

// Spatial profiles that follow the estimated trajectory, no temporal servo.
ChannelSeries tracking_weights_nearfield(const DerivedGeometry& geom,
                                         const Trajectory& est, const TimeGrid& tg);
ChannelSeries tracking_weights_farfield(const DerivedGeometry& geom,
                                        const Trajectory& est, const TimeGrid& tg);

ChannelSeries weights_series(Scheme s, const SystemConfig& cfg, const DerivedGeometry& geom,
                             const Trajectory& est, const TimeGrid& tg);

// Per-sample array projections sum_n conj(h_n(t)) w_n(t) for both spatial
// profiles, computed column by column in O(N) memory. Scheme gains follow
// by demodulating these with the scheme's servo tone.
struct ProjectionSeries {
  std::vector<cplx> p_nearfield;
  std::vector<cplx> p_farfield;
};

ProjectionSeries project_tracking(const SystemConfig& cfg, const DerivedGeometry& geom,
                                  const Trajectory& traj, const TimeGrid& tg,
                                  std::uint64_t noise_seed);

// Per-element Doppler across the aperture for a broadside transverse pass.
// f_true is the instantaneous round-trip shift at each element; f_dev is its
// deviation from the plane-wave value f_plane = 2 f_c v / c.
struct DopplerProfile {
  std::vector<double> xi;
  std::vector<double> f_true;
  std::vector<double> f_dev;
  double f_plane = 0.0;
};

DopplerProfile nf_doppler_profile(const DerivedGeometry& geom, double v, double r0);

} // namespace fsm4d
