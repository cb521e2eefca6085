#pragma once
// Discrete 4D symbol manifold (angle x depth x synthetic-velocity x QAM),
// Gray-coded bit mapping, factorized steering/channel vectors, and the
// joint null-surface relations.
//
// Steering factors (all unit modulus):
//   [a(theta)]_n = exp(-j k xi_n sin(theta))       centered xi
//   [c(z)]_n     = exp(-j k u_n^2 / (2 z))         edge coordinate u_n = n d
//   [b(v)]_n     = exp(-j k xi_n v / c)
//   h(s) = (1/sqrt(N)) a .* c .* b,  ||h|| = 1
#include "fsm4d/geometry.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace fsm4d {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

struct Symbol4D {
  double theta = 0.0;   // [rad]
  double z = 0.0;       // [m]
  double v = 0.0;       // synthetic velocity [m/s]
  int qam_index = 0;    // Gray label into grid.qam
  cplx qam_value{1.0, 0.0};
};

struct ManifoldGrid {
  std::vector<double> thetas;      // A values, uniform in the field of view
  std::vector<double> depths;      // B values, z0 + j*dz_min
  std::vector<double> velocities;  // C values, uniform or null-surface spaced
  CVec qam;                        // unit-average-energy square QAM, Gray-labeled
  int bits_per_symbol = 0;         // M = log2(A*B*C*|C|)
  GridMode mode = GridMode::Orthogonal;
  double dz_min = 0.0;             // adjacent-depth spacing used

  int A() const { return (int)thetas.size(); }
  int B() const { return (int)depths.size(); }
  int C() const { return (int)velocities.size(); }
  int qam_order() const { return (int)qam.size(); }

  Symbol4D symbol(int ia, int ib, int ic, int iq) const;
};

struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reflected Gray code over field indices. Bit words pack MSB-first as
// [theta | depth | velocity | qam].
uint32_t gray_encode(uint32_t i);
uint32_t gray_decode(uint32_t g);

// depths spaced by the m=1 pure-depth null spacing; velocities either
// uniform on [0, v_max) or on exact pure-velocity null points (orthogonal)
ManifoldGrid build_grid(const DerivedGeometry& geom, int A, int B, int C,
                        int qam_order, GridMode mode, double fov_deg = 30.0);

Symbol4D encode_bits(uint32_t word, const ManifoldGrid& grid);
uint32_t decode_symbol(const Symbol4D& s, const ManifoldGrid& grid);
// index-level variants (exact inverses of each other)
void encode_bits_indices(uint32_t word, const ManifoldGrid& grid,
                         int& ia, int& ib, int& ic, int& iq);
uint32_t encode_indices_word(const ManifoldGrid& grid, int ia, int ib, int ic, int iq);

void steering_vectors(const Symbol4D& s, const DerivedGeometry& geom,
                      CVec& a, CVec& c, CVec& b);
CVec channel_vector(const Symbol4D& s, const DerivedGeometry& geom);

// <h(s_i), h(s_j)>; same symbol gives exactly 1
cplx manifold_correlation(const Symbol4D& si, const Symbol4D& sj,
                          const DerivedGeometry& geom);

// Null-surface relations in normalized coordinates
//   v_tilde = k dv / c,  z_tilde = k kappa,  kappa(dz) ~ dz / (2 z0^2)
// Joint null: v_tilde = 2 m pi / (N d) - (N-1) d z_tilde / 2.
double null_surface_velocity(int m, double z_tilde, const DerivedGeometry& geom);
double kappa_of_dz(double dz, double z0);          // linearized curvature mismatch
double dv_from_vtilde(double v_tilde, const DerivedGeometry& geom);
double vtilde_from_dv(double dv, const DerivedGeometry& geom);
double ztilde_from_dz(double dz, const DerivedGeometry& geom);
// pure-depth null spacing: z_tilde(m) = 4 m pi / (N (N-1) d^2) converted to dz
double depth_null_spacing(int m, const DerivedGeometry& geom);
// pure-velocity null spacing m * 2 c / N (exact Dirichlet zero at d = lambda/2)
double velocity_null_spacing(int m, const DerivedGeometry& geom);

struct OrthWeights {
  double alpha_theta, alpha_z, alpha_v, alpha_d;
};
// defaults: one resolution cell contributes distance ~1 per dimension
OrthWeights default_orth_weights(const DerivedGeometry& geom);
double orthogonality_metric(const Symbol4D& si, const Symbol4D& sj,
                            const OrthWeights& w);

struct StmRamp {
  double g;      // spatial phase gradient [rad/m]
  double omega;  // temporal frequency [rad/s]
  double v_syn;  // synthetic velocity [m/s], g = omega / v_syn
};
StmRamp gradient_for_velocity(double v_syn, double omega);
double stm_ramp_phase(const StmRamp& ramp, double xi, double t);

} // namespace fsm4d
