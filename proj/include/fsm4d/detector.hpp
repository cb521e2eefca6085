#pragma once
// Matched-filter bank detection over the constellation grid, hierarchical
// pilot acquisition, and error-rate Monte Carlo.
#include <cstdint>
#include <utility>
#include <vector>

#include "fsm4d/config.hpp"
#include "fsm4d/geometry.hpp"
#include "fsm4d/manifold.hpp"

namespace fsm4d {

struct DetectionResult {
  Symbol4D s_hat;
  double metric = 0.0;     // |h(s_hat)^H y|^2
  int qam_hat = 0;
  std::uint32_t bits_hat = 0;
};

// Precomputed bank of the A*B*C spatial-kinematic vectors. Detection is an
// argmax of projection power over the bank, then minimum-distance
// demodulation of the amplitude symbol from the winning complex projection.
class MatchedFilterBank {
public:
  MatchedFilterBank(const ManifoldGrid& grid, const DerivedGeometry& geom);

  cplx project(int ia, int ib, int ic, const CVec& y) const;
  DetectionResult detect(const CVec& y) const;

  const ManifoldGrid& grid() const { return grid_; }
  int cells() const { return A_ * B_ * C_; }

private:
  ManifoldGrid grid_;
  int A_, B_, C_, N_;
  CVec bank_; // cell-major rows: bank_[cell * N + n]
};

DetectionResult matched_filter_detect(const CVec& y, const ManifoldGrid& grid,
                                      const DerivedGeometry& geom);

using PilotObservation = std::pair<Symbol4D, double>; // probe, power response

struct AcquireResult {
  double theta_hat = 0.0;
  double z_hat = 0.0;
  double v_hat = 0.0;
  double g = 0.0; // ramp gradient the servo starts from, omega / v_hat
  int coarse_evals = 0;
  int fine_evals = 0;
};

// Coarse stage scans at most |grid|/8 of the observations (the full
// spatial-kinematic slice when the amplitude axis is deep enough, otherwise
// a stride-2 lattice), fine stage rescans the 3x3x3 index neighborhood of
// the coarse winner.
AcquireResult acquire(const std::vector<PilotObservation>& observations,
                      const ManifoldGrid& grid,
                      double omega = 6.283185307179586e4);

struct SerResult {
  double ser = 0.0;
  double ber = 0.0;
  long symbol_errors = 0;
  long bit_errors = 0;
  int n_symbols = 0;
};

// Static benchmark: random words through the matched beam at a snapshot,
// complex Gaussian noise with per-element variance 10^(-snr_db/10)/N so each
// element sees snr_db against the unit-norm signal and combining adds the
// 10*log10(N) array gain. Deterministic given the seed.
SerResult ser_monte_carlo(const ManifoldGrid& grid, const DerivedGeometry& geom,
                          const SystemConfig& cfg, int n_symbols, std::uint64_t seed);

} // namespace fsm4d
