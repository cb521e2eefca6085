#pragma once
// Discrete Fresnel transform: FFT sandwiched between two quadratic-phase
// diagonals. Both chirps live on the element-pitch coordinate n*d, so the
// operator is exactly unitary (unimodular diagonals around a unitary FFT)
// and collapses to the plain FFT as z grows.
//
// chirp_kernel(z) is exp(+j k u^2 / (2z)), the elementwise inverse of the
// depth steering factor: applying it to a depth-z channel flattens the
// quadratic phase (chirp sharing).
#include <complex>
#include <vector>

#include "fsm4d/config.hpp"
#include "fsm4d/fft.hpp"
#include "fsm4d/geometry.hpp"
#include "fsm4d/manifold.hpp"

namespace fsm4d {

CVec chirp_kernel(const DerivedGeometry& geom, double z);

class DfntOperator {
public:
  DfntOperator(const DerivedGeometry& geom, double z);

  void apply(CVec& x) const;
  void inverse(CVec& x) const;

  const CVec& lambda_in() const { return lin_; }
  const CVec& lambda_out() const { return lout_; }
  double z() const { return z_; }
  int size() const { return n_; }

private:
  int n_;
  double z_;
  FftPlan plan_;
  CVec lin_, lout_;
};

CVec dfnt_apply(const CVec& x, const DerivedGeometry& geom, double z);
CVec dfnt_inverse(const CVec& x, const DerivedGeometry& geom, double z);

// O(N^2) reference path: walks the operator matrix row by row with an
// incremental phasor, never materializing it. Same result as dfnt_apply
// up to roundoff; used as the direct baseline in scaling benchmarks.
CVec dfnt_apply_direct(const CVec& x, const DerivedGeometry& geom, double z);

// Matched-filter transmit vector for one constellation point: the unit-norm
// channel vector itself, so the receiver-side projection has unit gain.
CVec precode(const Symbol4D& s, const DerivedGeometry& geom);

struct BeamMap {
  std::vector<double> xs;        // lateral sample points, m
  std::vector<double> zs;        // depth sample points, m
  std::vector<double> intensity; // nz rows by nx cols, peak normalized to 1
  int nx = 0;
  int nz = 0;
  double peak_raw = 0.0;         // pre-normalization maximum of |h^H w|^2
};

BeamMap beam_intensity_map(const CVec& w, const DerivedGeometry& geom,
                           double x_min, double x_max, int nx,
                           double z_min, double z_max, int nz);

enum class SolverKind { Svd, MmseZf, Mf, Omp, Somp, Dfnt };

struct FlopEstimate {
  double flops = 0.0;
  double seconds = 0.0;
  double ratio_vs_Tc = 0.0; // runtime over the channel coherence time
};

// sparsity only matters for the greedy solvers (Omp, Somp).
FlopEstimate flop_estimate(SolverKind kind, int n, double T_c,
                           double flops_rate = 1e13, int sparsity = 10);

struct BenchRow {
  int n = 0;
  double flops_model = 0.0; // 5 N log2 N + 2 N
  double t_dfnt_ns = 0.0;
  double t_direct_ns = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  double slope_dfnt = 0.0;   // log-log fit of time vs N
  double slope_direct = 0.0;
};

// fixed_reps > 0 pins the repetition count; otherwise reps adapt to spend
// about target_ms per size.
BenchResult bench_scaling(const SystemConfig& base, const std::vector<int>& sizes,
                          double target_ms = 10.0, int max_reps = 1000,
                          int fixed_reps = 0);

} // namespace fsm4d
