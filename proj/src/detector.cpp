#include "fsm4d/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fsm4d/rng.hpp"

namespace fsm4d {

MatchedFilterBank::MatchedFilterBank(const ManifoldGrid& grid, const DerivedGeometry& geom)
    : grid_(grid), A_(grid.A()), B_(grid.B()), C_(grid.C()), N_(geom.N) {
  bank_.resize(static_cast<size_t>(A_) * B_ * C_ * N_);
  size_t cell = 0;
  for (int ia = 0; ia < A_; ++ia)
    for (int ib = 0; ib < B_; ++ib)
      for (int ic = 0; ic < C_; ++ic, ++cell) {
        CVec h = channel_vector(grid_.symbol(ia, ib, ic, 0), geom);
        std::copy(h.begin(), h.end(), bank_.begin() + cell * N_);
      }
}

cplx MatchedFilterBank::project(int ia, int ib, int ic, const CVec& y) const {
  size_t cell = (static_cast<size_t>(ia) * B_ + ib) * C_ + ic;
  const cplx* row = bank_.data() + cell * N_;
  cplx acc = 0.0;
  for (int n = 0; n < N_; ++n) acc += std::conj(row[n]) * y[n];
  return acc;
}

DetectionResult MatchedFilterBank::detect(const CVec& y) const {
  if (static_cast<int>(y.size()) != N_)
    throw std::invalid_argument("MatchedFilterBank::detect: length mismatch");

  int best_cell = 0;
  cplx best_proj = 0.0;
  double best_pow = -1.0;
  size_t cell = 0;
  for (int ia = 0; ia < A_; ++ia)
    for (int ib = 0; ib < B_; ++ib)
      for (int ic = 0; ic < C_; ++ic, ++cell) {
        const cplx* row = bank_.data() + cell * N_;
        cplx acc = 0.0;
        for (int n = 0; n < N_; ++n) acc += std::conj(row[n]) * y[n];
        double p = std::norm(acc);
        if (p > best_pow) {
          best_pow = p;
          best_proj = acc;
          best_cell = static_cast<int>(cell);
        }
      }

  int ia = best_cell / (B_ * C_);
  int ib = (best_cell / C_) % B_;
  int ic = best_cell % C_;

  const auto& qam = grid_.qam;
  int iq = 0;
  double best_d = std::numeric_limits<double>::max();
  for (size_t q = 0; q < qam.size(); ++q) {
    double dnorm = std::norm(best_proj - qam[q]);
    if (dnorm < best_d) {
      best_d = dnorm;
      iq = static_cast<int>(q);
    }
  }

  DetectionResult r;
  r.s_hat = grid_.symbol(ia, ib, ic, iq);
  r.metric = best_pow;
  r.qam_hat = iq;
  r.bits_hat = encode_indices_word(grid_, ia, ib, ic, iq);
  return r;
}

DetectionResult matched_filter_detect(const CVec& y, const ManifoldGrid& grid,
                                      const DerivedGeometry& geom) {
  return MatchedFilterBank(grid, geom).detect(y);
}

namespace {

int nearest_index(const std::vector<double>& vals, double x) {
  int best = 0;
  double d = std::numeric_limits<double>::max();
  for (size_t i = 0; i < vals.size(); ++i) {
    double e = std::abs(vals[i] - x);
    if (e < d) {
      d = e;
      best = static_cast<int>(i);
    }
  }
  return best;
}

} // namespace

AcquireResult acquire(const std::vector<PilotObservation>& observations,
                      const ManifoldGrid& grid, double omega) {
  if (observations.empty())
    throw std::invalid_argument("acquire: no pilot observations");

  const int A = grid.A(), B = grid.B(), C = grid.C();
  const long total = static_cast<long>(A) * B * C * grid.qam_order();

  // responses keyed by spatial-kinematic cell; later duplicates win
  std::vector<double> resp(static_cast<size_t>(A) * B * C,
                           -std::numeric_limits<double>::max());
  for (const auto& [probe, power] : observations) {
    int ia = nearest_index(grid.thetas, probe.theta);
    int ib = nearest_index(grid.depths, probe.z);
    int ic = nearest_index(grid.velocities, probe.v);
    resp[(static_cast<size_t>(ia) * B + ib) * C + ic] = power;
  }
  auto have = [&](int ia, int ib, int ic) {
    return resp[(static_cast<size_t>(ia) * B + ib) * C + ic] !=
           -std::numeric_limits<double>::max();
  };

  // full spatial slice when it fits the budget, stride-2 lattice otherwise
  int step = (static_cast<long>(A) * B * C * 8 <= total) ? 1 : 2;

  AcquireResult res;
  int wa = 0, wb = 0, wc = 0;
  double best = -std::numeric_limits<double>::max();
  for (int ia = 0; ia < A; ia += step)
    for (int ib = 0; ib < B; ib += step)
      for (int ic = 0; ic < C; ic += step) {
        if (!have(ia, ib, ic)) continue;
        ++res.coarse_evals;
        double p = resp[(static_cast<size_t>(ia) * B + ib) * C + ic];
        if (p > best) {
          best = p;
          wa = ia;
          wb = ib;
          wc = ic;
        }
      }
  if (best == -std::numeric_limits<double>::max())
    throw std::invalid_argument("acquire: observations cover no coarse probe");

  const int ca = wa, cb = wb, cc = wc; // box stays anchored to the coarse winner
  for (int da = -1; da <= 1; ++da)
    for (int db = -1; db <= 1; ++db)
      for (int dc = -1; dc <= 1; ++dc) {
        int ia = ca + da, ib = cb + db, ic = cc + dc;
        if (ia < 0 || ia >= A || ib < 0 || ib >= B || ic < 0 || ic >= C) continue;
        if (!have(ia, ib, ic)) continue;
        ++res.fine_evals;
        double p = resp[(static_cast<size_t>(ia) * B + ib) * C + ic];
        if (p > best) {
          best = p;
          wa = ia;
          wb = ib;
          wc = ic;
        }
      }

  res.theta_hat = grid.thetas[wa];
  res.z_hat = grid.depths[wb];
  res.v_hat = grid.velocities[wc];
  res.g = res.v_hat == 0.0 ? 0.0 : omega / res.v_hat;
  return res;
}

SerResult ser_monte_carlo(const ManifoldGrid& grid, const DerivedGeometry& geom,
                          const SystemConfig& cfg, int n_symbols, std::uint64_t seed) {
  if (n_symbols < 1) throw std::invalid_argument("ser_monte_carlo: n_symbols must be positive");

  MatchedFilterBank bank(grid, geom);
  const int M = grid.bits_per_symbol;
  const std::uint32_t mask = (M >= 32) ? 0xffffffffu : ((1u << M) - 1u);
  // Per-element noise variance 10^(-snr/10)/N. The unit-norm signal carries
  // power 1/N per element, so each element sees snr_db and matched-filter
  // combining adds the usual 10*log10(N) of array gain on top.
  double sigma = std::sqrt(std::pow(10.0, -cfg.snr_db / 10.0) / geom.N);
  double s_half = sigma / std::sqrt(2.0);

  SplitMix64 bits_rng(derive_stream(seed, kStreamSymbols));
  SplitMix64 noise_rng(derive_stream(seed, kStreamAwgn));

  SerResult res;
  res.n_symbols = n_symbols;
  CVec y(geom.N);
  for (int trial = 0; trial < n_symbols; ++trial) {
    std::uint32_t word = static_cast<std::uint32_t>(bits_rng.next()) & mask;
    Symbol4D s = encode_bits(word, grid);
    CVec h = channel_vector(s, geom);
    for (int n = 0; n < geom.N; ++n) {
      cplx noise(s_half * noise_rng.normal(), s_half * noise_rng.normal());
      y[n] = h[n] * s.qam_value + noise;
    }
    DetectionResult d = bank.detect(y);
    if (d.bits_hat != word) {
      ++res.symbol_errors;
      res.bit_errors += __builtin_popcount(d.bits_hat ^ word);
    }
  }
  res.ser = static_cast<double>(res.symbol_errors) / n_symbols;
  res.ber = static_cast<double>(res.bit_errors) / (static_cast<double>(n_symbols) * M);
  return res;
}

} // namespace fsm4d
