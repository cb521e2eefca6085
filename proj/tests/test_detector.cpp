#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "fsm4d/detector.hpp"
#include "fsm4d/rng.hpp"

using namespace fsm4d;

namespace {

// small array, short range: keeps the depth grid inside the Fresnel region
SystemConfig small_config() {
  SystemConfig cfg;
  cfg.N = 256;
  cfg.z0 = 2.0;
  return cfg;
}

CVec transmit(const ManifoldGrid& grid, const DerivedGeometry& g, uint32_t word) {
  Symbol4D s = encode_bits(word, grid);
  CVec y = channel_vector(s, g);
  for (auto& v : y) v *= s.qam_value;
  return y;
}

} // namespace

TEST_CASE("bank projection of a matched vector returns the amplitude symbol") {
  SystemConfig cfg = small_config();
  DerivedGeometry g = derive_geometry(cfg);
  ManifoldGrid grid = build_grid(g, 2, 2, 2, 4, GridMode::Orthogonal);
  MatchedFilterBank bank(grid, g);
  CHECK(bank.cells() == 8);

  Symbol4D s = grid.symbol(1, 0, 1, 2);
  CVec y = channel_vector(s, g);
  for (auto& v : y) v *= grid.qam[2];
  cplx p = bank.project(1, 0, 1, y);
  CHECK(std::abs(p - grid.qam[2]) < 1e-12);
}

TEST_CASE("noiseless transmissions decode exactly for every word") {
  SystemConfig cfg = small_config();
  DerivedGeometry g = derive_geometry(cfg);
  ManifoldGrid grid = build_grid(g, 2, 2, 2, 4, GridMode::Orthogonal);
  MatchedFilterBank bank(grid, g);

  for (uint32_t w = 0; w < 32; ++w) {
    DetectionResult r = bank.detect(transmit(grid, g, w));
    CHECK(r.bits_hat == w);
    CHECK(r.metric == doctest::Approx(std::norm(encode_bits(w, grid).qam_value)).epsilon(1e-9));
  }
}

TEST_CASE("a carrier phase offset cannot move the spatial decision") {
  SystemConfig cfg = small_config();
  DerivedGeometry g = derive_geometry(cfg);
  ManifoldGrid grid = build_grid(g, 2, 2, 2, 4, GridMode::Orthogonal);
  MatchedFilterBank bank(grid, g);

  CVec y = transmit(grid, g, 13);
  DetectionResult ref = bank.detect(y);
  for (auto& v : y) v *= std::polar(1.0, 0.4);
  DetectionResult rot = bank.detect(y);
  CHECK(rot.s_hat.theta == ref.s_hat.theta);
  CHECK(rot.s_hat.z == ref.s_hat.z);
  CHECK(rot.s_hat.v == ref.s_hat.v);
  CHECK(rot.metric == doctest::Approx(ref.metric).epsilon(1e-9));
}

TEST_CASE("two users on adjacent velocity bins stay isolated") {
  SystemConfig cfg = small_config();
  DerivedGeometry g = derive_geometry(cfg);
  ManifoldGrid grid = build_grid(g, 2, 2, 2, 4, GridMode::Orthogonal);
  MatchedFilterBank bank(grid, g);

  cplx q1 = grid.qam[1], q2 = grid.qam[3];
  CVec h1 = channel_vector(grid.symbol(0, 1, 0, 1), g);
  CVec h2 = channel_vector(grid.symbol(0, 1, 1, 3), g);
  CVec y(g.N);
  for (int n = 0; n < g.N; ++n) y[n] = h1[n] * q1 + h2[n] * q2;

  CHECK(std::abs(bank.project(0, 1, 0, y) - q1) < 1e-6);
  CHECK(std::abs(bank.project(0, 1, 1, y) - q2) < 1e-6);
}

TEST_CASE("acquisition walks coarse to fine inside its probe budget") {
  SystemConfig cfg = small_config();
  DerivedGeometry g = derive_geometry(cfg);
  // 16-point amplitude axis: the whole 64-cell slice fits |grid|/8
  ManifoldGrid grid = build_grid(g, 4, 4, 4, 16, GridMode::Orthogonal);

  auto observe = [&](const Symbol4D& target) {
    std::vector<PilotObservation> obs;
    for (int ia = 0; ia < 4; ++ia)
      for (int ib = 0; ib < 4; ++ib)
        for (int ic = 0; ic < 4; ++ic) {
          Symbol4D probe = grid.symbol(ia, ib, ic, 0);
          double resp = std::norm(manifold_correlation(probe, target, g));
          obs.emplace_back(probe, resp);
        }
    return obs;
  };

  Symbol4D target = grid.symbol(2, 1, 3, 0);
  AcquireResult r = acquire(observe(target), grid, 2.0 * kPi * 1e4);
  CHECK(r.theta_hat == target.theta);
  CHECK(r.z_hat == target.z);
  CHECK(r.v_hat == target.v);
  CHECK(r.g == doctest::Approx(2.0 * kPi * 1e4 / target.v));
  CHECK(r.coarse_evals == 64);
  CHECK(r.coarse_evals * 8 <= 4 * 4 * 4 * 16);
  CHECK(r.fine_evals <= 27);

  // off-grid velocity snaps to the nearest bin
  Symbol4D off = target;
  off.v = grid.velocities[3] + 0.3 * (grid.velocities[1] - grid.velocities[0]);
  AcquireResult ro = acquire(observe(off), grid, 2.0 * kPi * 1e4);
  CHECK(ro.v_hat == grid.velocities[3]);

  // a static user starts with no ramp
  Symbol4D still = grid.symbol(1, 2, 0, 0);
  CHECK(acquire(observe(still), grid).g == 0.0);

  CHECK_THROWS_AS(acquire({}, grid), std::invalid_argument);
}

TEST_CASE("acquisition falls back to a stride-2 lattice on shallow grids") {
  SystemConfig cfg = small_config();
  DerivedGeometry g = derive_geometry(cfg);
  // 4-point amplitude axis: 64 cells * 8 > 256, so coarse must subsample
  ManifoldGrid grid = build_grid(g, 4, 4, 4, 4, GridMode::Orthogonal);

  Symbol4D target = grid.symbol(1, 1, 1, 0);
  std::vector<PilotObservation> obs;
  for (int ia = 0; ia < 4; ++ia)
    for (int ib = 0; ib < 4; ++ib)
      for (int ic = 0; ic < 4; ++ic) {
        Symbol4D probe = grid.symbol(ia, ib, ic, 0);
        obs.emplace_back(probe, std::norm(manifold_correlation(probe, target, g)));
      }

  AcquireResult r = acquire(obs, grid);
  CHECK(r.coarse_evals == 8); // the {0,2}^3 lattice
  CHECK(r.coarse_evals * 8 <= 4 * 4 * 4 * 4);
  CHECK(r.theta_hat == target.theta); // fine pass recovers the off-lattice cell
  CHECK(r.z_hat == target.z);
  CHECK(r.v_hat == target.v);

  // observations that miss the whole coarse lattice cannot seed the search
  std::vector<PilotObservation> odd = {{grid.symbol(1, 1, 1, 0), 1.0}};
  CHECK_THROWS_AS(acquire(odd, grid), std::invalid_argument);
}

TEST_CASE("error-rate monte carlo is clean at high snr and reproducible") {
  SystemConfig cfg = small_config();
  DerivedGeometry g = derive_geometry(cfg);
  ManifoldGrid grid = build_grid(g, 2, 2, 2, 4, GridMode::Orthogonal);

  cfg.snr_db = 40.0;
  SerResult hi = ser_monte_carlo(grid, g, cfg, 500, 7);
  CHECK(hi.ser == 0.0);
  CHECK(hi.ber == 0.0);

  // -18 dB per element is about +6 dB after the 24 dB combining gain at N=256
  cfg.snr_db = -18.0;
  SerResult a = ser_monte_carlo(grid, g, cfg, 800, 11);
  SerResult b = ser_monte_carlo(grid, g, cfg, 800, 11);
  CHECK(a.symbol_errors == b.symbol_errors);
  CHECK(a.bit_errors == b.bit_errors);
  CHECK(a.symbol_errors > 0); // noisy enough to exercise the error paths
  CHECK(a.ber <= a.ser);
  CHECK(a.ber * grid.bits_per_symbol >= a.ser);
  CHECK_THROWS_AS(ser_monte_carlo(grid, g, cfg, 0, 1), std::invalid_argument);
}

TEST_CASE("residual errors cost about one bit when amplitude noise dominates") {
  // single spatial pair plus deep QAM: nearly all errors are Gray-adjacent
  // amplitude slips, so the per-error bit cost stays below 2
  SystemConfig cfg = small_config();
  cfg.snr_db = -10.0; // about 14 dB post-combining at N=256
  DerivedGeometry g = derive_geometry(cfg);
  ManifoldGrid grid = build_grid(g, 2, 1, 1, 16, GridMode::Orthogonal);

  SerResult r = ser_monte_carlo(grid, g, cfg, 6000, 3);
  REQUIRE(r.symbol_errors >= 50);
  double bits_per_error = double(r.bit_errors) / double(r.symbol_errors);
  CHECK(bits_per_error <= 2.0);
}
