#include "fsm4d/manifold.hpp"

#include <cmath>

namespace fsm4d {

uint32_t gray_encode(uint32_t i) { return i ^ (i >> 1); }

uint32_t gray_decode(uint32_t g) {
  uint32_t i = g;
  for (uint32_t shift = 1; shift < 32; shift <<= 1) i ^= i >> shift;
  return i;
}

static int ilog2(int x) {
  int b = 0;
  while ((1 << b) < x) ++b;
  return b;
}

Symbol4D ManifoldGrid::symbol(int ia, int ib, int ic, int iq) const {
  Symbol4D s;
  s.theta = thetas[ia];
  s.z = depths[ib];
  s.v = velocities[ic];
  s.qam_index = iq;
  s.qam_value = qam[iq];
  return s;
}

// Square QAM, unit average energy. The array is indexed by the Gray label:
// the label's top half Gray-decodes to the I level, bottom half to the Q
// level, so one-bit label flips move one level along one axis. order = 2 is
// the BPSK degenerate case.
static CVec make_qam(int order) {
  CVec q(order);
  if (order == 2) {
    q[0] = {1.0, 0.0};
    q[1] = {-1.0, 0.0};
    return q;
  }
  int m = ilog2(order);
  if (m % 2 != 0)
    throw GridError("qam_order must be 2 or an even power of two (square QAM)");
  int side = 1 << (m / 2);
  // per-axis average of levels {±1, ±3, ...} is (side^2 - 1)/3
  double scale = 1.0 / std::sqrt(2.0 * (side * side - 1) / 3.0);
  for (int gi = 0; gi < side; ++gi) {
    for (int gq = 0; gq < side; ++gq) {
      int li = (int)gray_decode((uint32_t)gi);
      int lq = (int)gray_decode((uint32_t)gq);
      double re = (2 * li - (side - 1)) * scale;
      double im = (2 * lq - (side - 1)) * scale;
      q[(gi << (m / 2)) | gq] = {re, im};
    }
  }
  return q;
}

ManifoldGrid build_grid(const DerivedGeometry& geom, int A, int B, int C,
                        int qam_order, GridMode mode, double fov_deg) {
  auto pow2 = [](int x) { return x > 0 && (x & (x - 1)) == 0; };
  if (!pow2(A) || !pow2(B) || !pow2(C) || !pow2(qam_order))
    throw GridError("grid cardinalities must be powers of two");
  if ((long long)A * B * C * qam_order < 2)
    throw GridError("grid must carry at least one bit");

  ManifoldGrid grid;
  grid.mode = mode;

  double fov = fov_deg * kPi / 180.0;
  grid.thetas.resize(A);
  for (int i = 0; i < A; ++i)  // bin centers, symmetric; A=1 gives boresight
    grid.thetas[i] = fov * (2 * i + 1 - A) / double(A);

  grid.dz_min = depth_null_spacing(1, geom);
  grid.depths.resize(B);
  for (int j = 0; j < B; ++j) grid.depths[j] = geom.z0 + j * grid.dz_min;
  double fresnel_far = 2.0 * geom.D * geom.D / geom.lambda;
  if (grid.depths.back() >= fresnel_far || grid.depths.front() <= 0.0)
    throw GridError("depth grid exits the Fresnel validity region (0, 2D^2/lambda)");

  grid.velocities.resize(C);
  for (int l = 0; l < C; ++l) {
    if (mode == GridMode::Uniform)
      grid.velocities[l] = geom.v_max * l / double(C);
    else
      grid.velocities[l] = velocity_null_spacing(l, geom);
  }

  grid.qam = make_qam(qam_order);
  grid.bits_per_symbol = ilog2(A) + ilog2(B) + ilog2(C) + ilog2(qam_order);
  return grid;
}

void encode_bits_indices(uint32_t word, const ManifoldGrid& grid,
                         int& ia, int& ib, int& ic, int& iq) {
  int wa = ilog2(grid.A()), wb = ilog2(grid.B());
  int wc = ilog2(grid.C()), wq = ilog2(grid.qam_order());
  uint32_t fa = (word >> (wb + wc + wq)) & ((1u << wa) - 1);
  uint32_t fb = (word >> (wc + wq)) & ((1u << wb) - 1);
  uint32_t fc = (word >> wq) & ((1u << wc) - 1);
  uint32_t fq = word & ((1u << wq) - 1);
  ia = (int)gray_decode(fa);
  ib = (int)gray_decode(fb);
  ic = (int)gray_decode(fc);
  iq = (int)fq;  // qam field: Gray structure lives inside the constellation map
}

uint32_t encode_indices_word(const ManifoldGrid& grid, int ia, int ib, int ic, int iq) {
  int wb = ilog2(grid.B()), wc = ilog2(grid.C()), wq = ilog2(grid.qam_order());
  uint32_t word = gray_encode((uint32_t)ia);
  word = (word << wb) | gray_encode((uint32_t)ib);
  word = (word << wc) | gray_encode((uint32_t)ic);
  word = (word << wq) | (uint32_t)iq;
  return word;
}

Symbol4D encode_bits(uint32_t word, const ManifoldGrid& grid) {
  if (grid.bits_per_symbol < 32 && (word >> grid.bits_per_symbol) != 0)
    throw GridError("bit word wider than bits_per_symbol");
  int ia, ib, ic, iq;
  encode_bits_indices(word, grid, ia, ib, ic, iq);
  return grid.symbol(ia, ib, ic, iq);
}

uint32_t decode_symbol(const Symbol4D& s, const ManifoldGrid& grid) {
  auto index_of = [](const std::vector<double>& vals, double x) {
    int best = 0;
    double err = std::abs(vals[0] - x);
    for (int i = 1; i < (int)vals.size(); ++i) {
      double e = std::abs(vals[i] - x);
      if (e < err) { err = e; best = i; }
    }
    return best;
  };
  int ia = index_of(grid.thetas, s.theta);
  int ib = index_of(grid.depths, s.z);
  int ic = index_of(grid.velocities, s.v);
  return encode_indices_word(grid, ia, ib, ic, s.qam_index);
}

void steering_vectors(const Symbol4D& s, const DerivedGeometry& geom,
                      CVec& a, CVec& c, CVec& b) {
  int N = geom.N;
  a.resize(N); c.resize(N); b.resize(N);
  double st = std::sin(s.theta);
  double vc = s.v / geom.c_light;
  for (int n = 0; n < N; ++n) {
    double u = geom.u(n);
    a[n] = std::polar(1.0, -geom.k * geom.xi[n] * st);
    c[n] = std::polar(1.0, -geom.k * u * u / (2.0 * s.z));
    b[n] = std::polar(1.0, -geom.k * geom.xi[n] * vc);
  }
}

CVec channel_vector(const Symbol4D& s, const DerivedGeometry& geom) {
  int N = geom.N;
  CVec h(N);
  double st = std::sin(s.theta);
  double vc = s.v / geom.c_light;
  double rn = 1.0 / std::sqrt(double(N));
  for (int n = 0; n < N; ++n) {
    double u = geom.u(n);
    double phase = geom.k * (geom.xi[n] * st + u * u / (2.0 * s.z) + geom.xi[n] * vc);
    h[n] = std::polar(rn, -phase);
  }
  return h;
}

cplx manifold_correlation(const Symbol4D& si, const Symbol4D& sj,
                          const DerivedGeometry& geom) {
  int N = geom.N;
  double sti = std::sin(si.theta), stj = std::sin(sj.theta);
  cplx acc{0.0, 0.0};
  for (int n = 0; n < N; ++n) {
    double u2 = geom.u(n) * geom.u(n);
    double pi_ = geom.k * (geom.xi[n] * sti + u2 / (2.0 * si.z) +
                           geom.xi[n] * si.v / geom.c_light);
    double pj_ = geom.k * (geom.xi[n] * stj + u2 / (2.0 * sj.z) +
                           geom.xi[n] * sj.v / geom.c_light);
    acc += std::polar(1.0, pi_ - pj_);  // conj(h_i) h_j term, amplitudes 1/N
  }
  return acc / double(N);
}

double null_surface_velocity(int m, double z_tilde, const DerivedGeometry& geom) {
  return 2.0 * m * kPi / (geom.N * geom.d) - (geom.N - 1) * geom.d * z_tilde / 2.0;
}

double kappa_of_dz(double dz, double z0) { return dz / (2.0 * z0 * z0); }

double dv_from_vtilde(double v_tilde, const DerivedGeometry& geom) {
  return v_tilde * geom.c_light / geom.k;
}

double vtilde_from_dv(double dv, const DerivedGeometry& geom) {
  return geom.k * dv / geom.c_light;
}

double ztilde_from_dz(double dz, const DerivedGeometry& geom) {
  return geom.k * kappa_of_dz(dz, geom.z0);
}

double depth_null_spacing(int m, const DerivedGeometry& geom) {
  double z_tilde = 4.0 * m * kPi / (double(geom.N) * (geom.N - 1) * geom.d * geom.d);
  return 2.0 * geom.z0 * geom.z0 * z_tilde / geom.k;
}

double velocity_null_spacing(int m, const DerivedGeometry& geom) {
  return dv_from_vtilde(null_surface_velocity(m, 0.0, geom), geom);
}

OrthWeights default_orth_weights(const DerivedGeometry& geom) {
  OrthWeights w;
  w.alpha_theta = (geom.D / geom.lambda) * (geom.D / geom.lambda);
  w.alpha_z = 1.0 / (geom.dz_fresnel * geom.dz_fresnel);
  double s = geom.N * geom.d * geom.k / (2.0 * kPi * geom.c_light);
  w.alpha_v = s * s;
  w.alpha_d = 1.0;
  return w;
}

double orthogonality_metric(const Symbol4D& si, const Symbol4D& sj,
                            const OrthWeights& w) {
  double dt = si.theta - sj.theta;
  double dz = si.z - sj.z;
  double dv = si.v - sj.v;
  double dd = std::abs(si.qam_value - sj.qam_value);
  return w.alpha_theta * dt * dt + w.alpha_z * dz * dz + w.alpha_v * dv * dv +
         w.alpha_d * dd * dd;
}

StmRamp gradient_for_velocity(double v_syn, double omega) {
  if (v_syn == 0.0) throw std::domain_error("gradient_for_velocity: v_syn must be nonzero");
  return StmRamp{omega / v_syn, omega, v_syn};
}

double stm_ramp_phase(const StmRamp& ramp, double xi, double t) {
  return ramp.omega * t + ramp.g * xi;
}

} // namespace fsm4d
