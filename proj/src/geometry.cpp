#include "fsm4d/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace fsm4d {

DerivedGeometry derive_geometry(const SystemConfig& cfg) {
  validate(cfg);
  DerivedGeometry g;
  g.lambda = cfg.c_light / cfg.f_c;
  g.d = cfg.d_over_lambda * g.lambda;
  g.D = cfg.N * g.d;
  g.k = 2.0 * kPi / g.lambda;
  g.F = g.D * g.D / (4.0 * g.lambda * cfg.z0);
  g.dx_rayleigh = g.lambda * cfg.z0 / g.D;
  g.dz_fresnel = 2.0 * g.lambda * cfg.z0 * cfg.z0 / (g.D * g.D);
  g.T_c = g.lambda / (2.0 * cfg.v_max);
  g.w_spot = 2.44 * g.lambda * cfg.z0 / g.D;
  g.xi.resize(cfg.N);
  // (n - (N-1)/2) is a half-integer, exact in double; pairs cancel so sum(xi) = 0
  for (int n = 0; n < cfg.N; ++n)
    g.xi[n] = (double(n) - 0.5 * double(cfg.N - 1)) * g.d;
  g.N = cfg.N;
  g.z0 = cfg.z0;
  g.v_max = cfg.v_max;
  g.f_c = cfg.f_c;
  g.c_light = cfg.c_light;
  return g;
}

double doppler_frequency(double v, const SystemConfig& cfg) {
  return 2.0 * cfg.f_c * v / cfg.c_light;
}

double doppler_frequency(double v, const DerivedGeometry& geom) {
  return 2.0 * geom.f_c * v / geom.c_light;
}

double sinc_norm(double x) {
  if (x == 0.0) return 1.0;
  double px = kPi * x;
  return std::sin(px) / px;
}

double inverse_sinc(double rho_min) {
  if (!(rho_min > 0.0) || !(rho_min <= 1.0))
    throw std::domain_error("inverse_sinc: argument must be in (0, 1]");
  if (rho_min == 1.0) return 0.0;
  // sinc_norm is strictly decreasing on [0,1]; first crossing is in (0,1)
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (sinc_norm(mid) > rho_min) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace fsm4d
