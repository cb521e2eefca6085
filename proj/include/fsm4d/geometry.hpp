#pragma once
// Closed-form derived geometry and the shared sinc utilities.
//
// Two element coordinates coexist:
//   xi[n] = (n - (N-1)/2) * d   centered, sum(xi) = 0; used for angle and
//                               velocity steering, distances, Doppler profiles.
//   u[n]  = n * d               edge-referenced; used by every quadratic
//                               (depth-chirp) phase. With the centered
//                               coordinate the depth-correlation dips land in
//                               the wrong place; the two differ only by a
//                               z-dependent linear tilt common to both sides
//                               of every inner product used here.
#include "fsm4d/config.hpp"
#include <vector>

namespace fsm4d {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct DerivedGeometry {
  double lambda;       // wavelength [m]
  double d;            // element spacing [m]
  double D;            // aperture [m]
  double k;            // wavenumber 2*pi/lambda [rad/m]
  double F;            // Fresnel number D^2/(4*lambda*z0)
  double dx_rayleigh;  // lateral resolution lambda*z0/D [m]
  double dz_fresnel;   // depth resolution 2*lambda*z0^2/D^2 [m]
  double T_c;          // coherence time lambda/(2*v_max) [s]
  double w_spot;       // Rayleigh spot width 2.44*lambda*z0/D [m]
  std::vector<double> xi;  // centered element positions

  // context carried along so grid/channel code needs no separate config
  int N;
  double z0;
  double v_max;
  double f_c;
  double c_light;

  double u(int n) const { return d * n; }  // chirp reference coordinate
};

DerivedGeometry derive_geometry(const SystemConfig& cfg);

// f_D = 2 f_c v / c (two-way carrier Doppler); sign follows v
double doppler_frequency(double v, const SystemConfig& cfg);
double doppler_frequency(double v, const DerivedGeometry& geom);

// normalized sinc sin(pi x)/(pi x), sinc_norm(0) = 1
double sinc_norm(double x);

// smallest x >= 0 with sinc_norm(x) = rho_min, bisection on [0,1);
// domain error outside (0,1]
double inverse_sinc(double rho_min);

} // namespace fsm4d
