#pragma once
// System configuration. JSON keys mirror the field names exactly; absent
// keys keep the desk-scale defaults below. --full switches to the
// full-scale parameter set (N=4096, n_t=4096, n_mc=64).
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fsm4d {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class GridMode { Uniform, Orthogonal };

struct SystemConfig {
  // physical / link parameters
  double f_c = 140e9;          // carrier [Hz]
  int N = 1024;                // element count, power of two
  double d_over_lambda = 0.5;  // element spacing in wavelengths
  double z0 = 30.0;            // reference range r0 [m]
  double v_max = 200.0;        // max user speed [m/s]
  double T_int = 0.5e-3;       // coherent integration window [s]
  double snr_db = 20.0;        // receive SNR [dB]
  double omega = 6.283185307179586e4;  // STM angular frequency [rad/s], 2*pi*10 kHz
  double sigma_phi = 0.02;     // phase-noise std [rad]
  double alpha_atm = 12.0;     // atmospheric loss [dB/km]
  double c_light = 299792458.0;
  int n_mc = 16;               // Monte Carlo trials
  int n_t = 1024;              // time samples per window
  uint64_t seed = 12345;

  // manifold grid
  int A = 4;                   // angle cardinality
  int B = 4;                   // depth cardinality
  int C = 4;                   // velocity cardinality
  int qam_order = 16;
  double fov_deg = 30.0;       // half-angle field of view
  GridMode mode = GridMode::Orthogonal;

  // baseline scheme parameters
  int B_cb = 16;               // BTSM velocity codebook size
  int N_D = 32;                // OTFS-style Doppler bins
};

// throws ConfigError naming the violated invariant
void validate(const SystemConfig& cfg);

// full-scale preset used by --full
SystemConfig full_scale(SystemConfig cfg);

// JSON I/O. load_config merges the file over defaults and validates;
// unknown keys are an error so runs stay auditable.
SystemConfig load_config(const std::string& path);
SystemConfig config_from_json_text(const std::string& text);
std::string config_to_json(const SystemConfig& cfg);  // resolved config, sorted keys

} // namespace fsm4d
