#include "fsm4d/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace fsm4d {

GainResult gain_result(double G, double G_ref) {
  if (!(G_ref > 0.0)) throw std::invalid_argument("gain_result: G_ref must be positive");
  return {G, G_ref, G / G_ref};
}

double coherent_gain(const ChannelSeries& h, const ChannelSeries& w) {
  if (h.N != w.N || h.n_t != w.n_t)
    throw std::invalid_argument("coherent_gain: series shapes differ");
  cplx acc = 0.0;
  for (size_t i = 0; i < h.data.size(); ++i)
    acc += std::conj(h.data[i]) * w.data[i];
  return std::abs(acc) / static_cast<double>(h.n_t);
}

double coherent_gain(const std::vector<cplx>& proj, const TimeGrid& tg, double f_hat) {
  if (static_cast<int>(proj.size()) != tg.size())
    throw std::invalid_argument("coherent_gain: projection length mismatch");
  cplx acc = 0.0;
  for (int j = 0; j < tg.size(); ++j)
    acc += proj[j] * std::polar(1.0, -2.0 * kPi * f_hat * tg.t(j));
  return std::abs(acc) / static_cast<double>(tg.size());
}

double spectral_efficiency(double rho, double snr_linear) {
  double r2 = rho * rho;
  return std::log2(1.0 + snr_linear * r2 / (1.0 + snr_linear * (1.0 - r2)));
}

int btsm_codebook_size(double rho_min, const SystemConfig& cfg) {
  if (!(rho_min > 0.0) || rho_min > 1.0)
    throw std::domain_error("btsm_codebook_size: rho_min must be in (0, 1]");
  // worst-case speed error v_max / (2B) maps to a servo offset
  // 2 f_c dv / c; the window correlation is sinc of offset * T_int
  double x = inverse_sinc(rho_min);
  double b = cfg.f_c * cfg.v_max * cfg.T_int / (cfg.c_light * x);
  return static_cast<int>(std::ceil(b));
}

int multiplexing_capacity(Scheme s, const SystemConfig& cfg) {
  switch (s) {
    case Scheme::Fsm:
    case Scheme::Btsm: return cfg.A * cfg.B * cfg.C;
    case Scheme::Ttd: return cfg.A * cfg.B;
    case Scheme::OtfsStyle: return cfg.A * cfg.N_D;
    case Scheme::Ldma: return cfg.A;
  }
  return cfg.A;
}

double sinr_multiuser(double snr_linear, int K, int K_max) {
  if (K < 1 || K_max < 1) throw std::invalid_argument("sinr_multiuser: K and K_max must be positive");
  double share = snr_linear / K;
  if (K <= K_max) return share;
  double overload = static_cast<double>(K) / K_max - 1.0;
  return share / (1.0 + snr_linear * overload * overload);
}

double sum_rate(double snr_linear, int K, int K_max) {
  return K * std::log2(1.0 + sinr_multiuser(snr_linear, K, K_max));
}

double peak_sum_rate(double snr_linear, int K_max) {
  return sum_rate(snr_linear, K_max, K_max);
}

} // namespace fsm4d
