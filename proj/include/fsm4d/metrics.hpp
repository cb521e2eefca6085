#pragma once
// Link-quality and multiplexing figures built on top of the channel series.
#include "fsm4d/channel.hpp"
#include "fsm4d/config.hpp"

namespace fsm4d {

struct GainResult {
  double G = 0.0;
  double G_ref = 0.0;
  double rho = 0.0; // G / G_ref, unclamped
};

GainResult gain_result(double G, double G_ref);

// |time average of sum_n conj(h_n(t)) w_n(t)|. Drops to the Dirichlet/sinc
// envelope when the weights run at the wrong servo frequency.
double coherent_gain(const ChannelSeries& h, const ChannelSeries& w);

// Same, from a precomputed projection series demodulated by the servo tone.
double coherent_gain(const std::vector<cplx>& proj, const TimeGrid& tg, double f_hat);

// Effective rate of a mismatched beam: the lost fraction of the coherent
// power re-enters as self-interference.
//   log2(1 + snr rho^2 / (1 + snr (1 - rho^2)))
double spectral_efficiency(double rho, double snr_linear);

// Smallest codebook whose worst-case speed quantization keeps the
// integration-window correlation at or above rho_min.
int btsm_codebook_size(double rho_min, const SystemConfig& cfg);

// Users a scheme can separate: one beam per resolvable constellation cell
// along the axes the scheme actually modulates.
int multiplexing_capacity(Scheme s, const SystemConfig& cfg);

// Per-user SINR with K active users. Below the separability limit users are
// orthogonal; beyond it the excess load leaks as interference.
double sinr_multiuser(double snr_linear, int K, int K_max);
double sum_rate(double snr_linear, int K, int K_max);
double peak_sum_rate(double snr_linear, int K_max);

} // namespace fsm4d
