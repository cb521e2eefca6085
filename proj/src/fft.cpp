#include "fsm4d/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace fsm4d {

namespace {
constexpr double kTau = 6.283185307179586476925286766559;
}

FftPlan::FftPlan(int n) : n_(n), log2n_(0) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw std::invalid_argument("FftPlan: size must be a power of two");
  while ((1 << log2n_) < n) ++log2n_;

  bitrev_.resize(n);
  bitrev_[0] = 0;
  for (int i = 1; i < n; ++i)
    bitrev_[i] = (bitrev_[i >> 1] >> 1) | ((i & 1) << (log2n_ - 1));

  twiddle_.resize(n / 2 > 0 ? n / 2 : 1);
  for (int k = 0; k < n / 2; ++k) {
    double ang = -kTau * static_cast<double>(k) / static_cast<double>(n);
    twiddle_[k] = {std::cos(ang), std::sin(ang)};
  }
}

void FftPlan::transform(std::vector<std::complex<double>>& x, bool inverse) const {
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("FftPlan: vector length does not match plan size");

  for (int i = 0; i < n_; ++i) {
    int j = bitrev_[i];
    if (j > i) std::swap(x[i], x[j]);
  }

  for (int len = 2; len <= n_; len <<= 1) {
    int half = len >> 1;
    int stride = n_ / len;  // twiddle index step at this stage
    for (int base = 0; base < n_; base += len) {
      for (int k = 0; k < half; ++k) {
        std::complex<double> w = twiddle_[k * stride];
        if (inverse) w = std::conj(w);
        std::complex<double> t = w * x[base + k + half];
        x[base + k + half] = x[base + k] - t;
        x[base + k] += t;
      }
    }
  }

  double s = 1.0 / std::sqrt(static_cast<double>(n_));
  for (auto& v : x) v *= s;
}

void FftPlan::forward(std::vector<std::complex<double>>& x) const { transform(x, false); }
void FftPlan::inverse(std::vector<std::complex<double>>& x) const { transform(x, true); }

} // namespace fsm4d
