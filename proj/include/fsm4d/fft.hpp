#pragma once
// Iterative radix-2 FFT with unitary scaling (1/sqrt(N) both directions).
// Power-of-two sizes only, which the config layer already enforces.
// The plan precomputes bit-reversal and twiddle tables; a built plan is
// read-only and safe to share across threads.
#include <complex>
#include <vector>

namespace fsm4d {

class FftPlan {
public:
  explicit FftPlan(int n);

  int size() const { return n_; }

  // forward kernel exp(-j 2 pi n k / N) / sqrt(N); inverse conjugates
  void forward(std::vector<std::complex<double>>& x) const;
  void inverse(std::vector<std::complex<double>>& x) const;

private:
  void transform(std::vector<std::complex<double>>& x, bool inverse) const;

  int n_;
  int log2n_;
  std::vector<int> bitrev_;
  std::vector<std::complex<double>> twiddle_;  // exp(-j 2 pi k / N), k < N/2
};

} // namespace fsm4d
