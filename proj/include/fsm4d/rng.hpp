#pragma once
// Deterministic RNG: splitmix64 streams, explicit bit-to-double mapping,
// Box-Muller normals. std::*_distribution is avoided on purpose so that
// identical seeds give identical doubles on every standard library.
#include <cstdint>
#include <cmath>

namespace fsm4d {

class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform on [0,1), 53-bit resolution
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal; second Box-Muller value is cached
  double normal() {
    if (have_spare_) { have_spare_ = false; return spare_; }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Independent substream for (seed, a, b). Used to give every
// (trial, purpose) pair its own stream so Monte Carlo results do not
// depend on evaluation order or thread schedule.
inline uint64_t derive_stream(uint64_t seed, uint64_t a, uint64_t b = 0) {
  SplitMix64 g(seed ^ (a * 0xA24BAED4963EE407ull) ^ (b * 0x9FB21C651E98DF25ull));
  g.next();
  return g.next();
}

// substream purpose tags
enum : uint64_t {
  kStreamTrajectory = 1,  // x0 draw
  kStreamPhaseNoise = 2,  // per-element per-sample phase noise
  kStreamSymbols    = 3,  // random payload bits
  kStreamAwgn       = 4,  // receiver noise
};

} // namespace fsm4d
