#pragma once

#include <cstdint>
#include <cmath>

// Deterministic splittable random streams. Every Monte Carlo sample derives
// its own generator from (seed, sample_index), so results are identical for
// any worker count and scheduling. Gaussians come from an explicit
// Box-Muller so the byte-for-byte output does not depend on the standard
// library's unspecified normal_distribution algorithm.

namespace qdc {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0xA0761D6478BD642FULL * (index + 1)));
  mix.next();
  return mix.next();
}

struct GaussianStream {
  SplitMix64 gen;
  bool has_spare = false;
  double spare = 0.0;

  explicit GaussianStream(std::uint64_t stream_seed) : gen(stream_seed) {}

  double uniform() { return gen.uniform(); }

  double gaussian() {
    if (has_spare) {
      has_spare = false;
      return spare;
    }
    const double u1 = 1.0 - gen.uniform();  // (0, 1]
    const double u2 = gen.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare = r * std::sin(a);
    has_spare = true;
    return r * std::cos(a);
  }
};

}  // namespace qdc
