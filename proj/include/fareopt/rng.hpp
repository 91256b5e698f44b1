#pragma once

#include <cmath>
#include <cstdint>

namespace fareopt {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic normal sampler with independent substreams keyed by
/// (seed, stream). Implementation-defined library distributions are avoided
/// so outputs are byte-stable across runs and platforms.
class NormalRng {
 public:
  explicit NormalRng(std::uint64_t seed, std::uint64_t stream = 0) {
    // Substream k starts from the k-th splitmix output of the base seed.
    std::uint64_t s = seed + stream * 0x9E3779B97F4A7C15ULL;
    state_ = splitmix64(s);
  }

  /// Uniform draw in the open interval (0, 1).
  double uniform() {
    const std::uint64_t bits = splitmix64(state_) >> 11;  // top 53 bits
    return (static_cast<double>(bits) + 0.5) * (1.0 / 9007199254740992.0);
  }

  /// Standard normal via Box-Muller; pairs are cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fareopt
