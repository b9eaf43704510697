#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace cvlasso::rng {

// Serialized into every output file so a run can be reproduced from
// (generator id, seed) alone.
inline constexpr std::string_view kGeneratorId =
    "xoshiro256++/splitmix64-seed/polar-gaussian/v1";

// Vigna's splitmix64; used for state expansion and stream derivation.
struct SplitMix64 {
  std::uint64_t state;

  constexpr std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// Blackman-Vigna xoshiro256++ with the reference seeding procedure
// (four splitmix64 outputs). Gaussian deviates come from the Marsaglia
// polar transform with the spare cached in the generator state.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& word : state_) word = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Fair coin from the top bit.
  bool next_coin() { return (next() >> 63) != 0; }

  /// Standard normal deviate.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_unit() - 1.0;
      v = 2.0 * next_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Seed for substream `index` of a run keyed by `master`. The mapping is a
/// fixed function of the pair, so replicate results never depend on the
/// order in which they execute.
inline constexpr std::uint64_t derive_seed(std::uint64_t master,
                                           std::uint64_t index) {
  SplitMix64 sm{master ^ ((index + 1) * 0x9E3779B97F4A7C15ULL)};
  sm.next();
  return sm.next();
}

}  // namespace cvlasso::rng
