#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace quantsel {

/// Splittable counter-based generator: output i of stream (seed, label) is
/// mix(key + i * golden) with key = mix(seed ^ fnv1a(label)). No global state;
/// identical sequences on every platform.
class Rng {
public:
  Rng(uint64_t seed, const std::string& label)
      : key_(mix(seed ^ fnv1a(label))), ctr_(0) {}

  Rng split(const std::string& label) const {
    return Rng(key_, label);
  }

  uint64_t next_u64() { return mix(key_ + (++ctr_) * kGolden); }

  /// Uniform in [0,1), 53 mantissa bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n).
  uint64_t next_below(uint64_t n) {
    // multiply-shift; desk-scale bias is negligible and reproducible
    return static_cast<uint64_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  double next_gaussian() {
    // Box-Muller, always consumes two draws
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  static uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return h;
  }

private:
  static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static uint64_t mix(uint64_t z) {
    z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27; z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  uint64_t key_;
  uint64_t ctr_;
};

}  // namespace quantsel
