#pragma once

// Seeded SplitMix64 stream. Bounded draws use rejection sampling on the raw
// 64-bit output so that sequences are identical across standard libraries
// (std::uniform_int_distribution is implementation-defined).

#include <ilab/field.hpp>

#include <cstdint>
#include <limits>

namespace ilab {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do x = (*this)(); while (x >= limit);
    return x % bound;
  }

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Derives an independent stream, e.g. one per experiment cell.
  SplitMix64 fork(std::uint64_t salt) {
    SplitMix64 child(state_ ^ (salt * 0xD1B54A32D192ED03ULL));
    child();
    return child;
  }

 private:
  std::uint64_t state_;
};

/// Random scalar: uniform residue for F_p, integer in [-bound, bound] for Q.
template <ExactField K>
K random_scalar(const FieldSpec& field, SplitMix64& rng, std::int64_t rational_bound = 20) {
  if constexpr (std::same_as<K, Fp>) {
    return Fp(field, static_cast<std::int64_t>(rng.below(field.p)));
  } else {
    return Rational(field, rng.between(-rational_bound, rational_bound));
  }
}

}  // namespace ilab
