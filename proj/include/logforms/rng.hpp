#ifndef LOGFORMS_RNG_HPP
#define LOGFORMS_RNG_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

#include "logforms/fields.hpp"

namespace logforms {

/// Seeded generator passed explicitly wherever randomness is consumed.
/// mt19937_64 is fully specified by the standard and the draw helpers below
/// avoid std distributions, so a seed fixes every byte of the output on any
/// platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform draw from [0, n), rejection-sampled to remove modulo bias.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("SeededRng::below: empty range");
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

  /// Uniform draw from [lo, hi], inclusive.
  long long in_range(long long lo, long long hi) {
    if (lo > hi) throw std::invalid_argument("SeededRng::in_range: empty range");
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::mt19937_64 gen_;
};

/// Documented coefficient range for random rational draws.
inline constexpr long long kRatCoeffLo = -10000;
inline constexpr long long kRatCoeffHi = 10000;

inline Rat random_element(SeededRng& rng, const Rat&) {
  return Rat(rng.in_range(kRatCoeffLo, kRatCoeffHi));
}

inline Fp random_element(SeededRng& rng, const Fp& like) {
  return Fp(rng.below(like.modulus()), like.modulus());
}

template <class K>
K random_nonzero(SeededRng& rng, const K& like) {
  for (;;) {
    K c = random_element(rng, like);
    if (!is_zero(c)) return c;
  }
}

}  // namespace logforms

#endif  // LOGFORMS_RNG_HPP
