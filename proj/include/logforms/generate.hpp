#ifndef LOGFORMS_GENERATE_HPP
#define LOGFORMS_GENERATE_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "logforms/logarithmic.hpp"
#include "logforms/rng.hpp"

namespace logforms {

/// Sample lambda exactly inside the hyperplane sum d_i lambda_i = 0 by
/// drawing the first m-1 coordinates and solving for the last.  Resamples
/// until the genericity flags hold (all nonzero, pairwise distinct).
template <class K>
std::vector<K> random_lambda(const DegreeVector& dv, SeededRng& rng, const K& like,
                             int max_tries = 64) {
  const int m = dv.m();
  const K dm_inv = inv(from_int_like(like, dv.part(m - 1)));
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    std::vector<K> lambda;
    lambda.reserve(static_cast<std::size_t>(m));
    K partial = like - like;
    for (int i = 0; i < m - 1; ++i) {
      K l = random_element(rng, like);
      partial += from_int_like(like, dv.part(i)) * l;
      lambda.push_back(l);
    }
    lambda.push_back(-(partial * dm_inv));

    bool ok = true;
    for (std::size_t i = 0; i < lambda.size() && ok; ++i) {
      if (is_zero(lambda[i])) ok = false;
      for (std::size_t j = i + 1; j < lambda.size() && ok; ++j)
        if (lambda[i] == lambda[j]) ok = false;
    }
    if (ok) return lambda;
  }
  throw std::runtime_error("random_lambda: retry budget exhausted (field too small?)");
}

/// A seeded generic instance: lambda in the hyperplane with genericity flags
/// satisfied, dense random F_i of the prescribed degrees.
template <class K>
LogInstance<K> random_instance(int n, const DegreeVector& dv, const K& like, std::uint64_t seed) {
  check_char_bound(like, dv.total());
  SeededRng rng(seed);
  std::vector<K> lambda = random_lambda(dv, rng, like);
  std::vector<Polynomial<K>> F;
  F.reserve(static_cast<std::size_t>(dv.m()));
  for (int i = 0; i < dv.m(); ++i) F.push_back(random_poly(n, dv.part(i), like, rng));
  return LogInstance<K>(n, dv, std::move(lambda), std::move(F), seed);
}

}  // namespace logforms

#endif  // LOGFORMS_GENERATE_HPP
