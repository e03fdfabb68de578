#pragma once

// Deterministic randomness helpers for property tests. A fixed-seed xorshift
// generator keeps the suites reproducible across runs and platforms.

#include <cstdint>

#include "confdens/gaussian_rational.hpp"
#include "confdens/lambda_scalar.hpp"

namespace confdens::testutil {

struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : state(seed) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  // Uniform-ish integer in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline mpq_class random_rational(Rng& rng, long max_num = 6, long max_den = 4) {
  return make_rational(rng.range(-max_num, max_num), rng.range(1, max_den));
}

inline GaussianRational random_gaussian(Rng& rng) {
  return GaussianRational(random_rational(rng), random_rational(rng));
}

inline GaussianRational random_nonzero_gaussian(Rng& rng) {
  for (;;) {
    GaussianRational z = random_gaussian(rng);
    if (!z.is_zero()) return z;
  }
}

inline UniPoly random_unipoly(Rng& rng, int max_deg = 3) {
  std::vector<GaussianRational> c(static_cast<size_t>(rng.range(0, max_deg)) + 1);
  for (auto& x : c) x = random_gaussian(rng);
  return UniPoly::from_coeffs(std::move(c));
}

inline LambdaScalar random_lambda_scalar(Rng& rng, int max_deg = 2) {
  UniPoly den;
  do {
    den = random_unipoly(rng, max_deg);
  } while (den.is_zero());
  return LambdaScalar(random_unipoly(rng, max_deg), den);
}

}  // namespace confdens::testutil
