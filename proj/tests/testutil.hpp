#pragma once

#include "wittkit/matrix.hpp"

#include <random>

namespace testutil {

using wittkit::Int;
using wittkit::exactalg::Matrix;
using wittkit::exactalg::RingSpec;

// One fixed-seed generator per suite keeps runs reproducible.
struct Rng {
  std::mt19937_64 g;
  explicit Rng(uint64_t seed = 0x5eed) : g(seed) {}

  long uniform(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(g);
  }

  Matrix matrix(const RingSpec &ring, int r, int c, long lo = -9, long hi = 9) {
    Matrix m(ring, r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        m.set(i, j, Int(uniform(lo, hi)));
    return m;
  }
};

} // namespace testutil
