#pragma once

#include <random>
#include <vector>

#include "mvx/extensor.hpp"
#include "mvx/multivector.hpp"

namespace mvx::test {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double sym() { return 2.0 * uniform() - 1.0; }
  int index(int n) { return static_cast<int>(gen() % n); }
};

inline Multivector random_mv(Rng& rng, int n) {
  Multivector x(n);
  for (int m = 0; m < x.ncoeffs(); ++m) x[m] = rng.sym();
  return x;
}

inline Multivector random_vec(Rng& rng, int n) {
  Multivector x(n);
  for (int mu = 1; mu <= n; ++mu)
    x[blade_t{1} << (mu - 1)] = rng.sym();
  return x;
}

inline Extensor11 random_ext(Rng& rng, int n) {
  Extensor11 t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.at(i, j) = rng.sym();
  return t;
}

inline Extensor11 random_nonsingular_ext(Rng& rng, int n) {
  Extensor11 t = Extensor11::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.at(i, j) += 0.3 * rng.sym();
  return t;
}

inline double resid(const Multivector& a, const Multivector& b) {
  return (a - b).max_abs() / (1.0 + std::max(a.max_abs(), b.max_abs()));
}

}  // namespace mvx::test
