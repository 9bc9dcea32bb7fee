#include <doctest.h>

#include "mvx/errors.hpp"
#include "mvx/multivector.hpp"
#include "test_util.hpp"

using namespace mvx;
using test::Rng;

namespace {

// Independent oracle for the scalar product of simple blades: the
// determinant of the Gram matrix of their vector factors.
double gram_oracle(const std::vector<Multivector>& a,
                   const std::vector<Multivector>& b) {
  size_t k = a.size();
  if (k != b.size()) return 0.0;
  if (k == 0) return 1.0;
  std::vector<double> gram(k * k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) gram[i * k + j] = sprod(a[i], b[j]);
  // Laplace expansion; blades here are tiny (k <= 4 in tests)
  std::function<double(std::vector<double>, size_t)> det =
      [&](std::vector<double> m, size_t kk) -> double {
    if (kk == 1) return m[0];
    double acc = 0.0;
    for (size_t c = 0; c < kk; ++c) {
      std::vector<double> minor;
      for (size_t r = 1; r < kk; ++r)
        for (size_t cc = 0; cc < kk; ++cc)
          if (cc != c) minor.push_back(m[r * kk + cc]);
      acc += ((c % 2) ? -1.0 : 1.0) * m[c] * det(minor, kk - 1);
    }
    return acc;
  };
  return det(gram, k);
}

Multivector wedge_all(const std::vector<Multivector>& vs, int n) {
  Multivector w = Multivector::scalar(n, 1.0);
  for (const auto& v : vs) w = wedge(w, v);
  return w;
}

}  // namespace

TEST_CASE("basis blade wedge products") {
  int n = 3;
  auto b1 = Multivector::basis_vector(n, 1);
  auto b2 = Multivector::basis_vector(n, 2);
  CHECK(wedge(b1, b2)[0b011] == doctest::Approx(1.0));
  CHECK(wedge(b1, b1).max_abs() == 0.0);
  // (1 + b1) ^ b2 = b2 + b12
  auto x = Multivector::scalar(n, 1.0) + b1;
  auto w = wedge(x, b2);
  CHECK(w[0b010] == doctest::Approx(1.0));
  CHECK(w[0b011] == doctest::Approx(1.0));
}

TEST_CASE("contraction and scalar product basics") {
  int n = 2;
  auto b1 = Multivector::basis_vector(n, 1);
  auto b12 = Multivector::blade(n, 0b11);
  CHECK(lcontract(b1, b12)[0b10] == doctest::Approx(1.0));
  CHECK(sprod(b12, b12) == doctest::Approx(1.0));
  // scalar _| X = scalar * X
  auto s = Multivector::scalar(n, 2.5);
  auto x = Multivector::blade(n, 0b01, 3.0);
  CHECK(lcontract(s, x)[0b01] == doctest::Approx(7.5));
}

TEST_CASE("scalar product of random simple blades matches det-of-Gram") {
  Rng rng(7);
  for (int n : {2, 3, 4}) {
    for (int k = 1; k <= n; ++k) {
      for (int rep = 0; rep < 20; ++rep) {
        std::vector<Multivector> a, b;
        for (int i = 0; i < k; ++i) {
          a.push_back(test::random_vec(rng, n));
          b.push_back(test::random_vec(rng, n));
        }
        double expected = gram_oracle(a, b);
        double got = sprod(wedge_all(a, n), wedge_all(b, n));
        CHECK(got == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("clifford product of basis elements") {
  int n = 2;
  auto b1 = Multivector::basis_vector(n, 1);
  auto b2 = Multivector::basis_vector(n, 2);
  auto b12 = Multivector::blade(n, 0b11);
  CHECK(gp(b1, b1)[0] == doctest::Approx(1.0));
  CHECK(gp(b1, b2)[0b11] == doctest::Approx(1.0));
  // frozen by hand: (b1 b2)(b1 b2) = -1
  CHECK(gp(b12, b12)[0] == doctest::Approx(-1.0));
}

TEST_CASE("clifford associativity on random multivectors") {
  Rng rng(11);
  for (int n : {2, 3, 4, 5, 6}) {
    for (int rep = 0; rep < 10; ++rep) {
      auto x = test::random_mv(rng, n);
      auto y = test::random_mv(rng, n);
      auto z = test::random_mv(rng, n);
      CHECK(test::resid(gp(gp(x, y), z), gp(x, gp(y, z))) < 1e-12);
    }
  }
}

TEST_CASE("wedge (anti)commutation on homogeneous grades") {
  Rng rng(13);
  // exact on single blades
  for (int n : {3, 4, 5}) {
    for (int rep = 0; rep < 40; ++rep) {
      blade_t a = static_cast<blade_t>(rng.gen() % (1u << n));
      blade_t b = static_cast<blade_t>(rng.gen() % (1u << n));
      auto xa = Multivector::blade(n, a, rng.sym());
      auto yb = Multivector::blade(n, b, rng.sym());
      double sign = (grade_of(a) * grade_of(b) % 2) ? -1.0 : 1.0;
      CHECK(test::resid(wedge(xa, yb), sign * wedge(yb, xa)) == 0.0);
    }
  }
  // and at rounding level on homogeneous sums
  for (int n : {3, 4, 5}) {
    for (int rep = 0; rep < 10; ++rep) {
      auto x = test::random_mv(rng, n);
      auto y = test::random_mv(rng, n);
      for (int r = 0; r <= n; ++r)
        for (int s = 0; s <= n; ++s) {
          auto xr = grade_project(x, r);
          auto ys = grade_project(y, s);
          double sign = (r * s % 2) ? -1.0 : 1.0;
          CHECK(test::resid(wedge(xr, ys), sign * wedge(ys, xr)) < 1e-15);
        }
    }
  }
}

TEST_CASE("contraction duality (X _| Y).Z = Y.(X~ ^ Z)") {
  Rng rng(17);
  for (int n : {2, 3, 4, 5}) {
    for (int rep = 0; rep < 25; ++rep) {
      auto x = test::random_mv(rng, n);
      auto y = test::random_mv(rng, n);
      auto z = test::random_mv(rng, n);
      double lhs = sprod(lcontract(x, y), z);
      double rhs = sprod(y, wedge(reverse(x), z));
      CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
      // right-contraction mate: (X |_ Y).Z = X.(Z ^ Y~)
      double lhs2 = sprod(rcontract(x, y), z);
      double rhs2 = sprod(x, wedge(z, reverse(y)));
      CHECK(std::abs(lhs2 - rhs2) < 1e-12 * (1.0 + std::abs(lhs2)));
    }
  }
}

TEST_CASE("vector split bX = b _| X + b ^ X and Xb = X |_ b + X ^ b") {
  Rng rng(19);
  for (int n : {2, 3, 4, 5}) {
    for (int rep = 0; rep < 10; ++rep) {
      auto b = test::random_vec(rng, n);
      auto x = test::random_mv(rng, n);
      CHECK(test::resid(gp(b, x), lcontract(b, x) + wedge(b, x)) < 1e-14);
      CHECK(test::resid(gp(x, b), rcontract(x, b) + wedge(x, b)) < 1e-14);
    }
  }
}

TEST_CASE("involutions") {
  int n = 3;
  auto b1 = Multivector::basis_vector(n, 1);
  auto b12 = Multivector::blade(n, 0b011);
  CHECK(reverse(b12)[0b011] == doctest::Approx(-1.0));
  CHECK(grade_involution(b1)[0b001] == doctest::Approx(-1.0));
  // compose the two signs: (-1)^{k(k-1)/2} * (-1)^k = -1 at k = 2
  CHECK(conjugate(b12)[0b011] == doctest::Approx(-1.0));

  Rng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    auto x = test::random_mv(rng, 4);
    CHECK(test::resid(reverse(reverse(x)), x) == 0.0);
    CHECK(test::resid(conjugate(x), reverse(grade_involution(x))) == 0.0);
  }
}

TEST_CASE("commutator with bivectors") {
  int n = 2;
  auto b1 = Multivector::basis_vector(n, 1);
  auto b12 = Multivector::blade(n, 0b11);
  // frozen by hand: b12 x b1 = -b2
  CHECK(commutator(b12, b1)[0b10] == doctest::Approx(-1.0));
  CHECK(commutator(b12, b12).max_abs() == 0.0);
  CHECK(commutator(b12, Multivector::scalar(n, 4.0)).max_abs() == 0.0);
  // grade preservation for bivector arguments
  Rng rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    auto B = grade_project(test::random_mv(rng, 4), 2);
    auto x = test::random_mv(rng, 4);
    for (int k = 0; k <= 4; ++k) {
      auto ck = commutator(B, grade_project(x, k));
      CHECK(test::resid(grade_project(ck, k), ck) < 1e-14);
    }
  }
}

TEST_CASE("grade projection completeness") {
  Rng rng(31);
  auto x = test::random_mv(rng, 4);
  Multivector sum(4);
  for (int k = 0; k <= 4; ++k) sum = sum + grade_project(x, k);
  CHECK(test::resid(sum, x) == 0.0);
  CHECK(grade_project(Multivector::blade(4, 0b11), 0).max_abs() == 0.0);
}

TEST_CASE("dimension mismatch reported") {
  auto x = Multivector::basis_vector(2, 1);
  auto y = Multivector::basis_vector(3, 1);
  CHECK_THROWS_AS((void)wedge(x, y), StructuralError);
  CHECK_THROWS_AS((void)gp(x, y), StructuralError);
}
