#include <doctest.h>

#include <cmath>

#include "mvx/errors.hpp"
#include "mvx/expr_parse.hpp"
#include "mvx/field.hpp"
#include "test_util.hpp"

using namespace mvx;
using test::Rng;

namespace {

Expr rnd_poly(Rng& rng, int n) {
  Expr e = konst(rng.sym());
  for (int i = 0; i < n; ++i) e = add(e, mul(konst(rng.sym()), coord(i)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      e = add(e, mul(konst(rng.sym()), mul(coord(i), coord(j))));
  return e;
}

MF rnd_field(Rng& rng, int n) {
  MF x(n);
  for (blade_t m = 0; m < (blade_t{1} << n); ++m) x.set(m, rnd_poly(rng, n));
  return x;
}

MF rnd_vec_field(Rng& rng, int n) {
  MF x(n);
  for (int mu = 0; mu < n; ++mu) x.set(blade_t{1} << mu, rnd_poly(rng, n));
  return x;
}

Multivector at(const MF& f, std::vector<double> p) {
  EvalCtx ctx(p);
  return f.eval(ctx);
}

}  // namespace

TEST_CASE("field evaluation") {
  int n = 2;
  MF f = MF::blade(n, 0b11, parse_expr("x1*x2", n));
  CHECK(at(f, {2.0, 3.0})[0b11] == doctest::Approx(6.0));
  MF c = MF::basis_vector(n, 1);
  CHECK(at(c, {5.0, -1.0})[0b01] == doctest::Approx(1.0));
  MF s = MF::blade(n, 0b10, parse_expr("sin(x1)", n));
  CHECK(at(s, {0.0, 5.0}).max_abs() == doctest::Approx(0.0));
}

TEST_CASE("field products agree with the numeric kernels") {
  Rng rng(41);
  int n = 3;
  MF X = rnd_field(rng, n), Y = rnd_field(rng, n);
  std::vector<double> p{0.4, -0.2, 1.1};
  EvalCtx ctx(p);
  auto xv = X.eval(ctx), yv = Y.eval(ctx);
  CHECK(test::resid(at(wedge(X, Y), p), wedge(xv, yv)) < 1e-13);
  CHECK(test::resid(at(gp(X, Y), p), gp(xv, yv)) < 1e-13);
  CHECK(test::resid(at(lcontract(X, Y), p), lcontract(xv, yv)) < 1e-13);
  CHECK(test::resid(at(rcontract(X, Y), p), rcontract(xv, yv)) < 1e-13);
  EvalCtx c2(p);
  CHECK(c2.eval(sprod(X, Y)) == doctest::Approx(sprod(xv, yv)));
  CHECK(test::resid(at(reverse(X), p), reverse(xv)) == 0.0);
}

TEST_CASE("directional derivative") {
  int n = 2;
  MF b1 = MF::basis_vector(n, 1);
  // constant field
  CHECK(at(dir_deriv(b1, MF::basis_vector(n, 2)), {1.0, 2.0}).max_abs() ==
        0.0);
  // b1 . del (x1 x2 b12) = x2 b12
  MF f = MF::blade(n, 0b11, parse_expr("x1*x2", n));
  CHECK(at(dir_deriv(b1, f), {2.0, 3.0})[0b11] == doctest::Approx(3.0));
  // linearity in the direction
  Rng rng(43);
  MF a = rnd_vec_field(rng, n), a2 = rnd_vec_field(rng, n);
  MF X = rnd_field(rng, n);
  MF lhs = dir_deriv(scale(konst(2.0), a) + scale(konst(-0.5), a2), X);
  MF rhs = scale(konst(2.0), dir_deriv(a, X)) +
           scale(konst(-0.5), dir_deriv(a2, X));
  CHECK(test::resid(at(lhs, {0.3, 0.8}), at(rhs, {0.3, 0.8})) < 1e-13);
}

TEST_CASE("directional derivative matches finite differences") {
  // cross-check oracle, not the implementation
  Rng rng(47);
  int n = 2;
  MF X = rnd_field(rng, n);
  Multivector b(n);
  b[0b01] = 0.8;
  b[0b10] = -0.4;
  MF bf = MF::constant(b);
  MF dX = dir_deriv(bf, X);
  std::vector<double> p{1.2, 0.5};
  double h = 1e-5;
  std::vector<double> pp{p[0] + h * 0.8, p[1] - h * 0.4};
  std::vector<double> pm{p[0] - h * 0.8, p[1] + h * 0.4};
  Multivector approx = (1.0 / (2 * h)) * (at(X, pp) - at(X, pm));
  CHECK(test::resid(at(dX, p), approx) < 1e-8);
}

TEST_CASE("Leibniz over canonical products") {
  Rng rng(53);
  int n = 3;
  MF a = rnd_vec_field(rng, n);
  MF X = rnd_field(rng, n), Y = rnd_field(rng, n);
  std::vector<double> p{0.2, 0.9, -0.6};
  auto d = [&](const MF& z) { return dir_deriv(a, z); };
  CHECK(test::resid(at(d(wedge(X, Y)), p),
                    at(wedge(d(X), Y) + wedge(X, d(Y)), p)) < 1e-10);
  CHECK(test::resid(at(d(gp(X, Y)), p), at(gp(d(X), Y) + gp(X, d(Y)), p)) <
        1e-10);
  CHECK(test::resid(at(d(lcontract(X, Y)), p),
                    at(lcontract(d(X), Y) + lcontract(X, d(Y)), p)) < 1e-10);
  EvalCtx ctx(p);
  CHECK(ctx.eval(dir_deriv(a, sprod(X, Y))) ==
        doctest::Approx(ctx.eval(add(sprod(d(X), Y), sprod(X, d(Y))))));
}

TEST_CASE("Lie bracket") {
  int n = 2;
  MF c1 = MF::basis_vector(n, 1), c2 = MF::basis_vector(n, 2);
  CHECK(at(lie_bracket(c1, c2), {0.7, 0.1}).max_abs() == 0.0);
  // [x2 b1, b2] = -b1
  MF a = MF::blade(n, 0b01, coord(1));
  CHECK(at(lie_bracket(a, c2), {1.3, 2.2})[0b01] == doctest::Approx(-1.0));
  // Jacobi identity
  Rng rng(59);
  MF u = rnd_vec_field(rng, n), v = rnd_vec_field(rng, n),
     w = rnd_vec_field(rng, n);
  MF jac = lie_bracket(u, lie_bracket(v, w)) +
           lie_bracket(v, lie_bracket(w, u)) +
           lie_bracket(w, lie_bracket(u, v));
  CHECK(at(jac, {0.4, -0.9}).max_abs() < 1e-12);
  CHECK_THROWS_AS((void)lie_bracket(MF::blade(n, 0b11, konst(1.0)), c1),
                  StructuralError);
}

TEST_CASE("nabla operators") {
  Rng rng(61);
  int n = 3;
  MF X = rnd_field(rng, n);
  std::vector<double> p{0.5, 1.1, -0.3};
  // del ^ (del ^ X) = 0 and del _| (del _| X) = 0
  CHECK(at(nabla(nabla(X, NablaKind::Curl), NablaKind::Curl), p).max_abs() <
        1e-12);
  CHECK(at(nabla(nabla(X, NablaKind::Div), NablaKind::Div), p).max_abs() <
        1e-12);
  // full = div + curl on a vector field
  MF v = rnd_vec_field(rng, n);
  CHECK(test::resid(at(nabla(v, NablaKind::Full), p),
                    at(nabla(v, NablaKind::Div) + nabla(v, NablaKind::Curl),
                       p)) < 1e-13);
  // position field x: del _| x = n, del ^ x = 0
  int n2 = 2;
  MF pos(n2);
  pos.set(0b01, coord(0));
  pos.set(0b10, coord(1));
  CHECK(at(nabla(pos, NablaKind::Div), {0.3, 0.4})[0] == doctest::Approx(2.0));
  CHECK(at(nabla(pos, NablaKind::Curl), {0.3, 0.4}).max_abs() == 0.0);
}

TEST_CASE("reciprocal-frame independence of the dummy sums") {
  // sum_mu b^mu ^ t(b_mu) equals the same sum over a deformed frame pair
  Rng rng(67);
  int n = 3;
  XF t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.set(i, j, rnd_poly(rng, n));
  // random constant non-singular frame
  XF eps = XF::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      eps.set(i, j, add(eps.at(i, j), konst(0.3 * rng.sym())));
  std::vector<double> p{0.4, 0.2, -0.5};
  EvalCtx ctx(p);
  Extensor11 ev = eps.eval(ctx);
  Extensor11 estar = inverse_adjoint(ev);
  Extensor11 tv = t.eval(ctx);
  Multivector fiducial(n), framed(n);
  for (int mu = 0; mu < n; ++mu) {
    auto bmu = Multivector::basis_vector(n, mu + 1);
    fiducial = fiducial + wedge(bmu, tv.apply(bmu));
    framed = framed + wedge(estar.col(mu), tv.apply(ev.col(mu)));
  }
  CHECK(test::resid(fiducial, framed) < 1e-9);
  // the wedge double sum likewise
  Multivector fid2(n), frm2(n);
  auto G = [&](const Multivector& u, const Multivector& w) {
    return sprod(tv.apply(u), w);
  };
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      auto bm = Multivector::basis_vector(n, mu + 1);
      auto bn = Multivector::basis_vector(n, nu + 1);
      fid2 = fid2 + G(bm, bn) * wedge(bm, bn);
      frm2 = frm2 +
             G(ev.col(mu), ev.col(nu)) * wedge(estar.col(mu), estar.col(nu));
    }
  CHECK(test::resid(fid2, frm2) < 1e-9);
}

TEST_CASE("extension and generalization at field level") {
  Rng rng(71);
  int n = 3;
  XF t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.set(i, j, rnd_poly(rng, n));
  MF X = rnd_field(rng, n);
  std::vector<double> p{0.6, -0.1, 0.8};
  EvalCtx ctx(p);
  Extensor11 tv = t.eval(ctx);
  Multivector xv = X.eval(ctx);
  CHECK(test::resid(at(extend_apply(t, X), p), extend_apply(tv, xv)) < 1e-12);
  CHECK(test::resid(at(generalize_apply(t, X), p), generalize_apply(tv, xv)) <
        1e-12);
  CHECK(test::resid(at(biv(t), p), biv(tv)) < 1e-13);
}

TEST_CASE("metric-extended products") {
  int n = 2;
  // polar-type metric diag(1, x1^2)
  XF g(n);
  g.set(0, 0, konst(1.0));
  g.set(1, 1, powi(coord(0), 2));
  MF b2 = MF::basis_vector(n, 2);
  EvalCtx ctx(std::vector<double>{2.0, 0.3});
  CHECK(ctx.eval(sprod_m(g, b2, b2)) == doctest::Approx(4.0));
  // vector split with the metric: b (g-Clifford) X = b _|g X + b ^ X
  Rng rng(73);
  MF X = rnd_field(rng, n);
  MF b = rnd_vec_field(rng, n);
  std::vector<double> p{1.7, -0.4};
  CHECK(test::resid(at(gp_m(g, b, X), p),
                    at(lcontract_m(g, b, X) + wedge(b, X), p)) < 1e-12);
  // g-Clifford associativity
  MF Y = rnd_field(rng, n), Z = rnd_field(rng, n);
  CHECK(test::resid(at(gp_m(g, gp_m(g, X, Y), Z), p),
                    at(gp_m(g, X, gp_m(g, Y, Z)), p)) < 1e-9);
  // metric duality: (X _|g Y) .g Z = Y .g (X~ ^ Z)
  EvalCtx c2(p);
  double lhs = c2.eval(sprod_m(g, lcontract_m(g, X, Y), Z));
  double rhs = c2.eval(sprod_m(g, Y, wedge(reverse(X), Z)));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  // g = identity reduces to the canonical products
  XF id = XF::identity(n);
  CHECK(test::resid(at(gp_m(id, X, Y), p), at(gp(X, Y), p)) < 1e-12);
  CHECK(test::resid(at(lcontract_m(id, X, Y), p), at(lcontract(X, Y), p)) <
        1e-12);
}

TEST_CASE("chart domain validation") {
  Chart c = Chart::box({0.0, 0.0}, {1.0, 1.0});
  std::vector<double> inside{0.5, 0.5}, outside{1.5, 0.5};
  CHECK(c.contains(inside));
  CHECK(!c.contains(outside));
  CHECK_THROWS_AS(c.require_inside(outside), EvalError);
}
