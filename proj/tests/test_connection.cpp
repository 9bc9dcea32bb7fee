#include <doctest.h>

#include <cmath>

#include "mvx/connection.hpp"
#include "mvx/errors.hpp"
#include "mvx/expr_parse.hpp"
#include "test_util.hpp"

using namespace mvx;
using test::Rng;

namespace {

Chart chart2() { return Chart::box({-2.0, -2.0}, {2.0, 2.0}); }

// gamma(a, b) = (a.b1)(b.b2) b1
ConnectionField toy_connection() {
  ConnectionField c = ConnectionField::zero(chart2());
  c.set_entry(0, 0, 1, konst(1.0));
  return c;
}

// a connection with genuinely position-dependent coefficients
ConnectionField wavy_connection(int n, Rng& rng) {
  Chart ch = Chart::box(std::vector<double>(n, -2.0),
                        std::vector<double>(n, 2.0));
  ConnectionField c = ConnectionField::zero(ch);
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k) {
        Expr e = konst(rng.sym());
        for (int i = 0; i < n; ++i)
          e = add(e, mul(konst(rng.sym()), coord(i)));
        e = add(e, mul(konst(rng.sym()), mul(coord(0), coord((l + k) % n))));
        c.set_entry(l, m, k, e);
      }
  return c;
}

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

double rat(const Expr& e, std::vector<double> p) {
  EvalCtx ctx(p);
  return ctx.eval(e);
}

}  // namespace

TEST_CASE("gamma_a and the toy connection") {
  ConnectionField c = toy_connection();
  int n = 2;
  MF b1 = MF::basis_vector(n, 1), b2 = MF::basis_vector(n, 2);
  // gamma(b1, b2) = b1
  CHECK(at(c.gamma(b1, b2), {0.5, 0.5})[0b01] == doctest::Approx(1.0));
  CHECK(at(c.gamma(b2, b1), {0.5, 0.5}).max_abs() == 0.0);
  // linearity in the direction slot
  Rng rng(3);
  MF a = rnd_vec_field(rng, n);
  Expr f = rnd_poly(rng, n);
  XF lhs = c.gamma_a(scale(f, a));
  XF rhs = scale(f, c.gamma_a(a));
  std::vector<double> p{0.3, -0.7};
  EvalCtx ctx(p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      CHECK(ctx.eval(lhs.at(i, j)) ==
            doctest::Approx(ctx.eval(rhs.at(i, j))));
  // zero connection
  ConnectionField z = ConnectionField::zero(chart2());
  CHECK(at(z.gamma(a, a), p).max_abs() == 0.0);
}

TEST_CASE("gauge connection bivector") {
  ConnectionField c = toy_connection();
  int n = 2;
  MF b1 = MF::basis_vector(n, 1);
  // expand sum gamma(b1, b^mu) ^ b_mu by hand: only mu = 2 contributes,
  // gamma(b1, b2) ^ b2 = b1 ^ b2, so Omega(b1) = +1/2 b12
  CHECK(at(gauge_omega(c, b1), {0.1, 0.1})[0b11] == doctest::Approx(0.5));
  ConnectionField z = ConnectionField::zero(chart2());
  CHECK(at(gauge_omega(z, b1), {0.1, 0.1}).max_abs() == 0.0);
  // PS.9 at field level: the skew generalized equals Omega x X
  Rng rng(5);
  ConnectionField w = wavy_connection(2, rng);
  MF a = rnd_vec_field(rng, 2);
  MF X = rnd_field(rng, 2);
  XF skew = scale(konst(0.5), w.gamma_a(a) - transpose(w.gamma_a(a)));
  MF lhs = generalize_apply(skew, X);
  MF rhs = commutator(gauge_omega(w, a), X);
  CHECK(test::resid(at(lhs, {0.4, 0.8}), at(rhs, {0.4, 0.8})) < 1e-12);
}

TEST_CASE("covariant derivatives: zero connection and the toy value") {
  int n = 2;
  ConnectionField z = ConnectionField::zero(chart2());
  Rng rng(7);
  MF a = rnd_vec_field(rng, n);
  MF X = rnd_field(rng, n);
  std::vector<double> p{0.6, -0.2};
  for (Sign s : {Sign::Plus, Sign::Minus, Sign::Zero})
    CHECK(test::resid(at(cov_deriv(z, s, a, X), p), at(dir_deriv(a, X), p)) <
          1e-13);
  ConnectionField c = toy_connection();
  MF b1 = MF::basis_vector(n, 1), b2 = MF::basis_vector(n, 2);
  CHECK(at(cov_deriv(c, Sign::Plus, b1, b2), p)[0b01] == doctest::Approx(1.0));
  // scalar rule for all three signs
  Expr f = rnd_poly(rng, n);
  for (Sign s : {Sign::Plus, Sign::Minus, Sign::Zero})
    CHECK(test::resid(at(cov_deriv(c, s, a, MF::scalar(n, f)), p),
                      at(MF::scalar(n, dir_deriv(a, f)), p)) < 1e-13);
}

TEST_CASE("grade preservation is structural (CDM.2)") {
  Rng rng(11);
  ConnectionField c = wavy_connection(3, rng);
  MF a = rnd_vec_field(rng, 3);
  for (int k = 0; k <= 3; ++k) {
    MF x(3);
    for (blade_t m = 0; m < 8; ++m)
      if (grade_of(m) == k) x.set(m, rnd_poly(rng, 3));
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      MF dx = cov_deriv(c, s, a, x);
      for (const auto& [m, e] : dx.comps()) CHECK(grade_of(m) == k);
    }
  }
}

TEST_CASE("pairing CDM.6 and the mean derivative CDM.8/CDM.9") {
  Rng rng(13);
  for (int n : {2, 3}) {
    ConnectionField c = wavy_connection(n, rng);
    MF a = rnd_vec_field(rng, n);
    MF X = rnd_field(rng, n), Y = rnd_field(rng, n);
    std::vector<double> p(n, 0.35);
    Expr lhs = add(sprod(cov_deriv(c, Sign::Plus, a, X), Y),
                   sprod(X, cov_deriv(c, Sign::Minus, a, Y)));
    CHECK(rat(lhs, p) ==
          doctest::Approx(rat(dir_deriv(a, sprod(X, Y)), p)).epsilon(1e-10));
    // CDM.8: the zero-sign derivative is a.del + Omega(a) x
    MF d0 = cov_deriv(c, Sign::Zero, a, X);
    MF alt = dir_deriv(a, X) + commutator(gauge_omega(c, a), X);
    CHECK(test::resid(at(d0, p), at(alt, p)) < 1e-11);
    // CDM.9 self-pairing
    Expr lhs9 = add(sprod(cov_deriv(c, Sign::Zero, a, X), Y),
                    sprod(X, cov_deriv(c, Sign::Zero, a, Y)));
    CHECK(rat(lhs9, p) ==
          doctest::Approx(rat(dir_deriv(a, sprod(X, Y)), p)).epsilon(1e-10));
  }
}

TEST_CASE("connection operators CO.2/CO.3") {
  Rng rng(17);
  int n = 2;
  ConnectionField c = wavy_connection(n, rng);
  MF a = rnd_vec_field(rng, n), b = rnd_vec_field(rng, n),
     cv = rnd_vec_field(rng, n);
  Expr f = rnd_poly(rng, n);
  std::vector<double> p{0.25, -0.75};
  for (Sign s : {Sign::Plus, Sign::Minus}) {
    CHECK(test::resid(at(connection_operator(c, s, scale(f, a), b), p),
                      at(scale(f, connection_operator(c, s, a, b)), p)) <
          1e-11);
    MF lhs = connection_operator(c, s, a, scale(f, b));
    MF rhs = scale(dir_deriv(a, f), b) +
             scale(f, connection_operator(c, s, a, b));
    CHECK(test::resid(at(lhs, p), at(rhs, p)) < 1e-11);
  }
  Expr co3 = add(sprod(connection_operator(c, Sign::Plus, a, b), cv),
                 sprod(b, connection_operator(c, Sign::Minus, a, cv)));
  CHECK(rat(co3, p) ==
        doctest::Approx(rat(dir_deriv(a, sprod(b, cv)), p)).epsilon(1e-10));
}

TEST_CASE("deformation of the derivative pair (CDM.11)") {
  Rng rng(19);
  int n = 2;
  ConnectionField c = wavy_connection(n, rng);
  std::vector<double> p{0.2, 0.45};
  // identity deformation changes nothing
  DeformedPair idp = deform_cov_deriv(XF::identity(n), c);
  MF a = rnd_vec_field(rng, n);
  MF X = rnd_field(rng, n), Y = rnd_field(rng, n);
  CHECK(test::resid(at(idp.plus(a, X), p),
                    at(cov_deriv(c, Sign::Plus, a, X), p)) < 1e-12);
  CHECK(test::resid(at(idp.minus(a, X), p),
                    at(cov_deriv(c, Sign::Minus, a, X), p)) < 1e-12);
  // non-trivial lambda: scalar rule and the pairing survive
  XF lam = XF::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      lam.set(i, j, add(lam.at(i, j), mul(konst(0.1 * rng.sym()),
                                          add(konst(1.0), coord(j)))));
  DeformedPair d = deform_cov_deriv(lam, c);
  Expr f = rnd_poly(rng, n);
  CHECK(test::resid(at(d.plus(a, MF::scalar(n, f)), p),
                    at(MF::scalar(n, dir_deriv(a, f)), p)) < 1e-11);
  Expr pair = add(sprod(d.plus(a, X), Y), sprod(X, d.minus(a, Y)));
  CHECK(rat(pair, p) ==
        doctest::Approx(rat(dir_deriv(a, sprod(X, Y)), p)).epsilon(1e-9));
}

TEST_CASE("extensor covariant derivatives (CDE)") {
  Rng rng(23);
  int n = 2;
  ConnectionField c = wavy_connection(n, rng);
  std::vector<double> p{0.15, -0.55};
  MF a = rnd_vec_field(rng, n);
  // a (1,1)-extensor field as both a matrix and a k-extensor evaluator
  XF t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.set(i, j, rnd_poly(rng, n));

  // zero connection: all derivatives reduce to the entrywise a.del
  ConnectionField z = ConnectionField::zero(chart2());
  MF b = rnd_vec_field(rng, n);
  for (Sign s1 : {Sign::Plus, Sign::Minus})
    for (Sign s : {Sign::Plus, Sign::Minus}) {
      auto dz = ext11_cov_deriv(z, [&](const MF& x) { return t.apply(x); },
                                s1, s, a);
      MF expect = dir_deriv(a, t.apply(b)) - t.apply(dir_deriv(a, b));
      CHECK(test::resid(at(dz(b), p), at(expect, p)) < 1e-11);
    }

  // CDE.4a closed form matches the defining scalar identity (probe form)
  ExtensorKField tk;
  tk.n = n;
  tk.arity = 1;
  tk.eval = [&t](std::span<const MF> args) { return t.apply(args[0]); };
  ExtensorKField dt =
      extensor_cov_deriv(c, tk, {Sign::Plus, Sign::Plus}, a);
  auto closed = ext11_cov_deriv(c, [&](const MF& x) { return t.apply(x); },
                                Sign::Plus, Sign::Plus, a);
  std::vector<MF> args{b};
  CHECK(test::resid(at(dt.eval(args), p), at(closed(b), p)) < 1e-10);
  // explicit CDE.4a: (nabla^{++} t)(b) = nabla^- t(b) - t(nabla^+ b)
  MF cde4a = cov_deriv(c, Sign::Minus, a, t.apply(b)) -
             t.apply(cov_deriv(c, Sign::Plus, a, b));
  CHECK(test::resid(at(closed(b), p), at(cde4a, p)) < 1e-12);

  // CDE.3 adjoint inversion: (nabla^{s1,s} t)^T = nabla^{s,s1} t^T
  for (auto [s1, s] : {std::pair{Sign::Plus, Sign::Minus},
                       std::pair{Sign::Minus, Sign::Plus},
                       std::pair{Sign::Plus, Sign::Plus}}) {
    XF lhs = ext11_cov_deriv_matrix(c, t, s1, s, a);
    XF rhs = ext11_cov_deriv_matrix(c, transpose(t), s, s1, a);
    EvalCtx ctx(p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(ctx.eval(lhs.at(j, i)) ==
              doctest::Approx(ctx.eval(rhs.at(i, j))).epsilon(1e-9));
  }
  // CDE.2b: module rule
  Expr f = rnd_poly(rng, n);
  auto dft = ext11_cov_deriv(c, [&](const MF& x) { return scale(f, t.apply(x)); },
                             Sign::Plus, Sign::Plus, a);
  auto dt2 = ext11_cov_deriv(c, [&](const MF& x) { return t.apply(x); },
                             Sign::Plus, Sign::Plus, a);
  MF expect = scale(dir_deriv(a, f), t.apply(b)) + scale(f, dt2(b));
  CHECK(test::resid(at(dft(b), p), at(expect, p)) < 1e-11);
}

TEST_CASE("torsion and curvature") {
  Rng rng(29);
  int n = 2;
  std::vector<double> p{0.4, -0.3};
  // toy torsion value
  ConnectionField c = toy_connection();
  MF b1 = MF::basis_vector(n, 1), b2 = MF::basis_vector(n, 2);
  CHECK(at(torsion(c, b1, b2), p)[0b01] == doctest::Approx(1.0));
  // symmetric table has no torsion
  ConnectionField w = wavy_connection(n, rng);
  ConnectionField sym = w.symmetrized();
  MF a = rnd_vec_field(rng, n), b = rnd_vec_field(rng, n);
  CHECK(at(torsion(sym, a, b), p).max_abs() < 1e-12);
  // zero connection is flat
  ConnectionField z = ConnectionField::zero(chart2());
  MF cv = rnd_vec_field(rng, n);
  CHECK(at(curvature(z, a, b, cv), p).max_abs() == 0.0);
  // coefficient form vs operator form (the TCF.2a oracle)
  CHECK(test::resid(at(curvature(w, a, b, cv), p),
                    at(curvature_operator_form(w, a, b, cv), p)) < 1e-9);
  // skew symmetry in the first two slots
  CHECK(test::resid(at(curvature(w, a, b, cv), p),
                    at(-curvature(w, b, a, cv), p)) < 1e-12);
}

TEST_CASE("Cartan fields and their inversions") {
  Rng rng(31);
  for (int n : {2, 3}) {
    ConnectionField w = wavy_connection(n, rng);
    std::vector<double> p(n, 0.3);
    MF a = rnd_vec_field(rng, n), b = rnd_vec_field(rng, n),
       cv = rnd_vec_field(rng, n);
    CHECK(test::resid(at(torsion(w, a, b), p),
                      at(torsion_from_theta(w, a, b), p)) < 1e-10);
    CHECK(test::resid(at(curvature(w, a, b, cv), p),
                      at(curvature_from_omega(w, a, b, cv), p)) < 1e-10);
    // a symmetric table gives vanishing Cartan torsion
    MF th = cartan_theta(w.symmetrized(), cv);
    CHECK(at(th, p).max_abs() < 1e-12);
  }
}

TEST_CASE("Cartan connection operators and the sum rule CSE.5") {
  Rng rng(37);
  int n = 2;
  ConnectionField w = wavy_connection(n, rng);
  std::vector<double> p{-0.2, 0.6};
  MF b = rnd_vec_field(rng, n), cv = rnd_vec_field(rng, n);
  MF sum = cartan_plus(w, b, cv) + cartan_minus(w, b, cv);
  MF grad = gradient(n, sprod(b, cv));
  CHECK(test::resid(at(sum, p), at(grad, p)) < 1e-11);
  // CSE.3d / CSE.4c homogeneity
  Expr f = rnd_poly(rng, n);
  CHECK(test::resid(at(cartan_plus(w, b, scale(f, cv)), p),
                    at(scale(f, cartan_plus(w, b, cv)), p)) < 1e-11);
  CHECK(test::resid(at(cartan_minus(w, scale(f, b), cv), p),
                    at(scale(f, cartan_minus(w, b, cv)), p)) < 1e-11);
}

TEST_CASE("Cartan structure equations") {
  Rng rng(41);
  std::vector<double> p{0.5, 0.1};
  // zero connection with constant fields: both sides vanish
  ConnectionField z = ConnectionField::zero(chart2());
  MF c1 = MF::basis_vector(2, 1), c2 = MF::basis_vector(2, 2);
  auto fz = first_structure_equation(z, c1);
  CHECK(at(fz.first - fz.second, p).max_abs() == 0.0);
  auto sz = second_structure_equation(z, c1, c2);
  CHECK(at(sz.first - sz.second, p).max_abs() == 0.0);
  // arbitrary (torsionful) connection, random fields
  for (int n : {2, 3}) {
    ConnectionField w = wavy_connection(n, rng);
    std::vector<double> q(n, 0.4);
    MF cv = rnd_vec_field(rng, n), dv = rnd_vec_field(rng, n);
    auto [l1, r1] = first_structure_equation(w, cv);
    CHECK(test::resid(at(l1, q), at(r1, q)) < 1e-9);
    auto [l2, r2] = second_structure_equation(w, cv, dv);
    CHECK(test::resid(at(l2, q), at(r2, q)) < 1e-9);
  }
  // the toy connection too
  ConnectionField toy = toy_connection();
  Rng rng2(43);
  MF cv = rnd_vec_field(rng2, 2), dv = rnd_vec_field(rng2, 2);
  auto [l1, r1] = first_structure_equation(toy, cv);
  CHECK(test::resid(at(l1, p), at(r1, p)) < 1e-9);
  auto [l2, r2] = second_structure_equation(toy, cv, dv);
  CHECK(test::resid(at(l2, p), at(r2, p)) < 1e-9);
}

TEST_CASE("cyclic identity and Bianchi on a symmetric connection") {
  Rng rng(47);
  int n = 2;
  ConnectionField sym = wavy_connection(n, rng).symmetrized();
  std::vector<double> p{0.3, -0.4};
  MF a = rnd_vec_field(rng, n), b = rnd_vec_field(rng, n),
     cv = rnd_vec_field(rng, n);
  MF cyc = curvature(sym, a, b, cv) + curvature(sym, b, cv, a) +
           curvature(sym, cv, a, b);
  CHECK(at(cyc, p).max_abs() < 1e-8 * 10);
  // Bianchi via the +++- extensor derivative cycled over (d, a, b)
  ExtensorKField rho;
  rho.n = n;
  rho.arity = 3;
  rho.eval = [&sym](std::span<const MF> args) {
    return curvature(sym, args[0], args[1], args[2]);
  };
  std::vector<Sign> signs{Sign::Plus, Sign::Plus, Sign::Plus, Sign::Minus};
  auto cvec = [&](double x, double y) {
    Multivector v(n);
    v[0b01] = x;
    v[0b10] = y;
    return MF::constant(v);
  };
  MF va = cvec(0.7, -0.2), vb = cvec(0.1, 0.9), vc = cvec(-0.5, 0.4),
     vd = cvec(0.3, 0.6);
  auto term = [&](const MF& dir, const MF& s1, const MF& s2) {
    ExtensorKField dt = extensor_cov_deriv(sym, rho, signs, dir);
    std::vector<MF> args{s1, s2, vc};
    return dt.eval(args);
  };
  MF bianchi = term(vd, va, vb) + term(va, vb, vd) + term(vb, vd, va);
  CHECK(at(bianchi, p).max_abs() < 1e-7);
}
