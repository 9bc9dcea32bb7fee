#include <doctest.h>

#include <cmath>

#include "mvx/errors.hpp"
#include "mvx/expr.hpp"
#include "mvx/expr_parse.hpp"

using namespace mvx;

namespace {

double eval_at(const Expr& e, std::vector<double> p) {
  EvalCtx ctx(p);
  return ctx.eval(e);
}

// Independent oracle: second-order central differences. Used only to
// cross-check the exact tree derivative.
double fd(const Expr& e, std::vector<double> p, int mu, double h = 1e-5) {
  auto pp = p, pm = p;
  pp[mu] += h;
  pm[mu] -= h;
  return (eval_at(e, pp) - eval_at(e, pm)) / (2 * h);
}

}  // namespace

TEST_CASE("parser: precedence and functions") {
  // ^ binds tighter than unary minus, which binds tighter than * /
  Expr e = parse_expr("-x1^2 + 3*x2", 2);
  CHECK(eval_at(e, {2.0, 1.0}) == doctest::Approx(-4.0 + 3.0));
  CHECK(eval_at(parse_expr("2*x1/4", 1), {6.0}) == doctest::Approx(3.0));
  CHECK(eval_at(parse_expr("sin(x1)*cos(x1)", 1), {0.3}) ==
        doctest::Approx(std::sin(0.3) * std::cos(0.3)));
  CHECK(eval_at(parse_expr("sqrt(abs(x1))", 1), {-9.0}) ==
        doctest::Approx(3.0));
  CHECK(eval_at(parse_expr("exp(x1)^2", 1), {0.5}) ==
        doctest::Approx(std::exp(1.0)));
  CHECK(eval_at(parse_expr("x1^-2", 1), {2.0}) == doctest::Approx(0.25));
  CHECK(eval_at(parse_expr("1.5e2 + .5", 1), {0.0}) == doctest::Approx(150.5));
}

TEST_CASE("parser: errors carry positions") {
  CHECK_THROWS_AS((void)parse_expr("sin(x3)", 2), ParseError);
  CHECK_THROWS_AS((void)parse_expr("x1 + ", 2), ParseError);
  CHECK_THROWS_AS((void)parse_expr("foo(x1)", 2), ParseError);
  CHECK_THROWS_AS((void)parse_expr("x1 ^ x2", 2), ParseError);
  CHECK_THROWS_AS((void)parse_expr("(x1", 2), ParseError);
  try {
    (void)parse_expr("sin(x3)", 2, 7, 10);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 7);
    CHECK(e.col >= 10);
  }
}

TEST_CASE("exact derivatives match central differences") {
  std::vector<std::string> exprs = {
      "x1^3 + 2*x1*x2 - x2^2",
      "sin(x1)*cos(x2) + exp(x1/2)",
      "sqrt(x1^2 + x2^2 + 1)",
      "1/(x1 + 2) + x2/x1",
      "abs(x1)*x2",
  };
  for (const auto& s : exprs) {
    Expr e = parse_expr(s, 2);
    for (int mu = 0; mu < 2; ++mu) {
      Expr d = diff(e, mu);
      for (auto p : {std::vector<double>{1.3, 0.7},
                     std::vector<double>{2.1, -0.4}}) {
        double exact = eval_at(d, p);
        double approx = fd(e, p, mu);
        CHECK(exact ==
              doctest::Approx(approx).epsilon(1e-8).scale(1.0 + std::abs(exact)));
      }
    }
  }
}

TEST_CASE("structural zeros stay literal") {
  Expr z = mul(konst(0.0), coord(0));
  CHECK(is_zero(z));
  CHECK(is_zero(diff(konst(3.5), 0)));
  CHECK(is_zero(add(z, z)));
  CHECK(is_const(mul(konst(1.0), konst(2.0)), 2.0));
}

TEST_CASE("matrix inverse/det primitives and their derivative rules") {
  // M = [[1, x2], [x2, x1^2]]
  std::vector<Expr> entries = {konst(1.0), coord(1), coord(1),
                               powi(coord(0), 2)};
  MatrixPtr m = make_matrix(2, entries);
  Expr d = det_of(m);
  Expr i00 = inv_entry(m, 0, 0), i01 = inv_entry(m, 0, 1),
       i11 = inv_entry(m, 1, 1);
  std::vector<double> p{2.0, 0.3};
  double detv = 4.0 - 0.09;
  CHECK(eval_at(d, p) == doctest::Approx(detv));
  CHECK(eval_at(i00, p) == doctest::Approx(4.0 / detv));
  CHECK(eval_at(i01, p) == doctest::Approx(-0.3 / detv));
  CHECK(eval_at(i11, p) == doctest::Approx(1.0 / detv));
  // derivative rules vs finite differences
  for (int mu = 0; mu < 2; ++mu) {
    CHECK(eval_at(diff(d, mu), p) == doctest::Approx(fd(d, p, mu)).epsilon(1e-7));
    CHECK(eval_at(diff(i00, mu), p) ==
          doctest::Approx(fd(i00, p, mu)).epsilon(1e-7));
    CHECK(eval_at(diff(i01, mu), p) ==
          doctest::Approx(fd(i01, p, mu)).epsilon(1e-7));
    CHECK(eval_at(diff(i11, mu), p) ==
          doctest::Approx(fd(i11, p, mu)).epsilon(1e-7));
    // second derivatives keep working (nested rules)
    Expr dd = diff(diff(i11, mu), mu);
    Expr d1 = diff(i11, mu);
    CHECK(eval_at(dd, p) == doctest::Approx(fd(d1, p, mu)).epsilon(1e-6));
  }
}

TEST_CASE("singular matrix field raises with the point") {
  std::vector<Expr> entries = {coord(0), konst(0.0), konst(0.0), coord(0)};
  MatrixPtr m = make_matrix(2, entries);
  Expr i00 = inv_entry(m, 0, 0);
  std::vector<double> p{0.0, 1.0};
  EvalCtx ctx(p);
  CHECK_THROWS_AS((void)ctx.eval(i00), SingularError);
}

TEST_CASE("evaluation errors") {
  std::vector<double> p{-4.0};
  EvalCtx ctx(p);
  CHECK_THROWS_AS((void)ctx.eval(sqrt_(coord(0))), EvalError);
  EvalCtx ctx2(p);
  CHECK_THROWS_AS((void)ctx2.eval(div(konst(1.0), add(coord(0), konst(4.0)))),
                  EvalError);
}
