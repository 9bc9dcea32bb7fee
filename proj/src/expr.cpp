#include "mvx/expr.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "mvx/errors.hpp"
#include "mvx/smallmat.hpp"

namespace mvx {

namespace {

Expr node(ExprOp op, double v = 0.0, int idx = 0, Expr a = nullptr,
          Expr b = nullptr, MatrixPtr m = nullptr) {
  auto e = std::make_shared<ExprNode>();
  e->op = op;
  e->value = v;
  e->index = idx;
  e->a = std::move(a);
  e->b = std::move(b);
  e->mat = std::move(m);
  return e;
}

const Expr& zero_expr() {
  static const Expr z = node(ExprOp::Const, 0.0);
  return z;
}
const Expr& one_expr() {
  static const Expr o = node(ExprOp::Const, 1.0);
  return o;
}

}  // namespace

MatrixPtr make_matrix(int n, std::vector<Expr> entries) {
  if (entries.size() != static_cast<size_t>(n) * n)
    throw StructuralError("matrix entry count mismatch");
  auto m = std::make_shared<ExprMatrix>();
  m->n = n;
  m->e = std::move(entries);
  return m;
}

bool is_zero(const Expr& e) {
  return e->op == ExprOp::Const && e->value == 0.0;
}
bool is_const(const Expr& e, double v) {
  return e->op == ExprOp::Const && e->value == v;
}

Expr konst(double v) {
  if (v == 0.0) return zero_expr();
  if (v == 1.0) return one_expr();
  return node(ExprOp::Const, v);
}

Expr coord(int mu) { return node(ExprOp::Coord, 0.0, mu); }

Expr add(const Expr& a, const Expr& b) {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  if (a->op == ExprOp::Const && b->op == ExprOp::Const)
    return konst(a->value + b->value);
  return node(ExprOp::Add, 0, 0, a, b);
}

Expr sub(const Expr& a, const Expr& b) {
  if (is_zero(b)) return a;
  if (is_zero(a)) return neg(b);
  if (a->op == ExprOp::Const && b->op == ExprOp::Const)
    return konst(a->value - b->value);
  if (a.get() == b.get()) return zero_expr();
  return node(ExprOp::Sub, 0, 0, a, b);
}

Expr mul(const Expr& a, const Expr& b) {
  if (is_zero(a) || is_zero(b)) return zero_expr();
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a->op == ExprOp::Const && b->op == ExprOp::Const)
    return konst(a->value * b->value);
  return node(ExprOp::Mul, 0, 0, a, b);
}

Expr div(const Expr& a, const Expr& b) {
  if (is_zero(a)) return zero_expr();
  if (is_const(b, 1.0)) return a;
  if (a->op == ExprOp::Const && b->op == ExprOp::Const && b->value != 0.0)
    return konst(a->value / b->value);
  return node(ExprOp::Div, 0, 0, a, b);
}

Expr neg(const Expr& a) {
  if (a->op == ExprOp::Const) return konst(-a->value);
  if (a->op == ExprOp::Neg) return a->a;
  return node(ExprOp::Neg, 0, 0, a);
}

Expr powi(const Expr& a, int k) {
  if (k == 0) return one_expr();
  if (k == 1) return a;
  if (a->op == ExprOp::Const) return konst(std::pow(a->value, k));
  return node(ExprOp::Pow, 0, k, a);
}

Expr sin_(const Expr& a) {
  if (a->op == ExprOp::Const) return konst(std::sin(a->value));
  return node(ExprOp::Sin, 0, 0, a);
}
Expr cos_(const Expr& a) {
  if (a->op == ExprOp::Const) return konst(std::cos(a->value));
  return node(ExprOp::Cos, 0, 0, a);
}
Expr exp_(const Expr& a) {
  if (a->op == ExprOp::Const) return konst(std::exp(a->value));
  return node(ExprOp::Exp, 0, 0, a);
}
Expr sqrt_(const Expr& a) {
  if (a->op == ExprOp::Const && a->value >= 0.0)
    return konst(std::sqrt(a->value));
  return node(ExprOp::Sqrt, 0, 0, a);
}
Expr abs_(const Expr& a) {
  if (a->op == ExprOp::Const) return konst(std::abs(a->value));
  return node(ExprOp::Abs, 0, 0, a);
}
Expr sign_(const Expr& a) {
  if (a->op == ExprOp::Const)
    return konst(a->value > 0 ? 1.0 : (a->value < 0 ? -1.0 : 0.0));
  return node(ExprOp::Sign, 0, 0, a);
}

Expr inv_entry(const MatrixPtr& m, int i, int j) {
  return node(ExprOp::InvEntry, 0, i * m->n + j, nullptr, nullptr, m);
}

Expr det_of(const MatrixPtr& m) {
  return node(ExprOp::Det, 0, 0, nullptr, nullptr, m);
}

namespace {

using DiffMemo = std::map<std::pair<const ExprNode*, int>, Expr>;

Expr diff_impl(const Expr& e, int mu, DiffMemo& memo) {
  auto key = std::make_pair(e.get(), mu);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  Expr d;
  switch (e->op) {
    case ExprOp::Const:
      d = zero_expr();
      break;
    case ExprOp::Coord:
      d = (e->index == mu) ? one_expr() : zero_expr();
      break;
    case ExprOp::Add:
      d = add(diff_impl(e->a, mu, memo), diff_impl(e->b, mu, memo));
      break;
    case ExprOp::Sub:
      d = sub(diff_impl(e->a, mu, memo), diff_impl(e->b, mu, memo));
      break;
    case ExprOp::Mul:
      d = add(mul(diff_impl(e->a, mu, memo), e->b),
              mul(e->a, diff_impl(e->b, mu, memo)));
      break;
    case ExprOp::Div:
      d = div(sub(mul(diff_impl(e->a, mu, memo), e->b),
                  mul(e->a, diff_impl(e->b, mu, memo))),
              powi(e->b, 2));
      break;
    case ExprOp::Neg:
      d = neg(diff_impl(e->a, mu, memo));
      break;
    case ExprOp::Pow:
      d = mul(mul(konst(e->index), powi(e->a, e->index - 1)),
              diff_impl(e->a, mu, memo));
      break;
    case ExprOp::Sin:
      d = mul(cos_(e->a), diff_impl(e->a, mu, memo));
      break;
    case ExprOp::Cos:
      d = neg(mul(sin_(e->a), diff_impl(e->a, mu, memo)));
      break;
    case ExprOp::Exp:
      d = mul(Expr(e), diff_impl(e->a, mu, memo));
      break;
    case ExprOp::Sqrt:
      d = div(diff_impl(e->a, mu, memo), mul(konst(2.0), Expr(e)));
      break;
    case ExprOp::Abs:
      d = mul(sign_(e->a), diff_impl(e->a, mu, memo));
      break;
    case ExprOp::Sign:
      d = zero_expr();
      break;
    case ExprOp::InvEntry: {
      // d(M^-1)_ij = -sum_{r,s} (M^-1)_ir dM_rs (M^-1)_sj
      const auto& m = e->mat;
      int n = m->n;
      int i = e->index / n, j = e->index % n;
      Expr acc = zero_expr();
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          Expr dm = diff_impl(m->at(r, s), mu, memo);
          if (is_zero(dm)) continue;
          acc = add(acc, mul(mul(inv_entry(m, i, r), dm), inv_entry(m, s, j)));
        }
      d = neg(acc);
      break;
    }
    case ExprOp::Det: {
      // d det M = det M * tr(M^-1 dM)
      const auto& m = e->mat;
      int n = m->n;
      Expr tr = zero_expr();
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          Expr dm = diff_impl(m->at(s, r), mu, memo);
          if (is_zero(dm)) continue;
          tr = add(tr, mul(inv_entry(m, r, s), dm));
        }
      d = mul(Expr(e), tr);
      break;
    }
  }
  memo.emplace(key, d);
  return d;
}

}  // namespace

Expr diff(const Expr& e, int mu) {
  DiffMemo memo;
  return diff_impl(e, mu, memo);
}

double EvalCtx::coord_value(int mu) const {
  if (mu < 0 || mu >= static_cast<int>(x_.size()))
    throw EvalError("coordinate index out of range at " + point_string());
  return x_[mu];
}

std::string EvalCtx::point_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < x_.size(); ++i) os << (i ? ", " : "") << x_[i];
  os << ")";
  return os.str();
}

const MatrixEval& EvalCtx::matrix(const MatrixPtr& m) {
  auto it = mats_.find(m);
  if (it != mats_.end()) return it->second;
  int n = m->n;
  std::vector<double> vals(n * n);
  for (int i = 0; i < n * n; ++i) vals[i] = eval(m->e[i]);
  MatrixEval me;
  me.det = smallmat::det_inverse(n, vals, nullptr);
  if (!std::isfinite(me.det) || std::abs(me.det) <= 1e-12)
    throw SingularError("matrix field singular at " + point_string() +
                        " (det = " + std::to_string(me.det) + ")");
  smallmat::det_inverse(n, vals, &me.inv);
  return mats_.emplace(m, std::move(me)).first->second;
}

double EvalCtx::eval(const Expr& e) {
  if (auto it = memo_.find(e); it != memo_.end()) return it->second;
  double v = 0.0;
  switch (e->op) {
    case ExprOp::Const:
      v = e->value;
      break;
    case ExprOp::Coord:
      v = coord_value(e->index);
      break;
    case ExprOp::Add:
      v = eval(e->a) + eval(e->b);
      break;
    case ExprOp::Sub:
      v = eval(e->a) - eval(e->b);
      break;
    case ExprOp::Mul:
      v = eval(e->a) * eval(e->b);
      break;
    case ExprOp::Div: {
      double num = eval(e->a), den = eval(e->b);
      if (den == 0.0)
        throw EvalError("division by zero at " + point_string());
      v = num / den;
      break;
    }
    case ExprOp::Neg:
      v = -eval(e->a);
      break;
    case ExprOp::Pow:
      v = std::pow(eval(e->a), e->index);
      break;
    case ExprOp::Sin:
      v = std::sin(eval(e->a));
      break;
    case ExprOp::Cos:
      v = std::cos(eval(e->a));
      break;
    case ExprOp::Exp:
      v = std::exp(eval(e->a));
      break;
    case ExprOp::Sqrt: {
      double u = eval(e->a);
      if (u < 0.0)
        throw EvalError("sqrt of negative value " + std::to_string(u) +
                        " at " + point_string());
      v = std::sqrt(u);
      break;
    }
    case ExprOp::Abs:
      v = std::abs(eval(e->a));
      break;
    case ExprOp::Sign: {
      double u = eval(e->a);
      v = u > 0 ? 1.0 : (u < 0 ? -1.0 : 0.0);
      break;
    }
    case ExprOp::InvEntry:
      v = matrix(e->mat).inv[e->index];
      break;
    case ExprOp::Det:
      v = matrix(e->mat).det;
      break;
  }
  if (!std::isfinite(v))
    throw EvalError("non-finite value in expression at " + point_string());
  memo_.emplace(e, v);
  return v;
}

namespace {
void print(std::ostringstream& os, const Expr& e) {
  switch (e->op) {
    case ExprOp::Const:
      os << e->value;
      break;
    case ExprOp::Coord:
      os << "x" << (e->index + 1);
      break;
    case ExprOp::Add:
      os << "(";
      print(os, e->a);
      os << " + ";
      print(os, e->b);
      os << ")";
      break;
    case ExprOp::Sub:
      os << "(";
      print(os, e->a);
      os << " - ";
      print(os, e->b);
      os << ")";
      break;
    case ExprOp::Mul:
      os << "(";
      print(os, e->a);
      os << "*";
      print(os, e->b);
      os << ")";
      break;
    case ExprOp::Div:
      os << "(";
      print(os, e->a);
      os << "/";
      print(os, e->b);
      os << ")";
      break;
    case ExprOp::Neg:
      os << "(-";
      print(os, e->a);
      os << ")";
      break;
    case ExprOp::Pow:
      print(os, e->a);
      os << "^" << e->index;
      break;
    case ExprOp::Sin:
      os << "sin(";
      print(os, e->a);
      os << ")";
      break;
    case ExprOp::Cos:
      os << "cos(";
      print(os, e->a);
      os << ")";
      break;
    case ExprOp::Exp:
      os << "exp(";
      print(os, e->a);
      os << ")";
      break;
    case ExprOp::Sqrt:
      os << "sqrt(";
      print(os, e->a);
      os << ")";
      break;
    case ExprOp::Abs:
      os << "abs(";
      print(os, e->a);
      os << ")";
      break;
    case ExprOp::Sign:
      os << "sign(";
      print(os, e->a);
      os << ")";
      break;
    case ExprOp::InvEntry:
      os << "inv[" << e->index / e->mat->n << "][" << e->index % e->mat->n
         << "]";
      break;
    case ExprOp::Det:
      os << "det[.]";
      break;
  }
}
}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

}  // namespace mvx
