#pragma once

#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace mvx {

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

// A shared n x n table of expressions. InvEntry/Det nodes refer to one of
// these; per-point inversion happens once per (matrix, point) and is cached
// in the evaluation context. Entries are frozen at construction, so the
// expression graph stays acyclic.
struct ExprMatrix {
  int n = 0;
  std::vector<Expr> e;  // row-major
  const Expr& at(int i, int j) const { return e[i * n + j]; }
};
using MatrixPtr = std::shared_ptr<const ExprMatrix>;

MatrixPtr make_matrix(int n, std::vector<Expr> entries);

enum class ExprOp : unsigned char {
  Const,
  Coord,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Pow,  // integer exponent
  Sin,
  Cos,
  Exp,
  Sqrt,
  Abs,
  Sign,      // derivative treated as 0 (constant away from the zero set)
  InvEntry,  // (M^-1)[i][j], evaluated numerically per point
  Det,       // det M, evaluated numerically per point
};

class ExprNode {
 public:
  ExprOp op;
  double value = 0.0;  // Const
  int index = 0;       // Coord (0-based), Pow exponent, InvEntry i*n+j
  Expr a, b;
  MatrixPtr mat;
};

// Smart constructors; each folds constants and algebraic units so that
// structurally-zero coefficients stay the literal 0.
Expr konst(double v);
Expr coord(int mu);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);
Expr neg(const Expr& a);
Expr powi(const Expr& a, int k);
Expr sin_(const Expr& a);
Expr cos_(const Expr& a);
Expr exp_(const Expr& a);
Expr sqrt_(const Expr& a);
Expr abs_(const Expr& a);
Expr sign_(const Expr& a);
Expr inv_entry(const MatrixPtr& m, int i, int j);
Expr det_of(const MatrixPtr& m);

inline Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }
inline Expr operator-(const Expr& a) { return neg(a); }

bool is_zero(const Expr& e);
bool is_const(const Expr& e, double v);

// Exact partial derivative with respect to coordinate mu (0-based).
// DAG-aware: shared subtrees are differentiated once.
Expr diff(const Expr& e, int mu);

struct MatrixEval {
  std::vector<double> inv;
  double det = 0.0;
};

// One per (point, thread). Node results are memoized so evaluation is
// linear in the DAG size, and matrix inversions happen once per point.
// Owns a copy of the point.
class EvalCtx {
 public:
  explicit EvalCtx(std::span<const double> point)
      : x_(point.begin(), point.end()) {}

  double coord_value(int mu) const;
  int npoint() const { return static_cast<int>(x_.size()); }
  std::span<const double> point() const { return x_; }
  std::string point_string() const;

  double eval(const Expr& e);
  const MatrixEval& matrix(const MatrixPtr& m);

 private:
  // keyed by shared_ptr so memoized nodes stay alive for the context's
  // lifetime; raw-pointer keys would alias freed-and-reallocated nodes
  std::vector<double> x_;
  std::unordered_map<Expr, double> memo_;
  std::unordered_map<MatrixPtr, MatrixEval> mats_;
};

inline double eval(const Expr& e, EvalCtx& ctx) { return ctx.eval(e); }

std::string to_string(const Expr& e);

}  // namespace mvx
