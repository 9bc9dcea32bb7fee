#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvx/expr.hpp"
#include "mvx/extensor.hpp"
#include "mvx/multivector.hpp"

namespace mvx {

// Open axis-aligned box U with coordinates x1..xn. All field evaluation
// happens strictly inside it.
struct Chart {
  int n = 0;
  std::vector<double> lo, hi;

  static Chart box(std::vector<double> lo, std::vector<double> hi);
  bool contains(std::span<const double> p) const;
  void require_inside(std::span<const double> p) const;  // throws EvalError
};

// Smooth multivector field: one scalar expression per blade, zero blades
// absent. Grade structure is therefore literal in the storage.
class MultivectorField {
 public:
  MultivectorField() = default;
  explicit MultivectorField(int n) : n_(n) {}

  static MultivectorField scalar(int n, Expr f);
  static MultivectorField constant(const Multivector& x);
  static MultivectorField basis_vector(int n, int mu);  // 1-based
  static MultivectorField blade(int n, blade_t m, Expr f);

  int dim() const { return n_; }
  const std::map<blade_t, Expr>& comps() const { return c_; }
  Expr comp(blade_t m) const;  // literal 0 expression when absent
  void set(blade_t m, const Expr& f);

  Multivector eval(EvalCtx& ctx) const;
  bool pure_grade(int k) const;  // all stored blades have grade k

 private:
  int n_ = 0;
  std::map<blade_t, Expr> c_;
};

using MF = MultivectorField;

MF operator+(const MF& x, const MF& y);
MF operator-(const MF& x, const MF& y);
MF operator-(const MF& x);
MF scale(const Expr& f, const MF& x);

MF wedge(const MF& x, const MF& y);
MF gp(const MF& x, const MF& y);
MF lcontract(const MF& x, const MF& y);
MF rcontract(const MF& x, const MF& y);
Expr sprod(const MF& x, const MF& y);
MF commutator(const MF& x, const MF& y);
MF grade_project(const MF& x, int k);
MF reverse(const MF& x);
MF grade_involution(const MF& x);
MF conjugate(const MF& x);

// Smooth (1,1)-extensor field; column mu is the image of b_{mu+1}.
class Extensor11Field {
 public:
  Extensor11Field() = default;
  explicit Extensor11Field(int n);

  static Extensor11Field identity(int n);
  static Extensor11Field constant(const Extensor11& t);

  int dim() const { return n_; }
  const Expr& at(int i, int j) const { return m_[i * n_ + j]; }
  void set(int i, int j, const Expr& e) { m_[i * n_ + j] = e; }
  const std::vector<Expr>& entries() const { return m_; }

  MF col(int j) const;
  MF apply(const MF& v) const;  // vector fields only
  Extensor11 eval(EvalCtx& ctx) const;

 private:
  int n_ = 0;
  std::vector<Expr> m_;
};

using XF = Extensor11Field;

XF operator+(const XF& a, const XF& b);
XF operator-(const XF& a, const XF& b);
XF scale(const Expr& f, const XF& a);
XF compose(const XF& a, const XF& b);
XF transpose(const XF& a);
XF partial(const XF& a, int mu);      // entrywise d/dx^mu
XF dir_deriv(const MF& a, const XF& t);  // (a . del_o t), entrywise

MF extend_apply(const XF& t, const MF& x);      // outermorphism
MF generalize_apply(const XF& t, const MF& x);  // sum t(b^mu)^(b_mu _| x)
MF biv(const XF& t);

// Derivatives.
MF partial(const MF& x, int mu);
MF dir_deriv(const MF& a, const MF& x);  // a . del_o x, a a vector field
Expr dir_deriv(const MF& a, const Expr& f);
MF lie_bracket(const MF& a, const MF& b);
MF gradient(int n, const Expr& f);  // del_o f as a vector field

enum class NablaKind { Curl, Div, Full };
MF nabla(const MF& x, NablaKind kind);

// Metric-extended products; `gx` is the extensor to extend (a metric g, its
// inverse, or any symmetric non-degenerate field).
Expr sprod_m(const XF& gx, const MF& x, const MF& y);
MF lcontract_m(const XF& gx, const MF& x, const MF& y);
MF rcontract_m(const XF& gx, const MF& x, const MF& y);
MF gp_m(const XF& gx, const MF& x, const MF& y);  // metric Clifford product
MF commutator_m(const XF& gx, const MF& b, const MF& x);

// Derivative of an extended map evaluated on a field:
//   (a . del_o t_ext)(X) = a.del_o(t_ext(X)) - t_ext(a.del_o X).
MF dir_deriv_extended(const MF& a, const XF& t, const MF& x);

}  // namespace mvx
