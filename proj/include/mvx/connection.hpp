#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mvx/field.hpp"

namespace mvx {

enum class Sign { Plus, Minus, Zero };
Sign pairing_conjugate(Sign s);  // + <-> -, 0 <-> 0

// Parallelism structure (U, gamma). The connection is kept as the n^3
// coefficient table  table[lam][mu][nu] = gamma(b_mu, b_nu) . b^lam,
// which covers both user-supplied tables and derived constructions
// (Levi-Civita, deformations).
class ConnectionField {
 public:
  ConnectionField() = default;
  ConnectionField(Chart chart, std::vector<Expr> table);

  static ConnectionField zero(const Chart& chart);

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.n; }
  const Expr& entry(int lam, int mu, int nu) const;
  void set_entry(int lam, int mu, int nu, const Expr& e);

  // gamma_{b_{mu+1}} as a matrix field (column nu = gamma(b_mu, b_nu)).
  XF gamma_dir(int mu) const;
  // a-directional connection field, a any vector field.
  XF gamma_a(const MF& a) const;
  // gamma(a, b), pointwise bilinear.
  MF gamma(const MF& a, const MF& b) const;

  ConnectionField symmetrized() const;
  bool is_table_symmetric_structurally() const;

 private:
  Chart chart_;
  std::vector<Expr> t_;  // n^3
};

// Gauge connection field Omega(a) = 1/2 sum_mu gamma(a, b^mu) ^ b_mu.
MF gauge_omega(const ConnectionField& c, const MF& a);

// The a-DCDOs. plus: a.del X + Gamma_a(X); minus: a.del X - Gamma_a^T(X);
// zero: their mean.
MF cov_deriv(const ConnectionField& c, Sign s, const MF& a, const MF& x);

// Connection operators Gamma^{+-}(a,b) = cov derivative of a vector field.
MF connection_operator(const ConnectionField& c, Sign s, const MF& a,
                       const MF& b);

// Deformation of the derivative pair by a non-singular (1,1)-extensor
// field lam (held with its symbolic inverse).
struct DeformedPair {
  XF lam, lam_inv, lam_adj, lam_star;
  ConnectionField conn;

  MF plus(const MF& a, const MF& x) const;
  MF minus(const MF& a, const MF& x) const;
};
DeformedPair deform_cov_deriv(const XF& lam, const ConnectionField& c);

// Smooth k-extensor field as an evaluator over multivector fields.
struct ExtensorKField {
  int n = 0;
  int arity = 0;
  std::function<MF(std::span<const MF>)> eval;

  MF operator()(std::span<const MF> args) const;
};

// Covariant derivative of a k-extensor field, signs = (sigma_1..sigma_k,
// sigma). Evaluates the defining scalar identity against the basis-blade
// probes and assembles the result.
ExtensorKField extensor_cov_deriv(const ConnectionField& c,
                                  const ExtensorKField& t,
                                  std::vector<Sign> signs, const MF& a);

// k = 1 closed forms: (nabla^{s1,s} t)(X) = nabla^{conj(s)}(t(X)) - t(nabla^{s1} X)
// for any grade-preserving linear operator given as a closure.
std::function<MF(const MF&)> ext11_cov_deriv(
    const ConnectionField& c, const std::function<MF(const MF&)>& op, Sign s1,
    Sign s, const MF& a);

// Matrix form of the k=1 covariant derivative of a (1,1)-extensor field.
XF ext11_cov_deriv_matrix(const ConnectionField& c, const XF& t, Sign s1,
                          Sign s, const MF& a);

// Torsion tau(a,b) = gamma_a(b) - gamma_b(a).
MF torsion(const ConnectionField& c, const MF& a, const MF& b);

// Curvature from the coefficient form (first derivatives of the table):
//   rho(a,b,c) = sum a^mu b^nu [d_mu G_nu - d_nu G_mu + G_mu G_nu - G_nu G_mu](c).
MF curvature(const ConnectionField& c, const MF& a, const MF& b, const MF& x);
// Operator form [nabla_a, nabla_b]c - nabla_[a,b] c, kept as an oracle.
MF curvature_operator_form(const ConnectionField& c, const MF& a, const MF& b,
                           const MF& x);

// Cartan fields and their inversions.
MF cartan_theta(const ConnectionField& c, const MF& cv);
MF cartan_omega(const ConnectionField& c, const MF& cv, const MF& dv);
MF torsion_from_theta(const ConnectionField& c, const MF& a, const MF& b);
MF curvature_from_omega(const ConnectionField& c, const MF& a, const MF& b,
                        const MF& cv);

// Cartan connection operators of the first/second kind.
MF cartan_plus(const ConnectionField& c, const MF& b, const MF& cv);
MF cartan_minus(const ConnectionField& c, const MF& b, const MF& cv);

// Both Cartan structure equations as (lhs, rhs) pairs.
std::pair<MF, MF> first_structure_equation(const ConnectionField& c,
                                           const MF& cv);
std::pair<MF, MF> second_structure_equation(const ConnectionField& c,
                                            const MF& cv, const MF& dv);

}  // namespace mvx
