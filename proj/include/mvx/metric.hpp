#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mvx/connection.hpp"
#include "mvx/field.hpp"

namespace mvx {

// Metric structure (U, g): a symmetric non-degenerate (1,1)-extensor field
// with a declared signature (p pluses, q minuses). The inverse and the
// determinant are expression-level primitives backed by a per-point solve,
// so every derived field stays exactly differentiable.
class MetricField {
 public:
  MetricField() = default;
  MetricField(Chart chart, XF mat, int p, int q);

  static MetricField euclidean(const Chart& chart);
  static MetricField constant_diag(const Chart& chart,
                                   const std::vector<double>& d);

  const Chart& chart() const { return chart_; }
  int dim() const { return chart_.n; }
  int p() const { return p_; }
  int q() const { return q_; }
  const XF& mat() const { return mat_; }
  const XF& inv() const { return inv_; }
  const Expr& det() const { return det_; }
  const Expr& sqrt_abs_det() const { return sqrtad_; }

  Expr dot(const MF& x, const MF& y) const;       // x .g y
  MF lc(const MF& x, const MF& y) const;          // x _|g y
  MF rc(const MF& x, const MF& y) const;          // x |_g y
  MF gcl(const MF& x, const MF& y) const;         // g-Clifford
  Expr dot_inv(const MF& x, const MF& y) const;   // g^-1 products
  MF lc_inv(const MF& x, const MF& y) const;
  MF rc_inv(const MF& x, const MF& y) const;
  MF gcl_inv(const MF& x, const MF& y) const;
  MF cross(const MF& b, const MF& x) const;       // b x_g x
  MF cross_inv(const MF& b, const MF& x) const;

 private:
  Chart chart_;
  XF mat_, inv_;
  MatrixPtr handle_;
  Expr det_, sqrtad_;
  int p_ = 0, q_ = 0;
};

// Christoffel operators.
Expr christoffel_first(const MetricField& g, const MF& a, const MF& b,
                       const MF& c);
Expr christoffel_second(const MetricField& g, const MF& cv, const MF& a,
                        const MF& b);

// omega_0(a), the g-gauge connection bivector of the Levi-Civita field.
MF omega_zero(const MetricField& g, const MF& a);

// The Levi-Civita connection field lambda(a,b) as a coefficient table.
ConnectionField levi_civita(const MetricField& g);

// (nabla^{++}_{b_mu} g) as a matrix field; identically zero iff the
// connection is g-compatible.
XF compatibility_residual(const ConnectionField& c, const MetricField& g,
                          int mu);

// omega(a) = 1/2 biv_g[gamma_a] for a compatible connection.
MF theorem1_omega(const MetricField& g, const ConnectionField& c, const MF& a);

// Gauge metric factorization g = h^T o eta o h with eta the constant
// orthonormal metric of the declared signature. h is a smooth symbolic
// field built from the signed LDL^T factorization (a constant permutation
// sorts the + slots first); its entries stay exactly differentiable.
struct GaugeFactor {
  XF h, h_inv, h_adj, h_star;
  Expr det_h;
  std::vector<double> eta_diag;  // +-1, + slots first
  int p = 0, q = 0;

  XF eta() const;  // constant matrix field
  MF eta_apply(const MF& x) const;  // extended eta (diagonal, cheap)
};

GaugeFactor gauge_metric_factor(const MetricField& g);

// The spec'd pointwise construction (descending symmetric eigensystem),
// kept as an independent cross-check of the factorization contract.
std::pair<Extensor11, Extensor11> eigen_gauge_factor_at(const MetricField& g,
                                                        EvalCtx& ctx);

// Conjugates the connection by a non-singular field u: the derivative pair
// of the result is the u-deformation of the input pair.
ConnectionField deform_connection(const ConnectionField& c, const XF& u,
                                  const XF& u_inv);

// Theorem-2 package: the eta-compatible deformed pair as a connection of
// its own, plus the constant eta metric.
struct DeformedStructure {
  ConnectionField conn_eta;
  MetricField eta;
  GaugeFactor fact;
};
DeformedStructure deform_pair(const ConnectionField& conn_g,
                              const MetricField& g);

}  // namespace mvx
