#pragma once

#include "mvx/connection.hpp"

namespace mvx {

// A second coordinate system x' = x'(x) on the same open set, compared
// against the fiducial one at shared physical points (pullback convention:
// all primed quantities are evaluated at the unprimed point).
struct ChartMap {
  Chart chart;
  std::vector<Expr> fwd;  // x^{mu'}(x)
  XF jac;                 // J[mu'][alpha] = d x^{mu'} / d x^alpha
  XF jac_inv;             // Jinv[alpha][mu'] = d x^alpha / d x^{mu'}

  // Coordinate frame fields: column mu' of cov_frame is e_{mu'}, column
  // mu' of con_frame is e^{mu'}.
  XF cov_frame() const;
  XF con_frame() const;
  // d/dx^{mu'} of a scalar field, through the chain rule.
  Expr primed_partial(int mu, const Expr& f) const;
};

ChartMap make_chart_map(const Chart& chart, std::vector<Expr> fwd);

// Classical coefficients of connection for a coordinate frame pair
// (columns of cov/con): G[lam][mu][nu] = Gamma+(e_mu, e_nu) . e^lam.
std::vector<Expr> coefficients_of_connection(const ConnectionField& c,
                                             const XF& cov, const XF& con);

// Fiducial-chart coefficients (identity frames).
std::vector<Expr> coefficients_of_connection(const ConnectionField& c);

// Residuals of the two-term transformation law between the fiducial-chart
// and primed-chart coefficients; n^3 entries.
std::vector<Expr> transformation_residual(const ConnectionField& c,
                                          const ChartMap& map);

// Component transformation-law residuals for a vector field (covariant and
// contravariant), 2n entries.
std::vector<Expr> component_transform_residual(const MF& v,
                                               const ChartMap& map);

// Component covariant derivative residuals in a coordinate frame pair.
// contravariant: (nabla+_{e_mu} v).e^lam - (dv^lam/dx^mu + G^lam_{mu a} v^a)
// covariant:     (nabla-_{e_mu} v).e_nu  - (dv_nu/dx^mu  - G^a_{mu nu} v_a)
struct VectorComponentResiduals {
  std::vector<Expr> contravariant;  // A10-style
  std::vector<Expr> covariant;      // A11-style
};
VectorComponentResiduals component_cov_deriv_vector_residual(
    const ConnectionField& c, const MF& v, const XF& cov, const XF& con,
    const ChartMap* map);

// covariant: (nabla++_{e_mu} t)(e_a).e_b  - classical t_{ab;mu}
// mixed:     (nabla+-_{e_mu} t)(e_a).e^b  - classical t_a^b_{;mu}
struct TensorComponentResiduals {
  std::vector<Expr> covariant;  // A24-style
  std::vector<Expr> mixed;      // A25-style
};
TensorComponentResiduals component_cov_deriv_tensor_residual(
    const ConnectionField& c, const XF& t, const XF& cov, const XF& con,
    const ChartMap* map);

}  // namespace mvx
