#include "mvx/hodge.hpp"

#include "mvx/errors.hpp"

namespace mvx {

FramePair make_frame(const XF& eps) {
  int n = eps.dim();
  auto handle = make_matrix(n, eps.entries());
  XF inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.set(i, j, inv_entry(handle, i, j));
  return FramePair{eps, transpose(inv)};
}

MF canonical_volume(int n) {
  return MF::constant(Multivector::pseudoscalar(n));
}

MF frame_volume(const FramePair& fr) {
  int n = fr.eps.dim();
  MF bw = canonical_volume(n);
  MF ew = extend_apply(fr.eps, bw);
  MF ecw = extend_apply(fr.eps_star, bw);
  return scale(sqrt_(sprod(ew, ew)), ecw);
}

MF frame_volume_metric(const FramePair& fr, const MetricField& g) {
  int n = fr.eps.dim();
  MF bw = canonical_volume(n);
  MF ew = extend_apply(fr.eps, bw);
  MF ecw = extend_apply(fr.eps_star, bw);
  return scale(sqrt_(abs_(g.dot(ew, ew))), ecw);
}

MF metric_volume(const MetricField& g) {
  return scale(g.sqrt_abs_det(), canonical_volume(g.dim()));
}

MF hodge_star(const MF& tau, const MF& x) {
  return lcontract(reverse(x), tau);
}

MF hodge_star_inv(const MF& tau, const MF& x) {
  return rcontract(tau, reverse(x));
}

MF hodge_star_g(const MetricField& g, const MF& tau_g, const MF& x) {
  return g.lc_inv(reverse(x), tau_g);
}

MF hodge_star_g_inv(const MetricField& g, const MF& tau_g, const MF& x) {
  MF r = g.rc_inv(tau_g, reverse(x));
  return (g.q() % 2) ? -r : r;
}

MF delta_standard(const MF& x) {
  int n = x.dim();
  MF tau = canonical_volume(n);
  return hodge_star_inv(tau, nabla(hodge_star(tau, grade_involution(x)),
                                   NablaKind::Curl));
}

MF delta_metric(const MetricField& g, const MF& x) {
  MF tau_g = metric_volume(g);
  return hodge_star_g_inv(
      g, tau_g, nabla(hodge_star_g(g, tau_g, grade_involution(x)),
                      NablaKind::Curl));
}

MF LcDerivatives::d_plus(const MF& a, const MF& x) const {
  return cov_deriv(lc, Sign::Plus, a, x);
}
MF LcDerivatives::d_minus(const MF& a, const MF& x) const {
  return cov_deriv(lc, Sign::Minus, a, x);
}

MF LcDerivatives::div_plus(const MF& x) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF b = MF::basis_vector(n, mu + 1);
    out = out + lcontract(b, d_plus(b, x));
  }
  return out;
}

MF LcDerivatives::div_minus_ginv(const MF& x) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF b = MF::basis_vector(n, mu + 1);
    out = out + g.lc_inv(b, d_minus(b, x));
  }
  return out;
}

MF LcDerivatives::curl_minus(const MF& x) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF b = MF::basis_vector(n, mu + 1);
    out = out + wedge(b, d_minus(b, x));
  }
  return out;
}

MF LcDerivatives::grad_minus_ginv(const MF& x) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF b = MF::basis_vector(n, mu + 1);
    out = out + g.gcl_inv(b, d_minus(b, x));
  }
  return out;
}

LcDerivatives make_lc_derivatives(const MetricField& g) {
  return LcDerivatives{g, levi_civita(g)};
}

MF GaugeOps::dplus(const MF& a, const MF& x) const {
  return extend_apply(f.h,
                      cov_deriv(lc, Sign::Plus, a, extend_apply(f.h_inv, x)));
}

MF GaugeOps::dminus(const MF& a, const MF& x) const {
  return extend_apply(f.h_star,
                      cov_deriv(lc, Sign::Minus, a, extend_apply(f.h_adj, x)));
}

MF GaugeOps::bulk_div_eta(const MF& x) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF b = MF::basis_vector(n, mu + 1);
    out = out + lcontract_m(f.eta(), f.h_star.apply(b), dminus(b, x));
  }
  return out;
}

MF GaugeOps::bulk_curl(const MF& x) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF b = MF::basis_vector(n, mu + 1);
    out = out + wedge(f.h_star.apply(b), dminus(b, x));
  }
  return out;
}

MF GaugeOps::bulk_grad_eta(const MF& x) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF b = MF::basis_vector(n, mu + 1);
    out = out + gp_m(f.eta(), f.h_star.apply(b), dminus(b, x));
  }
  return out;
}

MF GaugeOps::omega0_bivector(const MF& a) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu) {
      MF bm = MF::basis_vector(n, mu + 1), bn = MF::basis_vector(n, nu + 1);
      // antisymmetric in (mu, nu): [a, h^-1 b_mu, h^-1 b_nu] etc.
      Expr s = sub(christoffel_first(g, a, f.h_inv.apply(bm), f.h_inv.apply(bn)),
                   christoffel_first(g, a, f.h_inv.apply(bn), f.h_inv.apply(bm)));
      out = out + scale(s, f.eta_apply(wedge(bm, bn)));
    }
  return scale(konst(-0.5), out);
}

GaugeOps make_gauge_ops(const MetricField& g) {
  ConnectionField lc = levi_civita(g);
  GaugeFactor f = gauge_metric_factor(g);
  MetricField eta = MetricField::constant_diag(g.chart(), f.eta_diag);
  return GaugeOps{g, std::move(lc), std::move(f), std::move(eta)};
}

MF CovHodge::dminus(const MF& a, const MF& x) const {
  return cov_deriv(conn, Sign::Minus, a, x);
}

MF CovHodge::div_ginv(const MF& x) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF b = MF::basis_vector(n, mu + 1);
    out = out + g.lc_inv(b, dminus(b, x));
  }
  return out;
}

MF CovHodge::curl(const MF& x) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF b = MF::basis_vector(n, mu + 1);
    out = out + wedge(b, dminus(b, x));
  }
  return out;
}

MF CovHodge::gcl_inv(const MF& x) const {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF b = MF::basis_vector(n, mu + 1);
    out = out + g.gcl_inv(b, dminus(b, x));
  }
  return out;
}

MF CovHodge::coderivative(const MF& x) const {
  return hodge_star_g_inv(g, tau_g,
                          curl(hodge_star_g(g, tau_g, grade_involution(x))));
}

CovHodge make_cov_hodge(const ConnectionField& conn, const MetricField& g) {
  return CovHodge{conn, g, metric_volume(g)};
}

}  // namespace mvx
