#include "mvx/metric.hpp"

#include <cmath>

#include "mvx/errors.hpp"
#include "mvx/smallmat.hpp"

namespace mvx {

MetricField::MetricField(Chart chart, XF mat, int p, int q)
    : chart_(std::move(chart)), mat_(std::move(mat)), p_(p), q_(q) {
  int n = chart_.n;
  if (mat_.dim() != n) throw StructuralError("metric matrix dim mismatch");
  if (p < 0 || q < 0 || p + q != n)
    throw StructuralError("metric signature must satisfy p + q = n");
  handle_ = make_matrix(n, mat_.entries());
  XF inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.set(i, j, inv_entry(handle_, i, j));
  inv_ = inv;
  det_ = det_of(handle_);
  sqrtad_ = sqrt_(abs_(det_));
}

MetricField MetricField::euclidean(const Chart& chart) {
  return MetricField(chart, XF::identity(chart.n), chart.n, 0);
}

MetricField MetricField::constant_diag(const Chart& chart,
                                       const std::vector<double>& d) {
  XF m(chart.n);
  int p = 0, q = 0;
  for (int i = 0; i < chart.n; ++i) {
    m.set(i, i, konst(d[i]));
    (d[i] > 0 ? p : q) += 1;
  }
  return MetricField(chart, m, p, q);
}

Expr MetricField::dot(const MF& x, const MF& y) const {
  return sprod_m(mat_, x, y);
}
MF MetricField::lc(const MF& x, const MF& y) const {
  return lcontract_m(mat_, x, y);
}
MF MetricField::rc(const MF& x, const MF& y) const {
  return rcontract_m(mat_, x, y);
}
MF MetricField::gcl(const MF& x, const MF& y) const {
  return gp_m(mat_, x, y);
}
Expr MetricField::dot_inv(const MF& x, const MF& y) const {
  return sprod_m(inv_, x, y);
}
MF MetricField::lc_inv(const MF& x, const MF& y) const {
  return lcontract_m(inv_, x, y);
}
MF MetricField::rc_inv(const MF& x, const MF& y) const {
  return rcontract_m(inv_, x, y);
}
MF MetricField::gcl_inv(const MF& x, const MF& y) const {
  return gp_m(inv_, x, y);
}
MF MetricField::cross(const MF& b, const MF& x) const {
  return commutator_m(mat_, b, x);
}
MF MetricField::cross_inv(const MF& b, const MF& x) const {
  return commutator_m(inv_, b, x);
}

Expr christoffel_first(const MetricField& g, const MF& a, const MF& b,
                       const MF& c) {
  Expr s = dir_deriv(a, g.dot(b, c));
  s = add(s, dir_deriv(b, g.dot(c, a)));
  s = sub(s, dir_deriv(c, g.dot(a, b)));
  s = add(s, g.dot(c, lie_bracket(a, b)));
  s = add(s, g.dot(b, lie_bracket(c, a)));
  s = sub(s, g.dot(a, lie_bracket(b, c)));
  return mul(konst(0.5), s);
}

Expr christoffel_second(const MetricField& g, const MF& cv, const MF& a,
                        const MF& b) {
  return christoffel_first(g, a, b, g.inv().apply(cv));
}

MF omega_zero(const MetricField& g, const MF& a) {
  int n = g.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    XF dg_mu = partial(g.mat(), mu);
    for (int nu = 0; nu < n; ++nu) {
      if (nu == mu) continue;
      XF dg_nu = partial(g.mat(), nu);
      // a . ((b_mu . del g)(b_nu) - (b_nu . del g)(b_mu))
      Expr s = sub(sprod(a, dg_mu.col(nu)), sprod(a, dg_nu.col(mu)));
      if (is_zero(s)) continue;
      MF w = extend_apply(g.inv(), wedge(MF::basis_vector(n, mu + 1),
                                         MF::basis_vector(n, nu + 1)));
      out = out + scale(s, w);
    }
  }
  return scale(konst(-0.25), out);
}

ConnectionField levi_civita(const MetricField& g) {
  int n = g.dim();
  ConnectionField lc = ConnectionField::zero(g.chart());
  for (int mu = 0; mu < n; ++mu) {
    XF dg_mu = partial(g.mat(), mu);
    MF w0 = omega_zero(g, MF::basis_vector(n, mu + 1));
    for (int nu = 0; nu < n; ++nu) {
      MF val = scale(konst(0.5), g.inv().apply(dg_mu.col(nu))) +
               g.cross(w0, MF::basis_vector(n, nu + 1));
      for (int lam = 0; lam < n; ++lam)
        lc.set_entry(lam, mu, nu, val.comp(blade_t{1} << lam));
    }
  }
  return lc;
}

XF compatibility_residual(const ConnectionField& c, const MetricField& g,
                          int mu) {
  XF gam = c.gamma_dir(mu);
  return partial(g.mat(), mu) - compose(g.mat(), gam) -
         compose(transpose(gam), g.mat());
}

MF theorem1_omega(const MetricField& g, const ConnectionField& c,
                  const MF& a) {
  // biv_g[t] = biv[t o g^-1]
  XF t = compose(c.gamma_a(a), g.inv());
  return scale(konst(0.5), biv(t));
}

XF GaugeFactor::eta() const {
  int n = static_cast<int>(eta_diag.size());
  XF e(n);
  for (int i = 0; i < n; ++i) e.set(i, i, konst(eta_diag[i]));
  return e;
}

MF GaugeFactor::eta_apply(const MF& x) const {
  MF out(x.dim());
  for (const auto& [m, f] : x.comps()) {
    double s = 1.0;
    for (int i = 0; i < static_cast<int>(eta_diag.size()); ++i)
      if (m & (blade_t{1} << i)) s *= eta_diag[i];
    out.set(m, s < 0 ? neg(f) : f);
  }
  return out;
}

GaugeFactor gauge_metric_factor(const MetricField& g) {
  int n = g.dim();
  // Signed LDL^T: G = L D L^T with L unit lower triangular.
  std::vector<Expr> L(n * n, konst(0.0));
  std::vector<Expr> D(n);
  for (int i = 0; i < n; ++i) L[i * n + i] = konst(1.0);
  for (int j = 0; j < n; ++j) {
    Expr d = g.mat().at(j, j);
    for (int k = 0; k < j; ++k)
      d = sub(d, mul(mul(L[j * n + k], L[j * n + k]), D[k]));
    D[j] = d;
    for (int i = j + 1; i < n; ++i) {
      Expr s = g.mat().at(i, j);
      for (int k = 0; k < j; ++k)
        s = sub(s, mul(mul(L[i * n + k], L[j * n + k]), D[k]));
      L[i * n + j] = div(s, d);
    }
  }
  // Pivot signs are constant on a connected chart with constant signature;
  // sample the box center.
  std::vector<double> center(n);
  for (int i = 0; i < n; ++i)
    center[i] = 0.5 * (g.chart().lo[i] + g.chart().hi[i]);
  EvalCtx ctx(center);
  std::vector<int> sign_of(n);
  int p = 0, q = 0;
  for (int j = 0; j < n; ++j) {
    double dj;
    try {
      dj = ctx.eval(D[j]);
    } catch (const EvalError& e) {
      throw SingularError(
          std::string("gauge factorization pivot failed (leading minor "
                      "vanishes): ") +
          e.what());
    }
    if (dj == 0.0)
      throw SingularError("gauge factorization: zero pivot at box center");
    sign_of[j] = dj > 0 ? 1 : -1;
    (dj > 0 ? p : q) += 1;
  }
  if (p != g.p() || q != g.q())
    throw StructuralError("declared signature (" + std::to_string(g.p()) +
                          "," + std::to_string(g.q()) +
                          ") does not match the factorization (" +
                          std::to_string(p) + "," + std::to_string(q) + ")");
  // Stable permutation: + pivots first.
  std::vector<int> perm;
  for (int j = 0; j < n; ++j)
    if (sign_of[j] > 0) perm.push_back(j);
  for (int j = 0; j < n; ++j)
    if (sign_of[j] < 0) perm.push_back(j);

  GaugeFactor f;
  f.p = p;
  f.q = q;
  f.eta_diag.resize(n);
  XF h(n);
  for (int r = 0; r < n; ++r) {
    int s = perm[r];
    f.eta_diag[r] = sign_of[s];
    Expr scale_r = sqrt_(abs_(D[s]));
    for (int j = 0; j < n; ++j) h.set(r, j, mul(scale_r, L[j * n + s]));
  }
  f.h = h;
  auto handle = make_matrix(n, h.entries());
  XF hi(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hi.set(i, j, inv_entry(handle, i, j));
  f.h_inv = hi;
  f.h_adj = transpose(h);
  f.h_star = transpose(hi);
  f.det_h = det_of(handle);
  return f;
}

std::pair<Extensor11, Extensor11> eigen_gauge_factor_at(const MetricField& g,
                                                        EvalCtx& ctx) {
  int n = g.dim();
  Extensor11 G = g.mat().eval(ctx);
  std::vector<double> ev, Q;
  smallmat::sym_eigen(n, G.data(), ev, Q);
  for (int k = 0; k < n; ++k)
    if (std::abs(ev[k]) < 1e-10)
      throw SingularError("degenerate metric: eigenvalue " +
                          std::to_string(ev[k]) + " at " + ctx.point_string());
  // Descending order puts the positive eigenvalues first, so the aligning
  // permutation is the identity whenever the signature is constant.
  Extensor11 h(n), eta(n);
  int p = 0;
  for (int k = 0; k < n; ++k)
    if (ev[k] > 0) ++p;
  for (int k = 0; k < n; ++k) {
    eta.at(k, k) = k < p ? 1.0 : -1.0;
    double s = std::sqrt(std::abs(ev[k]));
    for (int j = 0; j < n; ++j) h.at(k, j) = s * Q[j * n + k];
  }
  return {h, eta};
}

ConnectionField deform_connection(const ConnectionField& c, const XF& u,
                                  const XF& u_inv) {
  int n = c.dim();
  ConnectionField out = ConnectionField::zero(c.chart());
  for (int mu = 0; mu < n; ++mu) {
    XF m = compose(u, partial(u_inv, mu)) +
           compose(u, compose(c.gamma_dir(mu), u_inv));
    for (int lam = 0; lam < n; ++lam)
      for (int nu = 0; nu < n; ++nu) out.set_entry(lam, mu, nu, m.at(lam, nu));
  }
  return out;
}

DeformedStructure deform_pair(const ConnectionField& conn_g,
                              const MetricField& g) {
  GaugeFactor f = gauge_metric_factor(g);
  DeformedStructure d{deform_connection(conn_g, f.h, f.h_inv),
                      MetricField::constant_diag(g.chart(), f.eta_diag),
                      f};
  return d;
}

}  // namespace mvx
