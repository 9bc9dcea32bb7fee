#pragma once

#include "mvx/metric.hpp"

namespace mvx {

// Reciprocal frame pair generated by a non-singular extensor field:
// e_mu = eps(b_mu), e^mu = eps*(b_mu).
struct FramePair {
  XF eps, eps_star;
};
FramePair make_frame(const XF& eps);

MF canonical_volume(int n);  // b_wedge as a constant field

// Standard volume pseudoscalar of a frame: sqrt(e_w . e_w) e^w. Reduces to
// +-b_wedge pointwise.
MF frame_volume(const FramePair& fr);
// Metric volume pseudoscalar: sqrt|e_w .g e_w| e^w = sqrt|det g| tau.
MF frame_volume_metric(const FramePair& fr, const MetricField& g);
// Fiducial-frame metric volume, sqrt|det g| b_wedge.
MF metric_volume(const MetricField& g);

// Hodge extensors. star X = X~ _| tau; star^-1 X = tau |_ X~.
MF hodge_star(const MF& tau, const MF& x);
MF hodge_star_inv(const MF& tau, const MF& x);
// Metric versions carry the (-1)^q of the inverse.
MF hodge_star_g(const MetricField& g, const MF& tau_g, const MF& x);
MF hodge_star_g_inv(const MetricField& g, const MF& tau_g, const MF& x);

// Ordinary Hodge coderivatives (fiducial volume).
MF delta_standard(const MF& x);                      // closed form: -del _| X
MF delta_metric(const MetricField& g, const MF& x);  // OHO.2

// Levi-Civita derivative operators of (U, lambda(g)).
struct LcDerivatives {
  MetricField g;
  ConnectionField lc;

  MF d_plus(const MF& a, const MF& x) const;
  MF d_minus(const MF& a, const MF& x) const;
  MF div_plus(const MF& x) const;        // D+ _| X
  MF div_minus_ginv(const MF& x) const;  // D- _|g^-1 X
  MF curl_minus(const MF& x) const;      // D- ^ X
  MF grad_minus_ginv(const MF& x) const; // D- g^-1-Clifford X
};
LcDerivatives make_lc_derivatives(const MetricField& g);

// Gauge (deformed) derivatives of the Levi-Civita pair through a gauge
// metric factor h.
struct GaugeOps {
  MetricField g;
  ConnectionField lc;
  GaugeFactor f;
  MetricField eta;

  // D+ at direction h(a) and D- at direction h*(a), by conjugation.
  MF dplus(const MF& a, const MF& x) const;
  MF dminus(const MF& a, const MF& x) const;
  MF bulk_div_eta(const MF& x) const;   // h*(del_a) _|eta (D-_{h*a} X)
  MF bulk_curl(const MF& x) const;
  MF bulk_grad_eta(const MF& x) const;
  MF omega0_bivector(const MF& a) const;  // -1/2 eta_ext(del^del)[a,h^-1.,h^-1.]
};
GaugeOps make_gauge_ops(const MetricField& g);

// Covariant Hodge operators of a geometric structure (gamma, g).
struct CovHodge {
  ConnectionField conn;
  MetricField g;
  MF tau_g;

  MF dminus(const MF& a, const MF& x) const;
  MF div_ginv(const MF& x) const;   // D^- _|g^-1 X
  MF curl(const MF& x) const;       // D^- ^ X
  MF gcl_inv(const MF& x) const;    // D^- g^-1-Clifford X
  MF coderivative(const MF& x) const;  // star_g^-1 (D^- ^ (star_g X^))
};
CovHodge make_cov_hodge(const ConnectionField& conn, const MetricField& g);

}  // namespace mvx
