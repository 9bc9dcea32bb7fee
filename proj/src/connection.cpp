#include "mvx/connection.hpp"

#include "mvx/errors.hpp"

namespace mvx {

Sign pairing_conjugate(Sign s) {
  switch (s) {
    case Sign::Plus:
      return Sign::Minus;
    case Sign::Minus:
      return Sign::Plus;
    case Sign::Zero:
      return Sign::Zero;
  }
  return Sign::Zero;
}

ConnectionField::ConnectionField(Chart chart, std::vector<Expr> table)
    : chart_(std::move(chart)), t_(std::move(table)) {
  size_t n = static_cast<size_t>(chart_.n);
  if (t_.size() != n * n * n)
    throw StructuralError("connection table must have n^3 entries");
}

ConnectionField ConnectionField::zero(const Chart& chart) {
  size_t n = static_cast<size_t>(chart.n);
  return ConnectionField(chart, std::vector<Expr>(n * n * n, konst(0.0)));
}

const Expr& ConnectionField::entry(int lam, int mu, int nu) const {
  int n = chart_.n;
  return t_[(lam * n + mu) * n + nu];
}

void ConnectionField::set_entry(int lam, int mu, int nu, const Expr& e) {
  int n = chart_.n;
  t_[(lam * n + mu) * n + nu] = e;
}

XF ConnectionField::gamma_dir(int mu) const {
  int n = chart_.n;
  XF g(n);
  for (int lam = 0; lam < n; ++lam)
    for (int nu = 0; nu < n; ++nu) g.set(lam, nu, entry(lam, mu, nu));
  return g;
}

XF ConnectionField::gamma_a(const MF& a) const {
  int n = chart_.n;
  if (!a.pure_grade(1)) throw StructuralError("gamma_a needs a vector field");
  XF g(n);
  for (int mu = 0; mu < n; ++mu) {
    Expr amu = a.comp(blade_t{1} << mu);
    if (is_zero(amu)) continue;
    for (int lam = 0; lam < n; ++lam)
      for (int nu = 0; nu < n; ++nu)
        g.set(lam, nu, add(g.at(lam, nu), mul(amu, entry(lam, mu, nu))));
  }
  return g;
}

MF ConnectionField::gamma(const MF& a, const MF& b) const {
  return gamma_a(a).apply(b);
}

ConnectionField ConnectionField::symmetrized() const {
  int n = chart_.n;
  ConnectionField s = *this;
  for (int lam = 0; lam < n; ++lam)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        s.set_entry(lam, mu, nu,
                    mul(konst(0.5),
                        add(entry(lam, mu, nu), entry(lam, nu, mu))));
  return s;
}

bool ConnectionField::is_table_symmetric_structurally() const {
  int n = chart_.n;
  for (int lam = 0; lam < n; ++lam)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        if (entry(lam, mu, nu).get() != entry(lam, nu, mu).get() &&
            !(is_zero(entry(lam, mu, nu)) && is_zero(entry(lam, nu, mu))))
          return false;
  return true;
}

MF gauge_omega(const ConnectionField& c, const MF& a) {
  int n = c.dim();
  XF ga = c.gamma_a(a);
  MF out(n);
  for (int mu = 0; mu < n; ++mu)
    out = out + wedge(ga.col(mu), MF::basis_vector(n, mu + 1));
  return scale(konst(0.5), out);
}

MF cov_deriv(const ConnectionField& c, Sign s, const MF& a, const MF& x) {
  if (s == Sign::Zero) {
    MF p = cov_deriv(c, Sign::Plus, a, x);
    MF m = cov_deriv(c, Sign::Minus, a, x);
    return scale(konst(0.5), p + m);
  }
  XF ga = c.gamma_a(a);
  MF d = dir_deriv(a, x);
  if (s == Sign::Plus) return d + generalize_apply(ga, x);
  return d - generalize_apply(transpose(ga), x);
}

MF connection_operator(const ConnectionField& c, Sign s, const MF& a,
                       const MF& b) {
  if (!b.pure_grade(1))
    throw StructuralError("connection operator needs vector fields");
  return cov_deriv(c, s, a, b);
}

MF DeformedPair::plus(const MF& a, const MF& x) const {
  return extend_apply(lam,
                      cov_deriv(conn, Sign::Plus, a, extend_apply(lam_inv, x)));
}

MF DeformedPair::minus(const MF& a, const MF& x) const {
  return extend_apply(lam_star, cov_deriv(conn, Sign::Minus, a,
                                          extend_apply(lam_adj, x)));
}

DeformedPair deform_cov_deriv(const XF& lam, const ConnectionField& c) {
  int n = lam.dim();
  DeformedPair d;
  d.lam = lam;
  auto handle = make_matrix(n, lam.entries());
  XF inv(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.set(i, j, inv_entry(handle, i, j));
  d.lam_inv = inv;
  d.lam_adj = transpose(lam);
  d.lam_star = transpose(inv);
  d.conn = c;
  return d;
}

MF ExtensorKField::operator()(std::span<const MF> args) const {
  if (static_cast<int>(args.size()) != arity)
    throw StructuralError("k-extensor field arity mismatch");
  return eval(args);
}

ExtensorKField extensor_cov_deriv(const ConnectionField& c,
                                  const ExtensorKField& t,
                                  std::vector<Sign> signs, const MF& a) {
  if (static_cast<int>(signs.size()) != t.arity + 1)
    throw StructuralError("extensor covariant derivative needs arity+1 signs");
  int n = t.n;
  ExtensorKField out;
  out.n = n;
  out.arity = t.arity;
  out.eval = [c, t, signs, a, n](std::span<const MF> args) -> MF {
    std::vector<MF> base(args.begin(), args.end());
    MF tval = t.eval(base);
    MF result(n);
    Sign sigma = signs.back();
    for (blade_t probe = 0; probe < (blade_t{1} << n); ++probe) {
      MF ej = MF::constant(Multivector::blade(n, probe));
      Expr coeff = dir_deriv(a, sprod(tval, ej));
      for (int i = 0; i < t.arity; ++i) {
        std::vector<MF> shifted = base;
        shifted[i] = cov_deriv(c, signs[i], a, base[i]);
        coeff = sub(coeff, sprod(t.eval(shifted), ej));
      }
      coeff = sub(coeff, sprod(tval, cov_deriv(c, sigma, a, ej)));
      if (!is_zero(coeff)) result.set(probe, add(result.comp(probe), coeff));
    }
    return result;
  };
  return out;
}

std::function<MF(const MF&)> ext11_cov_deriv(
    const ConnectionField& c, const std::function<MF(const MF&)>& op, Sign s1,
    Sign s, const MF& a) {
  Sign outer = pairing_conjugate(s);
  return [c, op, s1, outer, a](const MF& x) -> MF {
    return cov_deriv(c, outer, a, op(x)) - op(cov_deriv(c, s1, a, x));
  };
}

XF ext11_cov_deriv_matrix(const ConnectionField& c, const XF& t, Sign s1,
                          Sign s, const MF& a) {
  int n = t.dim();
  auto op = [&t](const MF& v) { return t.apply(v); };
  auto d = ext11_cov_deriv(c, op, s1, s, a);
  XF out(n);
  for (int nu = 0; nu < n; ++nu) {
    MF col = d(MF::basis_vector(n, nu + 1));
    for (int i = 0; i < n; ++i) out.set(i, nu, col.comp(blade_t{1} << i));
  }
  return out;
}

MF torsion(const ConnectionField& c, const MF& a, const MF& b) {
  return c.gamma(a, b) - c.gamma(b, a);
}

MF curvature(const ConnectionField& c, const MF& a, const MF& b, const MF& x) {
  int n = c.dim();
  if (!a.pure_grade(1) || !b.pure_grade(1) || !x.pure_grade(1))
    throw StructuralError("curvature needs vector fields");
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    Expr amu = a.comp(blade_t{1} << mu);
    if (is_zero(amu)) continue;
    for (int nu = 0; nu < n; ++nu) {
      Expr bnu = b.comp(blade_t{1} << nu);
      if (is_zero(bnu)) continue;
      XF gmu = c.gamma_dir(mu), gnu = c.gamma_dir(nu);
      XF r = partial(gnu, mu) - partial(gmu, nu) +
             (compose(gmu, gnu) - compose(gnu, gmu));
      out = out + scale(mul(amu, bnu), r.apply(x));
    }
  }
  return out;
}

MF curvature_operator_form(const ConnectionField& c, const MF& a, const MF& b,
                           const MF& x) {
  MF ab = cov_deriv(c, Sign::Plus, a, cov_deriv(c, Sign::Plus, b, x));
  MF ba = cov_deriv(c, Sign::Plus, b, cov_deriv(c, Sign::Plus, a, x));
  MF br = cov_deriv(c, Sign::Plus, lie_bracket(a, b), x);
  return ab - ba - br;
}

MF cartan_theta(const ConnectionField& c, const MF& cv) {
  int n = c.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu) {
      MF bm = MF::basis_vector(n, mu + 1), bn = MF::basis_vector(n, nu + 1);
      Expr s = sprod(torsion(c, bm, bn), cv);
      // both (mu,nu) and (nu,mu) contribute equally; the 1/2 cancels
      out = out + scale(s, wedge(bm, bn));
    }
  return out;
}

MF cartan_omega(const ConnectionField& c, const MF& cv, const MF& dv) {
  int n = c.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu) {
      MF bm = MF::basis_vector(n, mu + 1), bn = MF::basis_vector(n, nu + 1);
      Expr s = sprod(curvature(c, bm, bn, cv), dv);
      out = out + scale(s, wedge(bm, bn));
    }
  return out;
}

MF torsion_from_theta(const ConnectionField& c, const MF& a, const MF& b) {
  int n = c.dim();
  MF ab = wedge(a, b);
  MF out(n);
  for (int lam = 0; lam < n; ++lam) {
    MF bl = MF::basis_vector(n, lam + 1);
    out = out + scale(sprod(ab, cartan_theta(c, bl)), bl);
  }
  return out;
}

MF curvature_from_omega(const ConnectionField& c, const MF& a, const MF& b,
                        const MF& cv) {
  int n = c.dim();
  MF ab = wedge(a, b);
  MF out(n);
  for (int lam = 0; lam < n; ++lam) {
    MF bl = MF::basis_vector(n, lam + 1);
    out = out + scale(sprod(ab, cartan_omega(c, cv, bl)), bl);
  }
  return out;
}

MF cartan_plus(const ConnectionField& c, const MF& b, const MF& cv) {
  int n = c.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF bm = MF::basis_vector(n, mu + 1);
    Expr s = sprod(cov_deriv(c, Sign::Plus, bm, b), cv);
    out = out + scale(s, bm);
  }
  return out;
}

MF cartan_minus(const ConnectionField& c, const MF& b, const MF& cv) {
  int n = c.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF bm = MF::basis_vector(n, mu + 1);
    Expr s = sprod(b, cov_deriv(c, Sign::Minus, bm, cv));
    out = out + scale(s, bm);
  }
  return out;
}

std::pair<MF, MF> first_structure_equation(const ConnectionField& c,
                                           const MF& cv) {
  int n = c.dim();
  MF lhs = cartan_theta(c, cv);
  MF rhs = nabla(cv, NablaKind::Curl);
  for (int s = 0; s < n; ++s) {
    MF bs = MF::basis_vector(n, s + 1);
    rhs = rhs + wedge(bs, cartan_minus(c, bs, cv));
  }
  return {lhs, rhs};
}

std::pair<MF, MF> second_structure_equation(const ConnectionField& c,
                                            const MF& cv, const MF& dv) {
  int n = c.dim();
  MF lhs = cartan_omega(c, cv, dv);
  MF rhs = nabla(cartan_plus(c, cv, dv), NablaKind::Curl);
  for (int s = 0; s < n; ++s) {
    MF bs = MF::basis_vector(n, s + 1);
    rhs = rhs + wedge(cartan_plus(c, cv, bs), cartan_minus(c, bs, dv));
  }
  return {lhs, rhs};
}

}  // namespace mvx
