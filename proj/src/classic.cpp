#include "mvx/classic.hpp"

#include "mvx/errors.hpp"

namespace mvx {

XF ChartMap::cov_frame() const { return jac_inv; }

XF ChartMap::con_frame() const { return transpose(jac); }

Expr ChartMap::primed_partial(int mu, const Expr& f) const {
  int n = chart.n;
  Expr s = konst(0.0);
  for (int a = 0; a < n; ++a) s = add(s, mul(jac_inv.at(a, mu), diff(f, a)));
  return s;
}

ChartMap make_chart_map(const Chart& chart, std::vector<Expr> fwd) {
  int n = chart.n;
  if (static_cast<int>(fwd.size()) != n)
    throw StructuralError("chart map needs one expression per coordinate");
  ChartMap m;
  m.chart = chart;
  m.fwd = std::move(fwd);
  XF j(n);
  for (int mu = 0; mu < n; ++mu)
    for (int a = 0; a < n; ++a) j.set(mu, a, diff(m.fwd[mu], a));
  m.jac = j;
  auto handle = make_matrix(n, j.entries());
  XF ji(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) ji.set(i, k, inv_entry(handle, i, k));
  m.jac_inv = ji;
  return m;
}

std::vector<Expr> coefficients_of_connection(const ConnectionField& c,
                                             const XF& cov, const XF& con) {
  int n = c.dim();
  std::vector<Expr> g(static_cast<size_t>(n) * n * n);
  for (int mu = 0; mu < n; ++mu) {
    MF emu = cov.col(mu);
    for (int nu = 0; nu < n; ++nu) {
      MF dnu = cov_deriv(c, Sign::Plus, emu, cov.col(nu));
      for (int lam = 0; lam < n; ++lam)
        g[(lam * n + mu) * n + nu] = sprod(dnu, con.col(lam));
    }
  }
  return g;
}

std::vector<Expr> coefficients_of_connection(const ConnectionField& c) {
  int n = c.dim();
  XF id = XF::identity(n);
  return coefficients_of_connection(c, id, id);
}

std::vector<Expr> transformation_residual(const ConnectionField& c,
                                          const ChartMap& map) {
  int n = c.dim();
  std::vector<Expr> base = coefficients_of_connection(c);
  std::vector<Expr> primed =
      coefficients_of_connection(c, map.cov_frame(), map.con_frame());
  const XF& J = map.jac;
  const XF& Ji = map.jac_inv;
  std::vector<Expr> res(primed.size());
  for (int lam = 0; lam < n; ++lam)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) {
        Expr rhs = konst(0.0);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            Expr jj = mul(Ji.at(a, mu), Ji.at(b, nu));
            for (int gam = 0; gam < n; ++gam) {
              const Expr& G = base[(gam * n + a) * n + b];
              if (is_zero(G)) continue;
              rhs = add(rhs, mul(mul(jj, J.at(lam, gam)), G));
            }
          }
        // inhomogeneous term: (d^2 x^b / dx^mu' dx^nu') dx^lam'/dx^b
        for (int b = 0; b < n; ++b)
          rhs = add(rhs, mul(map.primed_partial(mu, Ji.at(b, nu)),
                             J.at(lam, b)));
        res[(lam * n + mu) * n + nu] =
            sub(primed[(lam * n + mu) * n + nu], rhs);
      }
  return res;
}

std::vector<Expr> component_transform_residual(const MF& v,
                                               const ChartMap& map) {
  int n = map.chart.n;
  XF cov = map.cov_frame(), con = map.con_frame();
  std::vector<Expr> res;
  res.reserve(2 * n);
  for (int a = 0; a < n; ++a) {
    // covariant: v'_a = (dx^b/dx^a') v_b
    Expr rhs = konst(0.0);
    for (int b = 0; b < n; ++b)
      rhs = add(rhs, mul(map.jac_inv.at(b, a), v.comp(blade_t{1} << b)));
    res.push_back(sub(sprod(v, cov.col(a)), rhs));
  }
  for (int a = 0; a < n; ++a) {
    // contravariant: v^a' = (dx^a'/dx^b) v^b
    Expr rhs = konst(0.0);
    for (int b = 0; b < n; ++b)
      rhs = add(rhs, mul(map.jac.at(a, b), v.comp(blade_t{1} << b)));
    res.push_back(sub(sprod(v, con.col(a)), rhs));
  }
  return res;
}

namespace {
Expr coord_partial(const ChartMap* map, int mu, const Expr& f) {
  return map ? map->primed_partial(mu, f) : diff(f, mu);
}
}  // namespace

VectorComponentResiduals component_cov_deriv_vector_residual(
    const ConnectionField& c, const MF& v, const XF& cov, const XF& con,
    const ChartMap* map) {
  int n = c.dim();
  std::vector<Expr> G = coefficients_of_connection(c, cov, con);
  std::vector<Expr> up(n), down(n);
  for (int k = 0; k < n; ++k) {
    up[k] = sprod(v, con.col(k));
    down[k] = sprod(v, cov.col(k));
  }
  VectorComponentResiduals res;
  for (int mu = 0; mu < n; ++mu) {
    MF emu = cov.col(mu);
    MF dp = cov_deriv(c, Sign::Plus, emu, v);
    MF dm = cov_deriv(c, Sign::Minus, emu, v);
    for (int lam = 0; lam < n; ++lam) {
      Expr rhs = coord_partial(map, mu, up[lam]);
      for (int a = 0; a < n; ++a)
        rhs = add(rhs, mul(G[(lam * n + mu) * n + a], up[a]));
      res.contravariant.push_back(sub(sprod(dp, con.col(lam)), rhs));
    }
    for (int nu = 0; nu < n; ++nu) {
      Expr rhs = coord_partial(map, mu, down[nu]);
      for (int a = 0; a < n; ++a)
        rhs = sub(rhs, mul(G[(a * n + mu) * n + nu], down[a]));
      res.covariant.push_back(sub(sprod(dm, cov.col(nu)), rhs));
    }
  }
  return res;
}

TensorComponentResiduals component_cov_deriv_tensor_residual(
    const ConnectionField& c, const XF& t, const XF& cov, const XF& con,
    const ChartMap* map) {
  int n = c.dim();
  std::vector<Expr> G = coefficients_of_connection(c, cov, con);
  auto op = [t](const MF& x) { return t.apply(x); };
  std::vector<Expr> tdd(n * n), tmix(n * n);
  for (int a = 0; a < n; ++a) {
    MF ta = t.apply(cov.col(a));
    for (int b = 0; b < n; ++b) {
      tdd[a * n + b] = sprod(ta, cov.col(b));
      tmix[a * n + b] = sprod(ta, con.col(b));
    }
  }
  TensorComponentResiduals res;
  for (int mu = 0; mu < n; ++mu) {
    MF emu = cov.col(mu);
    auto dpp = ext11_cov_deriv(c, op, Sign::Plus, Sign::Plus, emu);
    auto dpm = ext11_cov_deriv(c, op, Sign::Plus, Sign::Minus, emu);
    for (int a = 0; a < n; ++a) {
      MF da_pp = dpp(cov.col(a));
      MF da_pm = dpm(cov.col(a));
      for (int b = 0; b < n; ++b) {
        // t_{ab;mu}
        Expr rhs = coord_partial(map, mu, tdd[a * n + b]);
        for (int s = 0; s < n; ++s) {
          rhs = sub(rhs, mul(G[(s * n + mu) * n + a], tdd[s * n + b]));
          rhs = sub(rhs, mul(G[(s * n + mu) * n + b], tdd[a * n + s]));
        }
        res.covariant.push_back(sub(sprod(da_pp, cov.col(b)), rhs));
        // t_a^b_{;mu}
        Expr rhs2 = coord_partial(map, mu, tmix[a * n + b]);
        for (int s = 0; s < n; ++s) {
          rhs2 = sub(rhs2, mul(G[(s * n + mu) * n + a], tmix[s * n + b]));
          rhs2 = add(rhs2, mul(G[(b * n + mu) * n + s], tmix[a * n + s]));
        }
        res.mixed.push_back(sub(sprod(da_pm, con.col(b)), rhs2));
      }
    }
  }
  return res;
}

}  // namespace mvx
