#include "mvx/field.hpp"

#include <sstream>

#include "mvx/errors.hpp"

namespace mvx {

Chart Chart::box(std::vector<double> lo, std::vector<double> hi) {
  Chart c;
  c.n = static_cast<int>(lo.size());
  if (c.n < 1 || c.n > kMaxDim)
    throw StructuralError("chart dimension out of range");
  if (hi.size() != lo.size())
    throw StructuralError("chart box bounds size mismatch");
  for (int i = 0; i < c.n; ++i)
    if (!(lo[i] < hi[i]))
      throw StructuralError("chart box interval " + std::to_string(i + 1) +
                            " is empty");
  c.lo = std::move(lo);
  c.hi = std::move(hi);
  return c;
}

bool Chart::contains(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != n) return false;
  for (int i = 0; i < n; ++i)
    if (!(p[i] > lo[i] && p[i] < hi[i])) return false;
  return true;
}

void Chart::require_inside(std::span<const double> p) const {
  if (!contains(p)) {
    std::ostringstream os;
    os << "point (";
    for (size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ") is outside the chart box";
    throw EvalError(os.str());
  }
}

namespace {
void check_same(const MF& x, const MF& y) {
  if (x.dim() != y.dim())
    throw StructuralError("field dimension mismatch: " +
                          std::to_string(x.dim()) + " vs " +
                          std::to_string(y.dim()));
}
}  // namespace

MF MF::scalar(int n, Expr f) {
  MF x(n);
  x.set(0, f);
  return x;
}

MF MF::constant(const Multivector& v) {
  MF x(v.dim());
  for (blade_t m = 0; m < static_cast<blade_t>(v.ncoeffs()); ++m)
    if (v[m] != 0.0) x.set(m, konst(v[m]));
  return x;
}

MF MF::basis_vector(int n, int mu) {
  return constant(Multivector::basis_vector(n, mu));
}

MF MF::blade(int n, blade_t m, Expr f) {
  MF x(n);
  x.set(m, f);
  return x;
}

Expr MF::comp(blade_t m) const {
  auto it = c_.find(m);
  return it == c_.end() ? konst(0.0) : it->second;
}

void MF::set(blade_t m, const Expr& f) {
  if (is_zero(f))
    c_.erase(m);
  else
    c_[m] = f;
}

Multivector MF::eval(EvalCtx& ctx) const {
  Multivector out(n_);
  for (const auto& [m, f] : c_) out[m] = ctx.eval(f);
  return out;
}

bool MF::pure_grade(int k) const {
  for (const auto& [m, f] : c_)
    if (grade_of(m) != k) return false;
  return true;
}

MF operator+(const MF& x, const MF& y) {
  check_same(x, y);
  MF z = x;
  for (const auto& [m, f] : y.comps()) z.set(m, add(z.comp(m), f));
  return z;
}

MF operator-(const MF& x, const MF& y) {
  check_same(x, y);
  MF z = x;
  for (const auto& [m, f] : y.comps()) z.set(m, sub(z.comp(m), f));
  return z;
}

MF operator-(const MF& x) {
  MF z(x.dim());
  for (const auto& [m, f] : x.comps()) z.set(m, neg(f));
  return z;
}

MF scale(const Expr& f, const MF& x) {
  MF z(x.dim());
  for (const auto& [m, g] : x.comps()) z.set(m, mul(f, g));
  return z;
}

namespace {

// Shared product skeleton: `accept(a, b)` filters blade pairs, result blade
// is a^b for Clifford-type pairings and a|b for the wedge.
template <class Accept>
MF blade_product(const MF& x, const MF& y, Accept accept, bool use_xor) {
  check_same(x, y);
  MF z(x.dim());
  for (const auto& [a, fa] : x.comps())
    for (const auto& [b, fb] : y.comps()) {
      if (!accept(a, b)) continue;
      blade_t out = use_xor ? (a ^ b) : (a | b);
      Expr t = mul(fa, fb);
      if (reorder_sign(a, b) < 0) t = neg(t);
      // NB: accumulate
      z.set(out, add(z.comp(out), t));
    }
  return z;
}

}  // namespace

MF wedge(const MF& x, const MF& y) {
  return blade_product(
      x, y, [](blade_t a, blade_t b) { return (a & b) == 0; }, false);
}

MF gp(const MF& x, const MF& y) {
  return blade_product(
      x, y, [](blade_t, blade_t) { return true; }, true);
}

MF lcontract(const MF& x, const MF& y) {
  return blade_product(
      x, y, [](blade_t a, blade_t b) { return (a & ~b) == 0; }, true);
}

MF rcontract(const MF& x, const MF& y) {
  return blade_product(
      x, y, [](blade_t a, blade_t b) { return (b & ~a) == 0; }, true);
}

Expr sprod(const MF& x, const MF& y) {
  check_same(x, y);
  Expr s = konst(0.0);
  for (const auto& [a, fa] : x.comps()) {
    auto it = y.comps().find(a);
    if (it != y.comps().end()) s = add(s, mul(fa, it->second));
  }
  return s;
}

MF commutator(const MF& x, const MF& y) {
  MF d = gp(x, y) - gp(y, x);
  return scale(konst(0.5), d);
}

MF grade_project(const MF& x, int k) {
  MF z(x.dim());
  for (const auto& [m, f] : x.comps())
    if (grade_of(m) == k) z.set(m, f);
  return z;
}

namespace {
MF apply_grade_sign(const MF& x, int (*sign)(int)) {
  MF z(x.dim());
  for (const auto& [m, f] : x.comps())
    z.set(m, sign(grade_of(m)) < 0 ? neg(f) : f);
  return z;
}
}  // namespace

MF reverse(const MF& x) { return apply_grade_sign(x, reverse_sign); }
MF grade_involution(const MF& x) { return apply_grade_sign(x, ginv_sign); }
MF conjugate(const MF& x) { return apply_grade_sign(x, conj_sign); }

Extensor11Field::Extensor11Field(int n) : n_(n) {
  if (n < 1 || n > kMaxDim)
    throw StructuralError("extensor field dimension out of range");
  m_.assign(static_cast<size_t>(n) * n, konst(0.0));
}

XF XF::identity(int n) {
  XF t(n);
  for (int i = 0; i < n; ++i) t.set(i, i, konst(1.0));
  return t;
}

XF XF::constant(const Extensor11& v) {
  XF t(v.dim());
  for (int i = 0; i < v.dim(); ++i)
    for (int j = 0; j < v.dim(); ++j) t.set(i, j, konst(v(i, j)));
  return t;
}

MF XF::col(int j) const {
  MF v(n_);
  for (int i = 0; i < n_; ++i) v.set(blade_t{1} << i, at(i, j));
  return v;
}

MF XF::apply(const MF& v) const {
  if (v.dim() != n_) throw StructuralError("extensor field: dim mismatch");
  if (!v.pure_grade(1))
    throw StructuralError("extensor field applies to vector fields");
  MF out(n_);
  for (int i = 0; i < n_; ++i) {
    Expr s = konst(0.0);
    for (int j = 0; j < n_; ++j)
      s = add(s, mul(at(i, j), v.comp(blade_t{1} << j)));
    out.set(blade_t{1} << i, s);
  }
  return out;
}

Extensor11 XF::eval(EvalCtx& ctx) const {
  Extensor11 t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t.at(i, j) = ctx.eval(at(i, j));
  return t;
}

XF operator+(const XF& a, const XF& b) {
  XF c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c.set(i, j, add(a.at(i, j), b.at(i, j)));
  return c;
}

XF operator-(const XF& a, const XF& b) {
  XF c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c.set(i, j, sub(a.at(i, j), b.at(i, j)));
  return c;
}

XF scale(const Expr& f, const XF& a) {
  XF c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c.set(i, j, mul(f, a.at(i, j)));
  return c;
}

XF compose(const XF& a, const XF& b) {
  int n = a.dim();
  XF c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Expr s = konst(0.0);
      for (int k = 0; k < n; ++k) s = add(s, mul(a.at(i, k), b.at(k, j)));
      c.set(i, j, s);
    }
  return c;
}

XF transpose(const XF& a) {
  XF c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c.set(i, j, a.at(j, i));
  return c;
}

XF partial(const XF& a, int mu) {
  XF c(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c.set(i, j, diff(a.at(i, j), mu));
  return c;
}

XF dir_deriv(const MF& a, const XF& t) {
  int n = t.dim();
  XF c(n);
  for (int mu = 0; mu < n; ++mu) {
    Expr amu = a.comp(blade_t{1} << mu);
    if (is_zero(amu)) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        c.set(i, j, add(c.at(i, j), mul(amu, diff(t.at(i, j), mu))));
  }
  return c;
}

MF extend_apply(const XF& t, const MF& x) {
  if (x.dim() != t.dim()) throw StructuralError("extend: dim mismatch");
  int n = t.dim();
  MF out(n);
  for (const auto& [m, f] : x.comps()) {
    MF w = MF::scalar(n, konst(1.0));
    for (int j = 0; j < n; ++j)
      if (m & (blade_t{1} << j)) w = wedge(w, t.col(j));
    out = out + scale(f, w);
  }
  return out;
}

MF generalize_apply(const XF& t, const MF& x) {
  int n = t.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF bmu = MF::basis_vector(n, mu + 1);
    out = out + wedge(t.col(mu), lcontract(bmu, x));
  }
  return out;
}

MF biv(const XF& t) {
  int n = t.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu)
    out = out - wedge(MF::basis_vector(n, mu + 1), t.col(mu));
  return out;
}

MF partial(const MF& x, int mu) {
  MF z(x.dim());
  for (const auto& [m, f] : x.comps()) z.set(m, diff(f, mu));
  return z;
}

MF dir_deriv(const MF& a, const MF& x) {
  if (!a.pure_grade(1))
    throw StructuralError("directional derivative needs a vector field");
  check_same(a, x);
  MF z(x.dim());
  for (int mu = 0; mu < x.dim(); ++mu) {
    Expr amu = a.comp(blade_t{1} << mu);
    if (is_zero(amu)) continue;
    z = z + scale(amu, partial(x, mu));
  }
  return z;
}

Expr dir_deriv(const MF& a, const Expr& f) {
  Expr s = konst(0.0);
  for (int mu = 0; mu < a.dim(); ++mu)
    s = add(s, mul(a.comp(blade_t{1} << mu), diff(f, mu)));
  return s;
}

MF lie_bracket(const MF& a, const MF& b) {
  if (!a.pure_grade(1) || !b.pure_grade(1))
    throw StructuralError("Lie bracket needs vector fields");
  return dir_deriv(a, b) - dir_deriv(b, a);
}

MF gradient(int n, const Expr& f) {
  MF g(n);
  for (int mu = 0; mu < n; ++mu) g.set(blade_t{1} << mu, diff(f, mu));
  return g;
}

MF nabla(const MF& x, NablaKind kind) {
  int n = x.dim();
  MF out(n);
  for (int mu = 0; mu < n; ++mu) {
    MF bmu = MF::basis_vector(n, mu + 1);
    MF dx = partial(x, mu);
    switch (kind) {
      case NablaKind::Curl:
        out = out + wedge(bmu, dx);
        break;
      case NablaKind::Div:
        out = out + lcontract(bmu, dx);
        break;
      case NablaKind::Full:
        out = out + gp(bmu, dx);
        break;
    }
  }
  return out;
}

Expr sprod_m(const XF& gx, const MF& x, const MF& y) {
  return sprod(extend_apply(gx, x), y);
}

MF lcontract_m(const XF& gx, const MF& x, const MF& y) {
  return lcontract(extend_apply(gx, x), y);
}

MF rcontract_m(const XF& gx, const MF& x, const MF& y) {
  return rcontract(x, extend_apply(gx, y));
}

namespace {

// b_A (g-Clifford) Y for a single basis blade A, by peeling the lowest
// factor e: b_A = e ^ R = e g R - e _|g R, so
//   b_A g Y = e g (R g Y) - (e _|g R) g Y.
MF gp_m_blade(const XF& gx, blade_t A, const MF& y);

MF gp_m_vector(const XF& gx, const MF& v, const MF& y) {
  return lcontract_m(gx, v, y) + wedge(v, y);
}

MF gp_m_general(const XF& gx, const MF& x, const MF& y) {
  MF out(x.dim());
  for (const auto& [m, f] : x.comps())
    out = out + scale(f, gp_m_blade(gx, m, y));
  return out;
}

MF gp_m_blade(const XF& gx, blade_t A, const MF& y) {
  int n = gx.dim();
  if (A == 0) return y;
  int low = 0;
  while (!(A & (blade_t{1} << low))) ++low;
  MF e = MF::basis_vector(n, low + 1);
  blade_t rest = A & ~(blade_t{1} << low);
  if (rest == 0) return gp_m_vector(gx, e, y);
  MF term1 = gp_m_vector(gx, e, gp_m_blade(gx, rest, y));
  MF eR = lcontract_m(gx, e, MF::constant(Multivector::blade(n, rest)));
  return term1 - gp_m_general(gx, eR, y);
}

}  // namespace

MF gp_m(const XF& gx, const MF& x, const MF& y) {
  check_same(x, y);
  return gp_m_general(gx, x, y);
}

MF commutator_m(const XF& gx, const MF& b, const MF& x) {
  MF d = gp_m(gx, b, x) - gp_m(gx, x, b);
  return scale(konst(0.5), d);
}

MF dir_deriv_extended(const MF& a, const XF& t, const MF& x) {
  return dir_deriv(a, extend_apply(t, x)) - extend_apply(t, dir_deriv(a, x));
}

}  // namespace mvx
