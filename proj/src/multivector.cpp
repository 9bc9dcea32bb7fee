#include "mvx/multivector.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "mvx/errors.hpp"

namespace mvx {

std::string blade_name(blade_t m) {
  if (m == 0) return "s";
  std::string s = "e";
  for (int mu = 0; mu < kMaxDim; ++mu)
    if (m & (blade_t{1} << mu)) s += std::to_string(mu + 1);
  return s;
}

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw StructuralError("dimension must be in [1, " +
                          std::to_string(kMaxDim) + "], got " +
                          std::to_string(n));
}

void check_same(const Multivector& x, const Multivector& y) {
  if (x.dim() != y.dim())
    throw StructuralError("dimension mismatch: " + std::to_string(x.dim()) +
                          " vs " + std::to_string(y.dim()));
}

}  // namespace

Multivector::Multivector(int n) : n_(n) {
  check_dim(n);
  c_.assign(std::size_t{1} << n, 0.0);
}

Multivector Multivector::scalar(int n, double v) {
  Multivector x(n);
  x.c_[0] = v;
  return x;
}

Multivector Multivector::basis_vector(int n, int mu) {
  if (mu < 1 || mu > n)
    throw StructuralError("basis vector index " + std::to_string(mu) +
                          " out of range for n=" + std::to_string(n));
  return blade(n, blade_t{1} << (mu - 1));
}

Multivector Multivector::blade(int n, blade_t mask, double v) {
  Multivector x(n);
  if (mask >= x.c_.size())
    throw StructuralError("blade mask out of range for n=" + std::to_string(n));
  x.c_[mask] = v;
  return x;
}

Multivector Multivector::pseudoscalar(int n) {
  Multivector x(n);
  x.c_.back() = 1.0;
  return x;
}

double Multivector::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

bool Multivector::is_zero(double tol) const { return max_abs() <= tol; }

Multivector operator+(const Multivector& x, const Multivector& y) {
  check_same(x, y);
  Multivector z = x;
  for (int i = 0; i < z.ncoeffs(); ++i) z[i] += y[i];
  return z;
}

Multivector operator-(const Multivector& x, const Multivector& y) {
  check_same(x, y);
  Multivector z = x;
  for (int i = 0; i < z.ncoeffs(); ++i) z[i] -= y[i];
  return z;
}

Multivector operator-(const Multivector& x) { return -1.0 * x; }

Multivector operator*(double s, const Multivector& x) {
  Multivector z = x;
  for (int i = 0; i < z.ncoeffs(); ++i) z[i] *= s;
  return z;
}

Multivector operator*(const Multivector& x, double s) { return s * x; }

Multivector wedge(const Multivector& x, const Multivector& y) {
  check_same(x, y);
  Multivector z(x.dim());
  const int nc = x.ncoeffs();
  for (blade_t a = 0; a < static_cast<blade_t>(nc); ++a) {
    if (x[a] == 0.0) continue;
    for (blade_t b = 0; b < static_cast<blade_t>(nc); ++b) {
      if (y[b] == 0.0 || (a & b)) continue;
      z[a | b] += reorder_sign(a, b) * x[a] * y[b];
    }
  }
  return z;
}

Multivector gp(const Multivector& x, const Multivector& y) {
  check_same(x, y);
  Multivector z(x.dim());
  const int nc = x.ncoeffs();
  for (blade_t a = 0; a < static_cast<blade_t>(nc); ++a) {
    if (x[a] == 0.0) continue;
    for (blade_t b = 0; b < static_cast<blade_t>(nc); ++b) {
      if (y[b] == 0.0) continue;
      z[a ^ b] += reorder_sign(a, b) * x[a] * y[b];
    }
  }
  return z;
}

Multivector lcontract(const Multivector& x, const Multivector& y) {
  check_same(x, y);
  Multivector z(x.dim());
  const int nc = x.ncoeffs();
  for (blade_t a = 0; a < static_cast<blade_t>(nc); ++a) {
    if (x[a] == 0.0) continue;
    for (blade_t b = 0; b < static_cast<blade_t>(nc); ++b) {
      if (y[b] == 0.0 || (a & ~b)) continue;  // a must divide b
      z[a ^ b] += reorder_sign(a, b) * x[a] * y[b];
    }
  }
  return z;
}

Multivector rcontract(const Multivector& x, const Multivector& y) {
  check_same(x, y);
  Multivector z(x.dim());
  const int nc = x.ncoeffs();
  for (blade_t a = 0; a < static_cast<blade_t>(nc); ++a) {
    if (x[a] == 0.0) continue;
    for (blade_t b = 0; b < static_cast<blade_t>(nc); ++b) {
      if (y[b] == 0.0 || (b & ~a)) continue;  // b must divide a
      z[a ^ b] += reorder_sign(a, b) * x[a] * y[b];
    }
  }
  return z;
}

double sprod(const Multivector& x, const Multivector& y) {
  check_same(x, y);
  double s = 0.0;
  for (int i = 0; i < x.ncoeffs(); ++i) s += x[i] * y[i];
  return s;
}

Multivector commutator(const Multivector& x, const Multivector& y) {
  return 0.5 * (gp(x, y) - gp(y, x));
}

Multivector grade_project(const Multivector& x, int k) {
  Multivector z(x.dim());
  for (blade_t m = 0; m < static_cast<blade_t>(x.ncoeffs()); ++m)
    if (grade_of(m) == k) z[m] = x[m];
  return z;
}

namespace {
Multivector apply_grade_sign(const Multivector& x, int (*sign)(int)) {
  Multivector z = x;
  for (blade_t m = 0; m < static_cast<blade_t>(x.ncoeffs()); ++m)
    z[m] *= sign(grade_of(m));
  return z;
}
}  // namespace

Multivector reverse(const Multivector& x) {
  return apply_grade_sign(x, reverse_sign);
}

Multivector grade_involution(const Multivector& x) {
  return apply_grade_sign(x, ginv_sign);
}

Multivector conjugate(const Multivector& x) {
  return apply_grade_sign(x, conj_sign);
}

std::ostream& operator<<(std::ostream& os, const Multivector& x) {
  bool any = false;
  for (blade_t m = 0; m < static_cast<blade_t>(x.ncoeffs()); ++m) {
    if (x[m] == 0.0) continue;
    if (any) os << " + ";
    os << x[m] << "*" << blade_name(m);
    any = true;
  }
  if (!any) os << "0";
  return os;
}

}  // namespace mvx
