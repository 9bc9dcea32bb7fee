#include "mvx/extensor.hpp"

#include <cmath>
#include <sstream>

#include "mvx/errors.hpp"
#include "mvx/smallmat.hpp"

namespace mvx {

namespace smallmat {

double det_inverse(int n, const std::vector<double>& m,
                   std::vector<double>* inv) {
  // Gauss-Jordan with partial pivoting on an augmented copy.
  std::vector<double> a = m;
  std::vector<double> e(n * n, 0.0);
  for (int i = 0; i < n; ++i) e[i * n + i] = 1.0;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(e[piv * n + j], e[col * n + j]);
      }
      det = -det;
    }
    double p = a[col * n + col];
    det *= p;
    if (p == 0.0 || !std::isfinite(p)) {
      if (inv) throw SingularError("singular matrix: zero pivot");
      return 0.0;
    }
    if (inv) {
      double ip = 1.0 / p;
      for (int j = 0; j < n; ++j) {
        a[col * n + j] *= ip;
        e[col * n + j] *= ip;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        double f = a[r * n + col];
        if (f == 0.0) continue;
        for (int j = 0; j < n; ++j) {
          a[r * n + j] -= f * a[col * n + j];
          e[r * n + j] -= f * e[col * n + j];
        }
      }
    } else {
      for (int r = col + 1; r < n; ++r) {
        double f = a[r * n + col] / p;
        if (f == 0.0) continue;
        for (int j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
      }
    }
  }
  if (inv) *inv = e;
  return det;
}

void sym_eigen(int n, const std::vector<double>& m,
               std::vector<double>& eigenvalues,
               std::vector<double>& eigenvectors) {
  std::vector<double> a = m;
  std::vector<double> v(n * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }
  // Stable descending order.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 1; i < n; ++i) {
    int j = i;
    while (j > 0 && a[order[j] * n + order[j]] > a[order[j - 1] * n + order[j - 1]]) {
      std::swap(order[j], order[j - 1]);
      --j;
    }
  }
  eigenvalues.assign(n, 0.0);
  eigenvectors.assign(n * n, 0.0);
  for (int k = 0; k < n; ++k) {
    eigenvalues[k] = a[order[k] * n + order[k]];
    for (int i = 0; i < n; ++i) eigenvectors[i * n + k] = v[i * n + order[k]];
  }
}

}  // namespace smallmat

namespace {
void check_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw StructuralError("extensor dimension out of range: " +
                          std::to_string(n));
}
void check_same(const Extensor11& a, const Extensor11& b) {
  if (a.dim() != b.dim()) throw StructuralError("extensor dimension mismatch");
}
}  // namespace

Extensor11::Extensor11(int n) : n_(n), m_(n * n, 0.0) { check_dim(n); }

Extensor11::Extensor11(int n, std::vector<double> rowmajor)
    : n_(n), m_(std::move(rowmajor)) {
  check_dim(n);
  if (m_.size() != static_cast<size_t>(n) * n)
    throw StructuralError("extensor matrix size mismatch");
}

Extensor11 Extensor11::identity(int n) {
  Extensor11 t(n);
  for (int i = 0; i < n; ++i) t.at(i, i) = 1.0;
  return t;
}

Extensor11 Extensor11::diag(const std::vector<double>& d) {
  Extensor11 t(static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) t.at(int(i), int(i)) = d[i];
  return t;
}

Multivector Extensor11::apply(const Multivector& v) const {
  if (v.dim() != n_) throw StructuralError("extensor/vector dimension mismatch");
  Multivector out(n_);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[blade_t{1} << j];
    out[blade_t{1} << i] = s;
  }
  return out;
}

Multivector Extensor11::col(int j) const {
  Multivector out(n_);
  for (int i = 0; i < n_; ++i) out[blade_t{1} << i] = (*this)(i, j);
  return out;
}

Extensor11 operator+(const Extensor11& a, const Extensor11& b) {
  check_same(a, b);
  Extensor11 c = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c.at(i, j) += b(i, j);
  return c;
}

Extensor11 operator-(const Extensor11& a, const Extensor11& b) {
  check_same(a, b);
  Extensor11 c = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c.at(i, j) -= b(i, j);
  return c;
}

Extensor11 operator*(double s, const Extensor11& a) {
  Extensor11 c = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) c.at(i, j) *= s;
  return c;
}

Extensor11 compose(const Extensor11& a, const Extensor11& b) {
  check_same(a, b);
  int n = a.dim();
  Extensor11 c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c.at(i, j) += aik * b(k, j);
    }
  return c;
}

Extensor11 adjoint(const Extensor11& t) {
  int n = t.dim();
  Extensor11 a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = t(j, i);
  return a;
}

Multivector extend_apply(const Extensor11& t, const Multivector& x) {
  if (x.dim() != t.dim()) throw StructuralError("extend: dimension mismatch");
  int n = t.dim();
  Multivector out(n);
  for (blade_t m = 0; m < static_cast<blade_t>(x.ncoeffs()); ++m) {
    double xm = x[m];
    if (xm == 0.0) continue;
    Multivector w = Multivector::scalar(n, 1.0);
    for (int j = 0; j < n; ++j)
      if (m & (blade_t{1} << j)) w = wedge(w, t.col(j));
    out = out + xm * w;
  }
  return out;
}

Multivector generalize_apply(const Extensor11& t, const Multivector& x) {
  if (x.dim() != t.dim())
    throw StructuralError("generalize: dimension mismatch");
  int n = t.dim();
  Multivector out(n);
  for (int mu = 0; mu < n; ++mu) {
    Multivector bmu = Multivector::basis_vector(n, mu + 1);
    out = out + wedge(t.col(mu), lcontract(bmu, x));
  }
  return out;
}

Multivector biv(const Extensor11& t) {
  int n = t.dim();
  Multivector out(n);
  for (int mu = 0; mu < n; ++mu) {
    Multivector bmu = Multivector::basis_vector(n, mu + 1);
    out = out - wedge(bmu, t.col(mu));
  }
  return out;
}

double det(const Extensor11& t) {
  return smallmat::det_inverse(t.dim(), t.data(), nullptr);
}

Extensor11 inverse(const Extensor11& t) {
  double d = det(t);
  if (std::abs(d) <= 1e-12)
    throw SingularError("extensor is singular (|det| = " + std::to_string(d) +
                        " <= 1e-12)");
  std::vector<double> inv;
  smallmat::det_inverse(t.dim(), t.data(), &inv);
  return Extensor11(t.dim(), std::move(inv));
}

Extensor11 inverse_adjoint(const Extensor11& t) {
  return adjoint(inverse(t));
}

Extensor11 g_adjoint(const Extensor11& t, const Extensor11& g) {
  return compose(inverse(g), compose(adjoint(t), g));
}

std::pair<Extensor11, Extensor11> sym_skew_split(
    const Extensor11& t, const std::optional<Extensor11>& g) {
  Extensor11 ta = g ? g_adjoint(t, *g) : adjoint(t);
  return {0.5 * (t + ta), 0.5 * (t - ta)};
}

Multivector ExtensorK::operator()(std::span<const Multivector> args) const {
  if (static_cast<int>(args.size()) != arity)
    throw StructuralError("k-extensor arity mismatch");
  return eval(args);
}

Multivector dummy_vector_derivative(
    int n, const std::function<Multivector(const Multivector&)>& f,
    const std::function<Multivector(const Multivector&, const Multivector&)>&
        combine) {
  Multivector out(n);
  for (int mu = 1; mu <= n; ++mu) {
    Multivector b = Multivector::basis_vector(n, mu);
    out = out + combine(b, f(b));
  }
  return out;
}

Multivector dummy_wedge_derivative(
    int n,
    const std::function<double(const Multivector&, const Multivector&)>& g) {
  Multivector out(n);
  for (int mu = 1; mu <= n; ++mu) {
    Multivector bm = Multivector::basis_vector(n, mu);
    for (int nu = 1; nu <= n; ++nu) {
      Multivector bn = Multivector::basis_vector(n, nu);
      out = out + g(bm, bn) * wedge(bm, bn);
    }
  }
  return out;
}

}  // namespace mvx
