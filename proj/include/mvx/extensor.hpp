#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mvx/multivector.hpp"

namespace mvx {

// Pointwise (1,1)-extensor: a linear map of the canonical vector space,
// stored as the n x n matrix whose column mu holds the image of b_{mu+1}
// in the fiducial basis.
class Extensor11 {
 public:
  Extensor11() = default;
  explicit Extensor11(int n);
  Extensor11(int n, std::vector<double> rowmajor);

  static Extensor11 identity(int n);
  static Extensor11 diag(const std::vector<double>& d);

  int dim() const { return n_; }
  double operator()(int i, int j) const { return m_[i * n_ + j]; }
  double& at(int i, int j) { return m_[i * n_ + j]; }
  const std::vector<double>& data() const { return m_; }

  // Image of a vector (grade-1 multivector in, grade-1 out).
  Multivector apply(const Multivector& v) const;
  Multivector col(int j) const;  // t(b_{j+1})

 private:
  int n_ = 0;
  std::vector<double> m_;
};

Extensor11 operator+(const Extensor11& a, const Extensor11& b);
Extensor11 operator-(const Extensor11& a, const Extensor11& b);
Extensor11 operator*(double s, const Extensor11& a);
Extensor11 compose(const Extensor11& a, const Extensor11& b);  // a after b

Extensor11 adjoint(const Extensor11& t);  // matrix transpose

// Outermorphism: extend(t) acting on an arbitrary multivector. Scalars are
// fixed, blades map to the wedge of the images of their factors.
Multivector extend_apply(const Extensor11& t, const Multivector& x);

// The grade-preserving derivation built from t:
//   generalize(t)(X) = sum_mu t(b^mu) ^ (b_mu _| X).
Multivector generalize_apply(const Extensor11& t, const Multivector& x);

// biv[t] = -sum_mu b^mu ^ t(b_mu); zero for symmetric t, and 2B for the
// skew map v -> B x v.
Multivector biv(const Extensor11& t);

double det(const Extensor11& t);
Extensor11 inverse(const Extensor11& t);  // throws SingularError
// (t^-1)^T, the reciprocal-frame companion.
Extensor11 inverse_adjoint(const Extensor11& t);

// Adjoint with respect to a metric pairing: t^(g) with t^(g)(b).g c = b.g t(c),
// i.e. g^-1 t^T g.
Extensor11 g_adjoint(const Extensor11& t, const Extensor11& g);

// Symmetric/skew split; with a metric the split is taken w.r.t. the
// g-adjoint. Sums back to t either way.
std::pair<Extensor11, Extensor11> sym_skew_split(
    const Extensor11& t, const std::optional<Extensor11>& g = std::nullopt);

// Pointwise k-linear multivector map, kept as an evaluator: curvature-like
// objects have arity 3 and dense storage would buy nothing.
struct ExtensorK {
  int n = 0;
  int arity = 0;
  std::function<Multivector(std::span<const Multivector>)> eval;

  Multivector operator()(std::span<const Multivector> args) const;
};

// Reciprocal-frame dummy sums, the paper-style del_a / del_a ^ del_b
// combinators restricted to multilinear arguments:
//   arity 1:  sum_mu combine(b^mu, F(b_mu))
//   arity 2:  sum_{mu,nu} (b^mu ^ b^nu) * G(b_mu, b_nu)   (scalar G)
Multivector dummy_vector_derivative(
    int n, const std::function<Multivector(const Multivector&)>& f,
    const std::function<Multivector(const Multivector&, const Multivector&)>&
        combine);

Multivector dummy_wedge_derivative(
    int n,
    const std::function<double(const Multivector&, const Multivector&)>& g);

}  // namespace mvx
