#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mvx/blade.hpp"

namespace mvx {

// Dense multivector of the canonical space: 2^n blade coefficients.
// Immutable in spirit: every operation returns a fresh value, so sharing
// across threads needs no synchronization.
class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(int n);

  static Multivector scalar(int n, double v);
  // mu is 1-based: basis_vector(n, 1) == b1.
  static Multivector basis_vector(int n, int mu);
  static Multivector blade(int n, blade_t mask, double v = 1.0);
  static Multivector pseudoscalar(int n);

  int dim() const { return n_; }
  int ncoeffs() const { return static_cast<int>(c_.size()); }
  double operator[](blade_t m) const { return c_[m]; }
  double& operator[](blade_t m) { return c_[m]; }
  const std::vector<double>& coeffs() const { return c_; }

  double max_abs() const;
  bool is_zero(double tol = 0.0) const;

 private:
  int n_ = 0;
  std::vector<double> c_;
};

Multivector operator+(const Multivector& x, const Multivector& y);
Multivector operator-(const Multivector& x, const Multivector& y);
Multivector operator-(const Multivector& x);
Multivector operator*(double s, const Multivector& x);
Multivector operator*(const Multivector& x, double s);

// Canonical (Euclidean fiducial) products.
Multivector wedge(const Multivector& x, const Multivector& y);
Multivector gp(const Multivector& x, const Multivector& y);  // Clifford
Multivector lcontract(const Multivector& x, const Multivector& y);
Multivector rcontract(const Multivector& x, const Multivector& y);
double sprod(const Multivector& x, const Multivector& y);
// commutator: 0.5 * (xy - yx)
Multivector commutator(const Multivector& x, const Multivector& y);

Multivector grade_project(const Multivector& x, int k);
Multivector reverse(const Multivector& x);
Multivector grade_involution(const Multivector& x);
Multivector conjugate(const Multivector& x);

std::ostream& operator<<(std::ostream& os, const Multivector& x);

}  // namespace mvx
