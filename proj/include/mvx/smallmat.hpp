#pragma once

#include <vector>

namespace mvx {

// Row-major n x n helpers for the small dense matrices this library deals
// in (n <= 10). Throws SingularError from the inverse when the pivot chain
// collapses.
namespace smallmat {

// LU with partial pivoting; returns det and writes inv when inv != nullptr.
double det_inverse(int n, const std::vector<double>& m,
                   std::vector<double>* inv);

// Cyclic Jacobi eigensolver for symmetric m: eigenvalues (descending) and
// column eigenvectors. Deterministic sweep order, ties keep sweep order.
void sym_eigen(int n, const std::vector<double>& m,
               std::vector<double>& eigenvalues,
               std::vector<double>& eigenvectors);

}  // namespace smallmat
}  // namespace mvx
