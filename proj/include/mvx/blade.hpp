#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace mvx {

// Basis blades of the canonical algebra are indexed by bitmask: bit mu set
// means the basis vector b_{mu+1} is a factor. The canonical blade carries
// its factors in increasing index order with coefficient +1.
using blade_t = std::uint32_t;

constexpr int kMaxDim = 10;

inline int grade_of(blade_t m) { return std::popcount(m); }

// Sign picked up when concatenating canonical blades a and b and bubbling
// the factors back into increasing order. Valid for the orthonormal
// (Euclidean) fiducial frame; the blade of the product is a ^ b.
inline int reorder_sign(blade_t a, blade_t b) {
  a >>= 1;
  int swaps = 0;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

inline int reverse_sign(int k) { return (k * (k - 1) / 2) % 2 ? -1 : 1; }
inline int ginv_sign(int k) { return (k % 2) ? -1 : 1; }
inline int conj_sign(int k) { return (k * (k + 1) / 2) % 2 ? -1 : 1; }

// "e13", "e2", or "s" for the scalar blade (used by parsers and printers).
std::string blade_name(blade_t m);

}  // namespace mvx
