#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kdvred/rational.hpp"

namespace kdvred {

// Log-canonical bracket coefficients a_k for a U-system, indexed k = 0..dim-1
// with a_0 = 0 and the convention a_{-k} = -a_k. Normalized so the
// lowest-index nonzero entry is +1.
struct UCoefficients {
  int N = 0, M = 0;
  std::vector<Rat> a;  // a[k], k = 0 .. (odd ? N+M-2 : N+M-3)

  Rat at(long k) const {
    if (k == 0) return Rat(0);
    bool neg = k < 0;
    size_t i = static_cast<size_t>(neg ? -k : k);
    if (i >= a.size() + 1) return Rat(0);
    Rat v = i < a.size() ? a[i] : Rat(0);
    return neg ? -v : v;
  }
};

// Assembles and solves the homogeneous constraint systems for the a_k;
// throws DimensionFailure when the nullspace dimension is not 1.
UCoefficients solve_u_coefficients(int N, int M);

// The raw window-bracket equations (both parities), used directly for the
// even M = 1 case and as a cross-check on the condensed relation lists.
std::vector<std::vector<Rat>> raw_window_equations(int N, int M);

// c_k = (-1)^{h_k}, h_k = k M^{-1} mod (N+M); index 0 unused. Odd N+M only.
std::vector<Rat> kdv_coefficients(int N, int M);

// h_k exponents themselves (diagnostic).
std::vector<long> h_exponents(int N, int M);

// The double-sum coefficients (c_m, d_m) lifted from a U-coefficient vector;
// both satisfy c_m = -c_{N+M-m} = -c_{m-N} = -c_{m-M} and are proportional to
// kdv_coefficients by one global constant. Odd N+M only.
std::pair<std::vector<Rat>, std::vector<Rat>> cd_from_a(int N, int M,
                                                        const UCoefficients& a);

// The global constant relating cd_from_a output to kdv_coefficients.
Rat coefficient_scale(int N, int M, const UCoefficients& a);

// Diagnostic index tableau (columns r, k with k = 2Mr mod (N+M)).
std::string index_tableau(int N, int M);

}  // namespace kdvred
