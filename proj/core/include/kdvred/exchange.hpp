#pragma once

#include <string>
#include <vector>

#include "kdvred/matrix.hpp"

#include <json.hpp>

namespace kdvred {

enum class Family { T1, T2 };

inline const char* family_name(Family f) { return f == Family::T1 ? "t1" : "t2"; }

// Exchange matrix of the period-1 mutation-periodic quiver attached to one of
// the two bilinear families; size 2N+M for T1 and 2M+N for T2.
struct ExchangeMatrix {
  Family family = Family::T2;
  int N = 0, M = 0;
  IntMat B;

  int size() const { return static_cast<int>(B.rows()); }
};

ExchangeMatrix build_exchange(Family family, int N, int M);

// Matrix mutation at vertex j (0-based).
IntMat mutate(const IntMat& b, int j);

// True iff mutating at the first vertex equals relabelling every index one
// step around the cycle.
bool period_one_check(const ExchangeMatrix& em);

struct PalindromicBasis {
  std::vector<std::vector<mpz_class>> w;  // w[0] is the seed, successive shifts
  size_t count() const { return w.size(); }
};

// Shift-generated integer basis of im B, seed normalized with leading +1.
PalindromicBasis palindromic_basis(const ExchangeMatrix& em);

// The unique skew integer matrix Bhat with W Bhat W^T = B.
IntMat reduced_exchange(const ExchangeMatrix& em, const PalindromicBasis& basis);

// Verifies that every row of B expands in the palindromic basis as the
// expected combination pattern (shifts of v, v', v'' and the reversed block).
bool row_structure_check(const ExchangeMatrix& em);

nlohmann::json exchange_to_json(const ExchangeMatrix& em);
nlohmann::json intmat_to_json(Family family, int N, int M, const IntMat& m);

}  // namespace kdvred
