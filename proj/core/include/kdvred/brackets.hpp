#pragma once

#include <span>
#include <string>
#include <vector>

#include "kdvred/dual.hpp"
#include "kdvred/matrix.hpp"
#include "kdvred/reduction.hpp"
#include "kdvred/ucoeffs.hpp"

namespace kdvred {

enum class BracketFamily {
  ULog,      // {x_i,x_j} = a_{j-i} x_i x_j
  Kdv1,      // c_{j-i} x_i x_j, +c_N alpha at offset N
  Kdv2,      // d_{j-i} x_i x_j, +d_M(-alpha)^k prod^{-2} at offsets kM
  Kdv3,      // difference bracket: corrections only
  G3,        // -alpha at offset M, +alpha at offset N
  Dressing,  // -1 at offset 1, +1 at offset K-1
  W1_53,     // the 7-dimensional first bracket of the (5,3) example
  W2_53,     // the 7-dimensional second bracket of the (5,3) example
};

std::string family_label(BracketFamily f);

// One weighted term; a full bracket is a sum of terms so that pencils and
// difference brackets evaluate through a single path.
struct BracketTerm {
  BracketFamily family;
  Rat weight = Rat(1);
  std::vector<Rat> coeff;  // a_k / c_k / d_k indexed by offset; unused slots 0
};

struct BracketSpec {
  std::string name;
  int dim = 0;
  int N = 0, M = 0;
  Rat alpha;
  std::vector<BracketTerm> terms;
  bool outside_hypotheses = false;  // informational flag (M = 1 closed forms)

  BracketSpec scaled(const Rat& s) const {
    BracketSpec r = *this;
    for (auto& t : r.terms) t.weight *= s;
    r.name = "(" + s.str() + ")*" + name;
    return r;
  }

  static BracketSpec u_log(const ReductionSpec& s, const UCoefficients& a);
  static BracketSpec u_log_custom(const ReductionSpec& s, std::vector<Rat> a,
                                  std::string name);
  static BracketSpec kdv1(const ReductionSpec& s);
  static BracketSpec kdv2(const ReductionSpec& s);
  static BracketSpec kdv3(const ReductionSpec& s);
  static BracketSpec kdv1_custom(const ReductionSpec& s, std::vector<Rat> c,
                                 std::string name);
  static BracketSpec kdv2_custom(const ReductionSpec& s, std::vector<Rat> d,
                                 std::string name);
  static BracketSpec g3(const ReductionSpec& s);
  static BracketSpec dressing(int K);
  static BracketSpec w1_53(const Rat& alpha);
  static BracketSpec w2_53(const Rat& alpha);
  static BracketSpec w3_53(const Rat& alpha);  // w1 - w2
  static BracketSpec pencil(const BracketSpec& s1, const BracketSpec& s2,
                            const Rat& w1, const Rat& w2);
};

namespace detail {

template <class T>
T term_entry(const BracketTerm& t, int N, int M, int dim, const Rat& alpha, int i,
             int j, std::span<const T> x) {
  const int k = j - i;
  auto coeff = [&](int idx) -> Rat {
    if (idx <= 0 || idx >= static_cast<int>(t.coeff.size())) return Rat(0);
    return t.coeff[static_cast<size_t>(idx)];
  };
  T r{Rat(0)};
  switch (t.family) {
    case BracketFamily::ULog:
      r = T{coeff(k)} * x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
      break;
    case BracketFamily::Kdv1: {
      r = T{coeff(k)} * x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
      if (k == N) r = r + T{coeff(N) * alpha};
      break;
    }
    case BracketFamily::Kdv2: {
      r = T{coeff(k)} * x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
      if (k % M == 0) {
        int kk = k / M;
        T corr{coeff(M) * alpha.pow(kk) * Rat(kk % 2 == 0 ? 1 : -1)};
        for (int l = 1; l < kk; ++l) {
          const T& den = x[static_cast<size_t>(i + l * M)];
          corr = corr / (den * den);
        }
        r = r + corr;
      }
      break;
    }
    case BracketFamily::Kdv3: {
      if (k % M == 0) {
        int kk = k / M;
        T corr{alpha.pow(kk) * Rat(kk % 2 == 0 ? 1 : -1)};
        for (int l = 1; l < kk; ++l) {
          const T& den = x[static_cast<size_t>(i + l * M)];
          corr = corr / (den * den);
        }
        r = r + corr;
      }
      if (k == N) r = r + T{alpha};
      break;
    }
    case BracketFamily::G3: {
      if (k == M) r = r + T{-alpha};
      if (k == N) r = r + T{alpha};
      break;
    }
    case BracketFamily::Dressing: {
      // dim = K; -1 at neighbours, +1 across the cycle seam
      if (k == 1) r = T{Rat(-1)};
      if (k == dim - 1) r = r + T{Rat(1)};
      break;
    }
    case BracketFamily::W1_53: {
      const auto& w = x;
      auto W = [&](int off) -> const T& { return w[static_cast<size_t>(i + off)]; };
      T two{Rat(2)}, al{alpha};
      switch (k) {
        case 1: r = W(0) * W(1); break;
        case 2: r = two * W(0) * W(2); break;
        case 3: r = two * W(0) * W(3); break;
        case 4: r = T{Rat(0)} - al * W(1) * W(3) / W(2); break;
        case 5:
          r = T{Rat(0)} - two * W(0) * W(5) -
              al * (W(0) * W(2) * W(4) / (W(1) * W(3)) + W(1) * W(3) * W(5) / (W(2) * W(4)));
          break;
        case 6:
          r = T{Rat(0)} - two * W(0) * W(6) -
              al * (W(0) * W(2) * W(4) * W(6) / (W(1) * W(3) * W(5)));
          break;
        default: break;
      }
      break;
    }
    case BracketFamily::W2_53: {
      const auto& w = x;
      auto W = [&](int off) -> const T& { return w[static_cast<size_t>(i + off)]; };
      T two{Rat(2)}, al{alpha}, al2{alpha * alpha};
      switch (k) {
        case 1: r = W(0) * W(1); break;
        case 2: r = two * W(0) * W(2) - al * W(1); break;
        case 3:
          r = two * W(0) * W(3) - al * (W(0) * W(2) / W(1) + W(1) * W(3) / W(2));
          break;
        case 4: r = T{Rat(0)} - al * W(0) * W(2) * W(4) / (W(1) * W(3)); break;
        case 5:
          r = T{Rat(0)} - two * W(0) * W(5) + al2 * W(1) * W(4) / (W(2) * W(3));
          break;
        case 6:
          r = T{Rat(0)} - two * W(0) * W(6) +
              al2 * (W(0) * W(2) * W(5) / (W(1) * W(3) * W(4)) +
                     W(1) * W(4) * W(6) / (W(2) * W(3) * W(5)));
          break;
        default: break;
      }
      break;
    }
  }
  return r;
}

}  // namespace detail

// Bracket value {x_i, x_j} for i < j at a point; antisymmetric extension is
// the caller's concern (bracket_table handles it).
template <class T>
T bracket_entry(const BracketSpec& b, int i, int j, std::span<const T> x) {
  T r{Rat(0)};
  for (const auto& t : b.terms)
    r = r + T{t.weight} * detail::term_entry<T>(t, b.N, b.M, b.dim, b.alpha, i, j, x);
  return r;
}

// Full skew table of bracket values at a point.
template <class T>
std::vector<std::vector<T>> bracket_table(const BracketSpec& b, std::span<const T> x) {
  const int n = b.dim;
  std::vector<std::vector<T>> e(static_cast<size_t>(n),
                                std::vector<T>(static_cast<size_t>(n), T{Rat(0)}));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      e[static_cast<size_t>(i)][static_cast<size_t>(j)] = bracket_entry<T>(b, i, j, x);
      e[static_cast<size_t>(j)][static_cast<size_t>(i)] =
          -e[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
  return e;
}

// Matrix of pairwise bracket values at a rational point.
RatMat bracket_matrix(const BracketSpec& b, std::span<const Rat> point);

}  // namespace kdvred
