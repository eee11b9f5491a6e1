#pragma once

#include <span>
#include <vector>

#include "kdvred/checks.hpp"
#include "kdvred/poly.hpp"
#include "kdvred/reduction.hpp"

#include <json.hpp>

namespace kdvred {

template <class T>
struct PolyMat2 {
  Poly<T> e[2][2];

  static PolyMat2 identity() {
    PolyMat2 m;
    m.e[0][0] = Poly<T>::constant(T{Rat(1)});
    m.e[1][1] = Poly<T>::constant(T{Rat(1)});
    return m;
  }

  friend PolyMat2 operator*(const PolyMat2& a, const PolyMat2& b) {
    PolyMat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.e[i][j] = a.e[i][0] * b.e[0][j] + a.e[i][1] * b.e[1][j];
    return r;
  }
  friend bool operator==(const PolyMat2& a, const PolyMat2& b) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (!(a.e[i][j] == b.e[i][j])) return false;
    return true;
  }

  Poly<T> trace() const { return e[0][0] + e[1][1]; }
  Poly<T> det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
  PolyMat2 neg_lambda() const {
    PolyMat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.e[i][j] = e[i][j].neg_lambda();
    return r;
  }
};

// [[v - alpha/w, lambda], [1, 0]]
template <class T>
PolyMat2<T> lax_L(const T& v, const T& w, const Rat& alpha) {
  PolyMat2<T> m;
  m.e[0][0] = Poly<T>::constant(v - T{alpha} / w);
  m.e[0][1] = Poly<T>::linear(T{Rat(0)}, T{Rat(1)});
  m.e[1][0] = Poly<T>::constant(T{Rat(1)});
  return m;
}

// [[v, lambda], [1, alpha/v]]
template <class T>
PolyMat2<T> lax_M(const T& v, const Rat& alpha) {
  PolyMat2<T> m;
  m.e[0][0] = Poly<T>::constant(v);
  m.e[0][1] = Poly<T>::linear(T{Rat(0)}, T{Rat(1)});
  m.e[1][0] = Poly<T>::constant(T{Rat(1)});
  m.e[1][1] = Poly<T>::constant(T{alpha} / v);
  return m;
}

// [[g, lambda - shift], [1, 0]]
template <class T>
PolyMat2<T> lax_Ltilde(const T& g, const T& shift) {
  PolyMat2<T> m;
  m.e[0][0] = Poly<T>::constant(g);
  m.e[0][1] = Poly<T>(std::vector<T>{-shift, T{Rat(1)}});
  m.e[1][0] = Poly<T>::constant(T{Rat(1)});
  return m;
}

inline std::vector<int> residue_steps(int N, int M) {
  std::vector<int> r(static_cast<size_t>(M) + 1);
  for (int k = 0; k <= M; ++k) r[static_cast<size_t>(k)] = (k * N) % M;
  return r;
}

// Ordered product of M-blocks: each block is M(v_{r_i+N}) followed by the
// chain of L factors descending by M down to index r_{i+1}.
template <class T>
PolyMat2<T> monodromy_v(const ReductionSpec& s, std::span<const T> v) {
  if (static_cast<int>(v.size()) != s.sum()) throw BadParams("monodromy needs a full v state");
  auto r = residue_steps(s.N, s.M);
  auto P = PolyMat2<T>::identity();
  for (int i = 0; i < s.M; ++i) {
    P = P * lax_M<T>(v[static_cast<size_t>(r[static_cast<size_t>(i)] + s.N)], s.alpha);
    for (int j = r[static_cast<size_t>(i)] + s.N - s.M; j >= r[static_cast<size_t>(i + 1)]; j -= s.M)
      P = P * lax_L<T>(v[static_cast<size_t>(j)], v[static_cast<size_t>(j + s.M)], s.alpha);
  }
  return P;
}

// Same product in g-coordinates: every factor is triangular-free Ltilde, with
// spectral shift alpha exactly at the block heads.
template <class T>
PolyMat2<T> monodromy_g(const ReductionSpec& s, std::span<const T> g) {
  if (static_cast<int>(g.size()) != s.sum()) throw BadParams("monodromy needs a full g state");
  auto r = residue_steps(s.N, s.M);
  auto P = PolyMat2<T>::identity();
  for (int i = 0; i < s.M; ++i) {
    P = P * lax_Ltilde<T>(g[static_cast<size_t>(r[static_cast<size_t>(i)] + s.N)], T{s.alpha});
    for (int j = r[static_cast<size_t>(i)] + s.N - s.M; j >= r[static_cast<size_t>(i + 1)]; j -= s.M)
      P = P * lax_Ltilde<T>(g[static_cast<size_t>(j)], T{Rat(0)});
  }
  return P;
}

// Periodic dressing-chain data: K odd sites with shift parameters b_i.
struct DressingSpec {
  int K = 0;
  std::vector<Rat> b;  // b[i], 0-based for site i+1
};

// K(lambda) = Ltilde(h_K, zeta_K) ... Ltilde(h_1, zeta_1), zeta_i = b_i - lambda.
template <class T>
PolyMat2<T> dressing_monodromy(const DressingSpec& d, std::span<const T> h) {
  if (static_cast<int>(h.size()) != d.K || static_cast<int>(d.b.size()) != d.K)
    throw BadParams("dressing size mismatch");
  auto P = PolyMat2<T>::identity();
  for (int a = d.K - 1; a >= 0; --a) {
    PolyMat2<T> f;
    f.e[0][0] = Poly<T>::constant(h[static_cast<size_t>(a)]);
    f.e[0][1] = Poly<T>(std::vector<T>{T{d.b[static_cast<size_t>(a)]}, T{Rat(-1)}});
    f.e[1][0] = Poly<T>::constant(T{Rat(1)});
    P = P * f;
  }
  return P;
}

// Expands the trace as a sum over matchings of the K-cycle: each matched edge
// (i, i+1) contributes zeta_{i+1} and removes both h factors.
RatPoly trace_formula_eval(const DressingSpec& d, std::span<const Rat> h);

// b-assignment of the dressed slots: -alpha where the permuted variable came
// from a g index >= N, zero elsewhere.
DressingSpec dressing_from_reduction(const ReductionSpec& s);

struct MonodromyResult {
  PolyMat2<Rat> m;
  RatPoly trace;
  RatPoly det;
};

MonodromyResult monodromy_result(const ReductionSpec& s, std::span<const Rat> v);

nlohmann::json monodromy_to_json(const MonodromyResult& r);

// ---- certificates ----

// L(v_0, v_M) M(v_N) == M(v_{N+M}) L(v_N, v_{N+M}) on a window extended one step.
Certificate zero_curvature_check(const ReductionSpec& s, int samples, uint64_t seed);

// M_m Lax-conjugator identity along an orbit; the conjugator is the product
// of the first N^{-1} mod M blocks of the monodromy.
Certificate lax_equation_check(const ReductionSpec& s, int samples, uint64_t seed);

// Degree/monicity structure of the entries for odd N+M.
Certificate structure_check(const ReductionSpec& s, int samples, uint64_t seed);

// M(lambda) == K(-lambda) under the block permutation and b-assignment.
Certificate dressing_match_check(const ReductionSpec& s, int samples, uint64_t seed);

// tr K(lambda) from the matching expansion equals the product trace.
Certificate trace_formula_check(int K, int samples, uint64_t seed);

// The quadratic relations satisfied by P, Q, R, S under the second bracket,
// verified at sampled spectral values lambda != nu.
Certificate quadratic_algebra_check(const ReductionSpec& s, int samples, uint64_t seed);

// (Pi_2 + (lambda/alpha) Pi_3)# d tr M(lambda) == 0 at sampled lambda.
Certificate bivector_kernel_check(const ReductionSpec& s, int samples, uint64_t seed);

// Trace coefficients conserved along orbit steps; also checks the det closed
// form (alpha - lambda)^M (-lambda)^N and, for odd sums, deg tr = (N+M-1)/2.
Certificate spectral_invariance_check(const ReductionSpec& s, int steps, int samples,
                                      uint64_t seed);

// ---- first integrals ----

// Coefficients of tr M(lambda) as dual functions of the v state.
std::vector<Dual> trace_integrals_v(const ReductionSpec& s, std::span<const Dual> v);

// The (5,3) integrals as functions on w-space through the section
// v_0 = t, v_{i+1} = w_i / v_i; independent of t.
std::vector<Dual> trace_integrals_w53(const ReductionSpec& s, std::span<const Dual> w,
                                      const Rat& t);

// Casimir closed forms of the (5,3) example.
Dual casimir1_53(const Rat& alpha, std::span<const Dual> w);
Dual casimir2_53(const Rat& alpha, std::span<const Dual> w);

}  // namespace kdvred
