#pragma once

#include <span>
#include <string>
#include <vector>

#include "kdvred/dual.hpp"
#include "kdvred/reduction.hpp"

namespace kdvred {

// The two bilinear families with periodic coefficients. Family One has window
// 2N+M and coefficient pattern (beta_m, -alpha); family Two has window 2M+N
// and pattern (beta'_m, +alpha). Constant-coefficient T-systems are the
// special case beta == b with alpha = -a (family One) or alpha = a (family Two).
enum class TauFamily { One, Two };

inline int tau_window(const ReductionSpec& s, TauFamily f) {
  return f == TauFamily::One ? 2 * s.N + s.M : 2 * s.M + s.N;
}

enum class UVariant { OneOdd, TwoOdd, OneEven, TwoEven };

inline bool variant_even(UVariant v) {
  return v == UVariant::OneEven || v == UVariant::TwoEven;
}
inline UVariant u_variant(const ReductionSpec& s, TauFamily f) {
  if (s.odd()) return f == TauFamily::One ? UVariant::OneOdd : UVariant::TwoOdd;
  return f == TauFamily::One ? UVariant::OneEven : UVariant::TwoEven;
}

namespace detail {
inline bool val_zero(const Rat& x) { return x.is_zero(); }
inline bool val_zero(const Dual& x) { return x.v.is_zero(); }
}  // namespace detail

// ---- single-step values; window spans the trailing D (resp. dim) entries ----

// New tau value tau_{m+D} from window (tau_m .. tau_{m+D-1}); m is the
// absolute index of window[0], used to pick the periodic coefficient.
Rat tau_step_value(const ReductionSpec& s, TauFamily f, std::span<const Rat> window, long m);
// tau_m from window (tau_{m+1} .. tau_{m+D}).
Rat tau_back_value(const ReductionSpec& s, TauFamily f, std::span<const Rat> window, long m);

template <class T>
T u_step_value(const ReductionSpec& s, UVariant v, std::span<const T> w, long m) {
  const int S = s.sum();
  const bool even = variant_even(v);
  const int dim = even ? S - 2 : S - 1;
  if (static_cast<int>(w.size()) != dim) throw BadParams("u window size");
  const bool family_two = v == UVariant::TwoOdd || v == UVariant::TwoEven;
  const T alpha{s.alpha};
  const T coeff{family_two ? s.beta_prime_at(m) : s.beta_at(m)};
  const int step = even ? 2 : 1;
  T win_all{Rat(1)};
  for (int j = 0; j <= dim - step; j += step) win_all = win_all * w[static_cast<size_t>(j)];
  T mid{Rat(1)};
  for (int j = s.M; j <= s.N - step; j += step) mid = mid * w[static_cast<size_t>(j)];
  if (detail::val_zero(win_all)) throw SingularStep("u window has zero entry");
  if (family_two) {
    if (detail::val_zero(mid)) throw SingularStep("u mid product zero");
    return (coeff * mid + alpha) / (win_all * mid);
  }
  return (coeff - alpha * mid) / win_all;
}

template <class T>
T u_back_value(const ReductionSpec& s, UVariant v, std::span<const T> w, long m) {
  // w = (u_{m+1} .. u_{m+dim}); returns u_m solving the relation at index m
  const int S = s.sum();
  const bool even = variant_even(v);
  const int dim = even ? S - 2 : S - 1;
  if (static_cast<int>(w.size()) != dim) throw BadParams("u window size");
  const bool family_two = v == UVariant::TwoOdd || v == UVariant::TwoEven;
  const T alpha{s.alpha};
  const T coeff{family_two ? s.beta_prime_at(m) : s.beta_at(m)};
  const int step = even ? 2 : 1;
  // relation: u_m * prod_{j=step,2step,..,dim} u_{m+j} = rhs(mid); offsets
  // shift by -1 into the window
  T rest{Rat(1)};
  for (int j = step; j <= dim; j += step) rest = rest * w[static_cast<size_t>(j - 1)];
  T mid{Rat(1)};
  for (int j = s.M; j <= s.N - step; j += step) mid = mid * w[static_cast<size_t>(j - 1)];
  if (detail::val_zero(rest)) throw SingularStep("u window has zero entry");
  if (family_two) {
    if (detail::val_zero(mid)) throw SingularStep("u mid product zero");
    return (coeff * mid + alpha) / (rest * mid);
  }
  return (coeff - alpha * mid) / rest;
}

template <class T>
T kdv_step_value(const ReductionSpec& s, std::span<const T> w) {
  if (static_cast<int>(w.size()) != s.sum()) throw BadParams("kdv window size");
  const T& vm = w[static_cast<size_t>(s.M)];
  const T& vn = w[static_cast<size_t>(s.N)];
  if (detail::val_zero(vm) || detail::val_zero(vn)) throw SingularStep("kdv step pole");
  T one{Rat(1)};
  return w[0] + T{s.alpha} * (one / vn - one / vm);
}

template <class T>
T kdv_back_value(const ReductionSpec& s, std::span<const T> w) {
  // w = (v_{m+1} .. v_{m+N+M}); returns v_m
  const int S = s.sum();
  if (static_cast<int>(w.size()) != S) throw BadParams("kdv window size");
  const T& vm = w[static_cast<size_t>(s.M - 1)];
  const T& vn = w[static_cast<size_t>(s.N - 1)];
  if (detail::val_zero(vm) || detail::val_zero(vn)) throw SingularStep("kdv back pole");
  T one{Rat(1)};
  return w[static_cast<size_t>(S - 1)] - T{s.alpha} * (one / vn - one / vm);
}

// w-system step (N, M both odd): solves the order-(N+M-1) relation for the
// top entry, which occurs linearly.
template <class T>
T w_step_value(const ReductionSpec& s, std::span<const T> w) {
  if (s.odd()) throw BadParity("w system needs N+M even");
  const int S = s.sum();
  if (static_cast<int>(w.size()) != S - 1) throw BadParams("w window size");
  const T alpha{s.alpha};
  // odd-offset product below the top: w_{m+1} w_{m+3} ... w_{m+S-3}
  T coeff{Rat(1)};
  for (int i = 1; i <= S - 3; i += 2) coeff = coeff * w[static_cast<size_t>(i)];
  if (detail::val_zero(coeff)) throw SingularStep("w leading coefficient zero");
  T evens{Rat(1)};
  for (int i = 0; i <= S - 2; i += 2) evens = evens * w[static_cast<size_t>(i)];
  T rhs1{Rat(1)};
  for (int i = 0; i <= (s.N - 3); i += 2) rhs1 = rhs1 * w[static_cast<size_t>(i + 1)];
  for (int i = 0; i <= (s.M - 3); i += 2) rhs1 = rhs1 * w[static_cast<size_t>(i + s.N + 1)];
  T rhs2{Rat(1)};
  for (int i = 0; i <= (s.M - 3); i += 2) rhs2 = rhs2 * w[static_cast<size_t>(i + 1)];
  for (int i = 0; i <= (s.N - 3); i += 2) rhs2 = rhs2 * w[static_cast<size_t>(i + s.M + 1)];
  return (evens + alpha * (rhs1 - rhs2)) / coeff;
}

template <class T>
T w_back_value(const ReductionSpec& s, std::span<const T> w) {
  // w = (w_{m+1} .. w_{m+S-1}); returns w_m, which occurs linearly in the
  // even-offset product of the relation at index m.
  if (s.odd()) throw BadParity("w system needs N+M even");
  const int S = s.sum();
  if (static_cast<int>(w.size()) != S - 1) throw BadParams("w window size");
  const T alpha{s.alpha};
  T coeff{Rat(1)};  // w_{m+2} w_{m+4} ... w_{m+S-2}
  for (int i = 2; i <= S - 2; i += 2) coeff = coeff * w[static_cast<size_t>(i - 1)];
  if (detail::val_zero(coeff)) throw SingularStep("w back coefficient zero");
  T odds{Rat(1)};  // w_{m+1} w_{m+3} ... w_{m+S-1}
  for (int i = 1; i <= S - 1; i += 2) odds = odds * w[static_cast<size_t>(i - 1)];
  T rhs1{Rat(1)};
  for (int i = 0; i <= (s.N - 3); i += 2) rhs1 = rhs1 * w[static_cast<size_t>(i)];
  for (int i = 0; i <= (s.M - 3); i += 2) rhs1 = rhs1 * w[static_cast<size_t>(i + s.N)];
  T rhs2{Rat(1)};
  for (int i = 0; i <= (s.M - 3); i += 2) rhs2 = rhs2 * w[static_cast<size_t>(i)];
  for (int i = 0; i <= (s.N - 3); i += 2) rhs2 = rhs2 * w[static_cast<size_t>(i + s.M)];
  return (odds - alpha * (rhs1 - rhs2)) / coeff;
}

// The conjugated map on g-coordinates: shift, with the two alpha/g_N
// corrections at slots N-M-1 and the tail.
template <class T>
std::vector<T> g_step(const ReductionSpec& s, std::span<const T> g) {
  const int S = s.sum();
  if (static_cast<int>(g.size()) != S) throw BadParams("g state size");
  const T& gn = g[static_cast<size_t>(s.N)];
  if (detail::val_zero(gn)) throw SingularStep("g step pole");
  T corr = T{s.alpha} / gn;
  std::vector<T> out;
  out.reserve(static_cast<size_t>(S));
  for (int i = 1; i < S; ++i) out.push_back(g[static_cast<size_t>(i)]);
  out[static_cast<size_t>(s.N - s.M - 1)] = out[static_cast<size_t>(s.N - s.M - 1)] - corr;
  out.push_back(g[0] + corr);
  return out;
}

template <class T>
std::vector<T> to_g(const ReductionSpec& s, std::span<const T> v) {
  const int S = s.sum();
  if (static_cast<int>(v.size()) != S) throw BadParams("v state size");
  std::vector<T> g(v.begin(), v.end());
  for (int i = 0; i <= s.N - s.M - 1; ++i) {
    const T& den = v[static_cast<size_t>(i + s.M)];
    if (detail::val_zero(den)) throw SingularStep("to_g pole");
    g[static_cast<size_t>(i)] = v[static_cast<size_t>(i)] - T{s.alpha} / den;
  }
  return g;
}

template <class T>
std::vector<T> from_g(const ReductionSpec& s, std::span<const T> g) {
  const int S = s.sum();
  if (static_cast<int>(g.size()) != S) throw BadParams("g state size");
  std::vector<T> v(g.begin(), g.end());
  for (int i = s.N - s.M - 1; i >= 0; --i) {
    const T& den = v[static_cast<size_t>(i + s.M)];
    if (detail::val_zero(den)) throw SingularStep("from_g pole");
    v[static_cast<size_t>(i)] = g[static_cast<size_t>(i)] + T{s.alpha} / den;
  }
  return v;
}

// Index map of the block permutation taking g to the dressed-chain variables:
// h_{a+1} = g_{eta[a]}. Requires N+M odd; always a bijection.
std::vector<int> eta_indices(const ReductionSpec& s);

template <class T>
std::vector<T> eta_permute(const ReductionSpec& s, std::span<const T> g) {
  auto idx = eta_indices(s);
  std::vector<T> h;
  h.reserve(idx.size());
  for (int i : idx) h.push_back(g[static_cast<size_t>(i)]);
  return h;
}

// ---- orbit histories ----

// Extends a history in place; values[i] is the entry with absolute index
// base + i. Throws SingularStep on a pole.
struct Orbit {
  ReductionSpec spec;
  StateKind kind = StateKind::V;
  TauFamily family = TauFamily::One;  // tau orbits
  UVariant variant = UVariant::OneOdd;  // u orbits
  long base = 0;
  std::vector<Rat> values;
  size_t max_history = 256;

  long next_index() const { return base + static_cast<long>(values.size()); }
  int window() const;
  void extend(size_t steps);
  void extend_back(size_t steps);
  Rat at(long abs_index) const;

 private:
  void step_once(std::span<const Rat> w, long m);
};

// ---- projections between orbit histories (monomial/ratio maps) ----

// tau history (starting at absolute index 0) to u/u'/v values; output[m] is
// the projected value at index m, as long as the history allows.
std::vector<Rat> project_tau(const ReductionSpec& s, StateKind to, std::span<const Rat> tau);

template <class T>
std::vector<T> project_u_to_v(const ReductionSpec& s, std::span<const T> u) {
  if (!s.odd()) throw BadParity("u->v projection is the odd-case map");
  std::vector<T> v;
  for (size_t m = 0; m + static_cast<size_t>(s.M) <= u.size(); ++m) {
    T p{Rat(1)};
    for (int j = 0; j < s.M; ++j) p = p * u[m + static_cast<size_t>(j)];
    v.push_back(std::move(p));
  }
  return v;
}

template <class T>
std::vector<T> project_uprime_to_v(const ReductionSpec& s, std::span<const T> u) {
  if (!s.odd()) throw BadParity("u'->v projection is the odd-case map");
  std::vector<T> v;
  for (size_t m = 0; m + static_cast<size_t>(s.N) <= u.size(); ++m) {
    T p{Rat(1)};
    for (int j = 0; j < s.N; ++j) p = p * u[m + static_cast<size_t>(j)];
    v.push_back(std::move(p));
  }
  return v;
}

template <class T>
std::vector<T> project_u_to_w(const ReductionSpec& s, std::span<const T> u, bool prime) {
  if (s.odd()) throw BadParity("u->w projection is the even-case map");
  int len = prime ? s.N : s.M;
  std::vector<T> w;
  for (size_t m = 0; m + static_cast<size_t>(len) <= u.size(); ++m) {
    T p{Rat(1)};
    for (int j = 0; j < len; ++j) p = p * u[m + static_cast<size_t>(j)];
    w.push_back(std::move(p));
  }
  return w;
}

template <class T>
std::vector<T> project_v_to_w(const ReductionSpec& s, std::span<const T> v) {
  if (s.odd()) throw BadParity("v->w projection is the even-case map");
  std::vector<T> w;
  for (size_t m = 0; m + 1 < v.size(); ++m) w.push_back(v[m] * v[m + 1]);
  return w;
}

// ---- full Poisson-map realizations of the projections on one window ----

// v-state (N+M entries) from a u-window (odd case): leading entries are the
// consecutive products, trailing entries use the recurrence with beta.
template <class T>
std::vector<T> v_state_from_u(const ReductionSpec& s, std::span<const T> u) {
  if (!s.odd()) throw BadParity("odd-case map");
  std::vector<T> v;
  for (int m = 0; m < s.N; ++m) {
    T p{Rat(1)};
    for (int j = 0; j < s.M; ++j) p = p * u[static_cast<size_t>(m + j)];
    v.push_back(std::move(p));
  }
  for (int k = 0; k < s.M; ++k) {
    T p{Rat(1)};
    for (int j = 0; j < s.N; ++j) p = p * u[static_cast<size_t>(k + j)];
    if (detail::val_zero(p) || detail::val_zero(v[static_cast<size_t>(k)]))
      throw SingularStep("v_state_from_u pole");
    v.push_back(T{s.beta_at(k)} / p - T{s.alpha} / v[static_cast<size_t>(k)]);
  }
  return v;
}

template <class T>
std::vector<T> v_state_from_uprime(const ReductionSpec& s, std::span<const T> u) {
  if (!s.odd()) throw BadParity("odd-case map");
  std::vector<T> v;
  for (int m = 0; m < s.M; ++m) {
    T p{Rat(1)};
    for (int j = 0; j < s.N; ++j) p = p * u[static_cast<size_t>(m + j)];
    v.push_back(std::move(p));
  }
  for (int k = 0; k < s.N; ++k) {
    T p{Rat(1)};
    for (int j = 0; j < s.M; ++j) p = p * u[static_cast<size_t>(k + j)];
    if (detail::val_zero(p) || detail::val_zero(v[static_cast<size_t>(k)]))
      throw SingularStep("v_state_from_uprime pole");
    v.push_back(T{s.beta_prime_at(k)} / p + T{s.alpha} / v[static_cast<size_t>(k)]);
  }
  return v;
}

// ---- periodic coefficient recovery ----

// Recovers beta (variant One, period M) or beta' (variant Two, period N)
// from a u history; throws PeriodicityViolation if the recovered sequence is
// not periodic along the orbit.
std::vector<Rat> periodic_coefficients(const ReductionSpec& s, UVariant v,
                                       std::span<const Rat> u);

// ---- cross-consistency report ----

struct ConsistencyReport {
  bool pass = true;
  std::vector<std::string> failures;
  void fail(std::string what) {
    pass = false;
    failures.push_back(std::move(what));
  }
};

// Generates a random regular tau orbit for each family and verifies the
// equivalence web: bilinear relations, u/u' systems, the KdV reduction, the
// w-system (even case), the monomial identities and the inter-variable
// ratio relations, all by exact equality over the requested number of steps.
ConsistencyReport consistency_check(const ReductionSpec& s, uint64_t seed, int steps = 20);

}  // namespace kdvred
