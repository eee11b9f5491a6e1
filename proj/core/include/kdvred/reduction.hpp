#pragma once

#include <numeric>
#include <vector>

#include "kdvred/errors.hpp"
#include "kdvred/rational.hpp"

namespace kdvred {

// One problem instance: wave numbers (N, M), the lattice parameter alpha and
// the periodic coefficient sequences (period M and period N respectively).
struct ReductionSpec {
  int N = 0;
  int M = 0;
  Rat alpha;
  std::vector<Rat> beta;        // period M
  std::vector<Rat> beta_prime;  // period N

  ReductionSpec() = default;
  ReductionSpec(int n, int m, Rat a) : N(n), M(m), alpha(std::move(a)) {
    validate();
    beta.assign(static_cast<size_t>(M), Rat(1));
    beta_prime.assign(static_cast<size_t>(N), Rat(1));
  }
  ReductionSpec(int n, int m, Rat a, std::vector<Rat> b, std::vector<Rat> bp)
      : N(n), M(m), alpha(std::move(a)), beta(std::move(b)), beta_prime(std::move(bp)) {
    validate();
    if (beta.size() != static_cast<size_t>(M))
      throw BadParams("beta must have length M");
    if (beta_prime.size() != static_cast<size_t>(N))
      throw BadParams("beta_prime must have length N");
  }

  bool odd() const { return (N + M) % 2 == 1; }
  int sum() const { return N + M; }

  const Rat& beta_at(long m) const {
    long r = m % M;
    if (r < 0) r += M;
    return beta[static_cast<size_t>(r)];
  }
  const Rat& beta_prime_at(long m) const {
    long r = m % N;
    if (r < 0) r += N;
    return beta_prime[static_cast<size_t>(r)];
  }

  void validate() const {
    if (M < 1 || N <= M) throw BadParams("require N > M >= 1");
    if (std::gcd(N, M) != 1) throw BadParams("require gcd(N, M) = 1");
  }
};

enum class StateKind { Tau, U, UPrime, V, W, G, H };

inline const char* kind_name(StateKind k) {
  switch (k) {
    case StateKind::Tau: return "tau";
    case StateKind::U: return "u";
    case StateKind::UPrime: return "uprime";
    case StateKind::V: return "v";
    case StateKind::W: return "w";
    case StateKind::G: return "g";
    case StateKind::H: return "h";
  }
  return "?";
}

struct State {
  StateKind kind = StateKind::V;
  std::vector<Rat> x;
};

// State dimension per kind (tau depends on the bilinear family and is handled
// by the orbit types).
inline int state_dim(const ReductionSpec& s, StateKind k) {
  switch (k) {
    case StateKind::U:
    case StateKind::UPrime:
      return s.odd() ? s.sum() - 1 : s.sum() - 2;
    case StateKind::W:
      return s.sum() - 1;
    case StateKind::V:
    case StateKind::G:
    case StateKind::H:
      return s.sum();
    case StateKind::Tau:
      throw BadParams("tau dimension depends on the bilinear family");
  }
  return 0;
}

}  // namespace kdvred
