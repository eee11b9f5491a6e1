#pragma once

#include <string>
#include <vector>

#include "kdvred/checks.hpp"
#include "kdvred/reduction.hpp"

namespace kdvred {

struct SuiteConfig {
  int N = 4, M = 3;
  Rat alpha = Rat(1);
  std::vector<Rat> beta;        // empty: sampled from the seed
  std::vector<Rat> beta_prime;  // empty: sampled from the seed
  uint64_t seed = 1;
  int samples = 5;
  int steps = 10;
  std::string suite = "all";  // cluster | poisson | lax | dressing | even53 | all
};

struct SuiteReport {
  std::vector<Certificate> certs;
  bool pass() const {
    for (const auto& c : certs)
      if (!c.pass) return false;
    return true;
  }
};

ReductionSpec spec_from_config(const SuiteConfig& cfg);

SuiteReport run_suite(const SuiteConfig& cfg);

// Rank / nullspace / row-structure sweep over all coprime N > M with
// N+M <= max_sum; coefficient-consistency sweep capped at odd sums <= 15.
SuiteReport run_sweep(int max_sum);

// Involution over a function family computed in one pass.
using VecFn = std::function<std::vector<Dual>(std::span<const Dual>)>;
Certificate involution_check_vec(const VecFn& fns, const BracketSpec& b, int samples,
                                 uint64_t seed, const std::string& label);

}  // namespace kdvred
