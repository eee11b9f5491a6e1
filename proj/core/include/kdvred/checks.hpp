#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kdvred/brackets.hpp"
#include "kdvred/dual.hpp"
#include "kdvred/matrix.hpp"
#include "kdvred/rng.hpp"

#include <json.hpp>

namespace kdvred {

// Machine-checkable outcome of one verification. `anchor` is the relation
// tag the check certifies, carried through to the JSON output.
struct Certificate {
  std::string check;
  std::string family;
  std::string anchor;
  int N = 0, M = 0;
  uint64_t seed = 0;
  int points = 0;
  bool pass = false;
  nlohmann::json witness;

  nlohmann::json to_json() const;
};

using StateMap = std::function<std::vector<Dual>(std::span<const Dual>)>;
using ScalarFn = std::function<Dual(std::span<const Dual>)>;

// Samples a point with all coordinates nonzero, retrying the functional on
// SingularPoint up to `retries` times.
std::vector<Rat> sample_regular_point(RatSampler& sampler, size_t dim);

// Jacobi identity: cyclic sum over all coordinate triples, exact.
Certificate jacobi_check(const BracketSpec& b, int samples, uint64_t seed);

// Jacobi identity for the pointwise linear combination w1*s1 + w2*s2.
Certificate pencil_check(const BracketSpec& s1, const BracketSpec& s2, const Rat& w1,
                         const Rat& w2, int samples, uint64_t seed);

// {F_i, F_j}_src(x) == {y_i, y_j}_dst(F(x)) for all pairs, exact chain rule.
Certificate poisson_map_check(const StateMap& map, const BracketSpec& src,
                              const BracketSpec& dst, int samples, uint64_t seed);

// Rank of the bracket matrix at one sampled (regular) point.
int bracket_rank(const BracketSpec& b, std::span<const Rat> point);
Certificate bracket_rank_check(const BracketSpec& b, int expected, int samples,
                               uint64_t seed);

// {f, x_i} == 0 for every coordinate.
Certificate casimir_check(const ScalarFn& f, const BracketSpec& b, int samples,
                          uint64_t seed, const std::string& label);

// {f_p, f_q} == 0 for all pairs of the given functions.
Certificate involution_check(const std::vector<ScalarFn>& fns, const BracketSpec& b,
                             int samples, uint64_t seed, const std::string& label);

// Jacobian rank of the given functions at a point.
int independence_check(const std::vector<ScalarFn>& fns, std::span<const Rat> point);

// Poisson bracket of two dual-evaluated functions through a bracket table.
Rat poisson_pairing(const Dual& f, const Dual& g,
                    const std::vector<std::vector<Rat>>& table);

// Bracket table evaluated at a rational point (values only).
std::vector<std::vector<Rat>> bracket_values(const BracketSpec& b,
                                             std::span<const Rat> point);

}  // namespace kdvred
