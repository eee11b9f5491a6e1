#pragma once

#include <cstdint>
#include <vector>

#include "kdvred/rational.hpp"

namespace kdvred {

// splitmix64; self-contained so streams are identical across toolchains.
class Rng {
 public:
  explicit Rng(uint64_t seed) : s_(seed) {}
  uint64_t next() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  uint64_t below(uint64_t n) { return next() % n; }

 private:
  uint64_t s_;
};

// Sample points with numerators in [-9,9]\{0} and denominators in [1,9].
class RatSampler {
 public:
  explicit RatSampler(uint64_t seed) : rng_(seed) {}

  Rat rational() {
    long n = static_cast<long>(rng_.below(18)) - 9;  // [-9,8]
    if (n >= 0) ++n;                                 // skip 0 -> [-9,9]\{0}
    long d = static_cast<long>(rng_.below(9)) + 1;
    return Rat(n, d);
  }

  std::vector<Rat> point(size_t n) {
    std::vector<Rat> p(n);
    for (auto& x : p) x = rational();
    return p;
  }

 private:
  Rng rng_;
};

}  // namespace kdvred
