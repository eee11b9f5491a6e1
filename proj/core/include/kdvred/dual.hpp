#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kdvred/rational.hpp"

namespace kdvred {

// Forward-mode derivative scalar: an exact value together with its gradient.
// An empty gradient means "constant"; it combines with operands of any
// gradient dimension, so literals never need explicit lifting.
class Dual {
 public:
  Rat v;
  std::vector<Rat> g;

  Dual() = default;
  Dual(Rat value) : v(std::move(value)) {}
  Dual(int value) : v(value) {}
  Dual(Rat value, std::vector<Rat> grad) : v(std::move(value)), g(std::move(grad)) {}

  static Dual variable(Rat value, size_t index, size_t nvars) {
    std::vector<Rat> grad(nvars);
    grad[index] = Rat(1);
    return Dual(std::move(value), std::move(grad));
  }

  bool is_zero() const {
    if (!v.is_zero()) return false;
    for (const auto& x : g)
      if (!x.is_zero()) return false;
    return true;
  }

  Rat partial(size_t i) const { return i < g.size() ? g[i] : Rat(0); }

  Dual operator-() const {
    Dual r(-v);
    r.g.reserve(g.size());
    for (const auto& x : g) r.g.push_back(-x);
    return r;
  }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.v + b.v);
    r.g.resize(std::max(a.g.size(), b.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i) r.g[i] = a.partial(i) + b.partial(i);
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) { return a + (-b); }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.v * b.v);
    r.g.resize(std::max(a.g.size(), b.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i)
      r.g[i] = a.v * b.partial(i) + b.v * a.partial(i);
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    if (b.v.is_zero()) throw SingularPoint("dual division by zero");
    Rat q = a.v / b.v;
    Dual r(q);
    r.g.resize(std::max(a.g.size(), b.g.size()));
    for (size_t i = 0; i < r.g.size(); ++i)
      r.g[i] = (a.partial(i) - q * b.partial(i)) / b.v;
    return r;
  }

  Dual& operator+=(const Dual& o) { *this = *this + o; return *this; }
  Dual& operator-=(const Dual& o) { *this = *this - o; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend bool operator==(const Dual& a, const Dual& b) {
    if (a.v != b.v) return false;
    size_t n = std::max(a.g.size(), b.g.size());
    for (size_t i = 0; i < n; ++i)
      if (a.partial(i) != b.partial(i)) return false;
    return true;
  }

  Dual pow(long e) const {
    if (e == 0) return Dual(Rat(1));
    Dual base = e > 0 ? *this : Dual(Rat(1)) / *this;
    long k = e > 0 ? e : -e;
    Dual r = base;
    for (long i = 1; i < k; ++i) r = r * base;
    return r;
  }
};

using DualFn = std::function<Dual(std::span<const Dual>)>;

// Seeds one dual variable per point coordinate and evaluates; the result
// carries the exact value and all first partials.
inline Dual eval_with_partials(const DualFn& program, std::span<const Rat> point) {
  std::vector<Dual> xs;
  xs.reserve(point.size());
  for (size_t i = 0; i < point.size(); ++i)
    xs.push_back(Dual::variable(point[i], i, point.size()));
  return program(xs);
}

inline std::vector<Dual> dual_vars(std::span<const Rat> point) {
  std::vector<Dual> xs;
  xs.reserve(point.size());
  for (size_t i = 0; i < point.size(); ++i)
    xs.push_back(Dual::variable(point[i], i, point.size()));
  return xs;
}

}  // namespace kdvred
