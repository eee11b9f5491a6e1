#pragma once

#include <vector>

#include "kdvred/dual.hpp"
#include "kdvred/rational.hpp"

namespace kdvred {

namespace detail {
inline bool scalar_is_zero(const Rat& x) { return x.is_zero(); }
inline bool scalar_is_zero(const Dual& x) { return x.is_zero(); }
}  // namespace detail

// Univariate polynomial in the spectral parameter, lowest degree first,
// trailing zeros trimmed. The zero polynomial has no coefficients.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(T x) { return Poly(std::vector<T>{std::move(x)}); }
  // lambda - shift
  static Poly linear(T shift_neg, T lead) {
    return Poly(std::vector<T>{std::move(shift_neg), std::move(lead)});
  }

  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }

  T at(size_t k) const { return k < c_.size() ? c_[k] : T(); }
  T leading() const { return c_.empty() ? T() : c_.back(); }

  T eval(const T& x) const {
    T r{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  Poly neg_lambda() const {  // p(-lambda)
    Poly r = *this;
    for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.at(i) + b.at(i);
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.at(i) - b.at(i);
    return Poly(std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    size_t n = std::max(a.c_.size(), b.c_.size());
    for (size_t i = 0; i < n; ++i)
      if (!(a.at(i) == b.at(i))) return false;
    return true;
  }

 private:
  void trim() {
    while (!c_.empty() && detail::scalar_is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

using RatPoly = Poly<Rat>;
using DualPoly = Poly<Dual>;

}  // namespace kdvred
