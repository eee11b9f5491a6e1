#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "kdvred/errors.hpp"

namespace kdvred {

// Arbitrary-precision rational, always in lowest terms with positive
// denominator. Division by zero throws SingularPoint.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(int n) : q_(n) {}
  Rat(long n) : q_(static_cast<signed long>(n)) {}
  Rat(long n, long d);
  explicit Rat(const mpz_class& n) : q_(n) {}
  Rat(const mpz_class& n, const mpz_class& d);
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "p", "p/q", optional leading '-'.
  static Rat parse(const std::string& s);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  Rat operator-() const;
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  Rat inv() const;
  Rat pow(long e) const;  // negative e requires a nonzero base
  Rat abs() const { return Rat(mpq_class(::abs(q_))); }

  std::string str() const;              // "p" or "p/q"
  std::string decimal(int digits) const;  // rounded decimal rendering

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_class q_;
};

}  // namespace kdvred
