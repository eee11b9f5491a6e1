#include "kdvred/rational.hpp"

#include <ostream>
#include <sstream>

namespace kdvred {

Rat::Rat(long n, long d) {
  if (d == 0) throw SingularPoint("rational with zero denominator");
  q_ = mpq_class(static_cast<signed long>(n), static_cast<signed long>(d));
  q_.canonicalize();
}

Rat::Rat(const mpz_class& n, const mpz_class& d) {
  if (sgn(d) == 0) throw SingularPoint("rational with zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rat Rat::parse(const std::string& s) {
  auto bad = [&]() { return BadParams("not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class n(s);
      return Rat(n);
    }
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (ns.empty() || ds.empty()) throw bad();
    mpz_class n(ns), d(ds);
    if (sgn(d) == 0) throw bad();
    return Rat(n, d);
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

Rat Rat::operator-() const {
  Rat r;
  r.q_ = -q_;
  return r;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw SingularPoint("division by zero");
  q_ /= o.q_;
  return *this;
}

Rat Rat::inv() const {
  if (is_zero()) throw SingularPoint("inverse of zero");
  Rat r;
  r.q_ = 1 / q_;
  return r;
}

Rat Rat::pow(long e) const {
  if (e == 0) return Rat(1);
  Rat base = e > 0 ? *this : inv();
  unsigned long k = e > 0 ? static_cast<unsigned long>(e)
                          : static_cast<unsigned long>(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), k);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), k);
  return Rat(n, d);
}

std::string Rat::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rat::decimal(int digits) const {
  if (digits < 0) digits = 0;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class twice = 2 * num() * scale;
  mpz_class r = (twice + (sgn(twice) >= 0 ? den() : -den())) / (2 * den());
  bool neg = sgn(r) < 0;
  mpz_class a = ::abs(r);
  std::string ds = a.get_str();
  std::string out;
  if (digits == 0) {
    out = ds;
  } else {
    if (static_cast<int>(ds.size()) <= digits)
      ds.insert(0, std::string(digits + 1 - ds.size(), '0'));
    out = ds.substr(0, ds.size() - digits) + "." + ds.substr(ds.size() - digits);
  }
  return neg ? "-" + out : out;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace kdvred
