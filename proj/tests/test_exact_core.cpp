#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdvred/dual.hpp"
#include "kdvred/matrix.hpp"
#include "kdvred/poly.hpp"
#include "kdvred/rng.hpp"

using namespace kdvred;

TEST_CASE("rational arithmetic stays canonical") {
  Rat a(2, 4);
  CHECK(a.num() == 1);
  CHECK(a.den() == 2);
  Rat b(-3, -6);
  CHECK(b == Rat(1, 2));
  CHECK((a + b) == Rat(1));
  CHECK((a - b).is_zero());
  CHECK((Rat(7, 3) * Rat(3, 7)) == Rat(1));
  CHECK_THROWS_AS(Rat(1) / Rat(0), SingularPoint);
  CHECK(Rat::parse("-14/21") == Rat(-2, 3));
  CHECK(Rat::parse("5") == Rat(5));
  CHECK_THROWS_AS(Rat::parse("x"), BadParams);
  CHECK(Rat(-2, 3).str() == "-2/3");
  CHECK(Rat(1, 8).decimal(3) == "0.125");
  CHECK(Rat(-1, 3).decimal(4) == "-0.3333");
  CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
}

TEST_CASE("eval_with_partials: product, quotient, pole") {
  DualFn prod = [](std::span<const Dual> x) { return x[0] * x[1]; };
  std::vector<Rat> p{Rat(2), Rat(3)};
  Dual r = eval_with_partials(prod, p);
  CHECK(r.v == Rat(6));
  CHECK(r.partial(0) == Rat(3));
  CHECK(r.partial(1) == Rat(2));

  DualFn inv = [](std::span<const Dual> x) { return Dual(Rat(1)) / x[0]; };
  std::vector<Rat> q{Rat(1, 2)};
  Dual s = eval_with_partials(inv, q);
  CHECK(s.v == Rat(2));
  CHECK(s.partial(0) == Rat(-4));

  std::vector<Rat> z{Rat(0)};
  CHECK_THROWS_AS(eval_with_partials(inv, z), SingularPoint);
}

TEST_CASE("Leibniz and chain identities hold exactly") {
  RatSampler sampler(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto p = sampler.point(3);
    auto x = dual_vars(p);
    Dual f = x[0] * x[1] + x[2];
    Dual g = x[1] / x[2] - x[0];
    Dual fg = f * g;
    for (size_t i = 0; i < 3; ++i)
      CHECK(fg.partial(i) == f.v * g.partial(i) + g.v * f.partial(i));
    Dual q = f / g;
    for (size_t i = 0; i < 3; ++i)
      CHECK(q.partial(i) * g.v * g.v == f.partial(i) * g.v - f.v * g.partial(i));
  }
}

TEST_CASE("partials of a constant vanish") {
  DualFn c = [](std::span<const Dual>) { return Dual(Rat(7, 2)); };
  std::vector<Rat> p{Rat(1), Rat(2)};
  Dual r = eval_with_partials(c, p);
  CHECK(r.v == Rat(7, 2));
  CHECK(r.partial(0).is_zero());
  CHECK(r.partial(1).is_zero());
}

namespace {
RatPoly random_poly(RatSampler& s, int deg) {
  std::vector<Rat> c;
  for (int i = 0; i <= deg; ++i) c.push_back(s.rational());
  return RatPoly(std::move(c));
}
}  // namespace

TEST_CASE("polynomial ring identities on random operands") {
  RatSampler sampler(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_poly(sampler, 1 + trial % 6);
    auto b = random_poly(sampler, 6 - trial % 5);
    auto c = random_poly(sampler, 3);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero() && !b.is_zero()) CHECK((a * b).deg() == a.deg() + b.deg());
  }
  RatPoly zero;
  CHECK(zero.deg() == -1);
  CHECK((zero * random_poly(sampler, 4)).is_zero());
}

TEST_CASE("rank bounds and Bareiss agreement on random matrices") {
  RatSampler sampler(23);
  Rng rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    size_t n = 2 + rng.below(4), m = 2 + rng.below(4), k = 2 + rng.below(4);
    RatMat a(n, m), b(m, k);
    IntMat ai(n, m);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < m; ++j) {
        long v = static_cast<long>(rng.below(7)) - 3;
        a(i, j) = Rat(v);
        ai(i, j) = v;
      }
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < k; ++j) b(i, j) = Rat(static_cast<long>(rng.below(7)) - 3);
    int ra = rank_exact(a), rb = rank_exact(b), rab = rank_exact(a * b);
    CHECK(rab <= std::min(ra, rb));
    CHECK(bareiss_rank(ai) == ra);
  }
}

TEST_CASE("zero matrix has rank zero") {
  RatMat z(5, 7);
  CHECK(rank_exact(z) == 0);
  IntMat zi(4, 4);
  CHECK(bareiss_rank(zi) == 0);
}

TEST_CASE("integer kernels are primitive bases") {
  IntMat id = IntMat::identity(4);
  CHECK(integer_kernel(id).empty());

  IntMat row(1, 2);
  row(0, 0) = 2;
  row(0, 1) = 4;
  auto k = integer_kernel(row);
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == 2);
  CHECK(k[0][1] == -1);

  // kernel vectors annihilate the matrix and count cols - rank
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    size_t n = 3 + rng.below(3), m = 3 + rng.below(4);
    IntMat a(n, m);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < m; ++j) a(i, j) = static_cast<long>(rng.below(5)) - 2;
    auto basis = integer_kernel(a);
    CHECK(basis.size() == m - static_cast<size_t>(bareiss_rank(a)));
    for (const auto& v : basis) {
      mpz_class content(0);
      for (size_t i = 0; i < n; ++i) {
        mpz_class dot(0);
        for (size_t j = 0; j < m; ++j) dot += a(i, j) * v[j];
        CHECK(dot == 0);
      }
      for (const auto& x : v) content = gcd(content, x);
      CHECK(abs(content) == 1);
    }
  }
}

TEST_CASE("linear solve detects inconsistency") {
  RatMat a(2, 1);
  a(0, 0) = Rat(1);
  a(1, 0) = Rat(1);
  std::vector<Rat> ok{Rat(3), Rat(3)}, bad{Rat(3), Rat(4)};
  auto s1 = solve_linear(a, ok);
  REQUIRE(s1.has_value());
  CHECK((*s1)[0] == Rat(3));
  CHECK_FALSE(solve_linear(a, bad).has_value());
}

TEST_CASE("sampler respects the documented ranges and is deterministic") {
  RatSampler a(42), b(42);
  for (int i = 0; i < 200; ++i) {
    Rat x = a.rational();
    CHECK(x == b.rational());
    CHECK_FALSE(x.is_zero());
    CHECK(x.num() >= -9);
    CHECK(x.num() <= 9);
    CHECK(x.den() >= 1);
    CHECK(x.den() <= 9);
  }
}
