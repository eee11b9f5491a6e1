#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "kdvred/exchange.hpp"
#include "kdvred/ucoeffs.hpp"

using namespace kdvred;

namespace {
std::vector<long> as_longs(const std::vector<Rat>& v, size_t from = 1) {
  std::vector<long> out;
  for (size_t i = from; i < v.size(); ++i) {
    REQUIRE(v[i].den() == 1);
    out.push_back(v[i].num().get_si());
  }
  return out;
}
}  // namespace

TEST_CASE("reference coefficient vectors") {
  auto a169 = solve_u_coefficients(16, 9);
  CHECK(as_longs(a169.a) ==
        std::vector<long>{1, -1, 0, 0, 1, -1, 0, 1, -1, 0, 0, 1,
                          -1, 0, 0, 1, -1, 0, 1, -1, 0, 0, 1});

  auto a179 = solve_u_coefficients(17, 9);
  std::vector<long> odd179, even179;
  for (size_t k = 1; k < a179.a.size(); ++k) {
    REQUIRE(a179.a[k].den() == 1);
    (k % 2 == 1 ? odd179 : even179).push_back(a179.a[k].num().get_si());
  }
  CHECK(odd179 == std::vector<long>{1, 0, 0, -1, 1, 0, 0, 0, -1, 1, 0, 0});
  for (long v : even179) CHECK(v == 0);

  auto a1711 = solve_u_coefficients(17, 11);
  std::vector<long> odd1711, even1711;
  for (size_t k = 1; k < a1711.a.size(); ++k)
    (k % 2 == 1 ? odd1711 : even1711).push_back(a1711.a[k].num().get_si());
  CHECK(odd1711 == std::vector<long>{1, 0, -1, 1, 0, -1, 1, -1, 1, 0, -1, 1, 0});
  for (long v : even1711) CHECK(v == 0);

  auto a43 = solve_u_coefficients(4, 3);
  CHECK(as_longs(a43.a) == std::vector<long>{0, 0, 1, -1, 0});

  auto a53 = solve_u_coefficients(5, 3);
  CHECK(as_longs(a53.a) == std::vector<long>{0, 0, 1, 0, -1});
}

TEST_CASE("nullspace is one-dimensional across the sweep") {
  for (int sum = 3; sum <= 20; ++sum)
    for (int m = 1; 2 * m < sum; ++m) {
      int n = sum - m;
      if (std::gcd(n, m) != 1) continue;
      CAPTURE(n);
      CAPTURE(m);
      CHECK_NOTHROW(solve_u_coefficients(n, m));
    }
  CHECK_THROWS_AS(solve_u_coefficients(6, 3), BadParams);
}

TEST_CASE("raw window system agrees with the condensed lists") {
  // nullspaces coincide: the raw equations annihilate the condensed solution
  for (auto [n, m] : {std::pair{5, 3}, {7, 3}, {7, 5}, {9, 5}, {4, 3}, {5, 2}, {9, 7}}) {
    auto a = solve_u_coefficients(n, m);
    for (const auto& eq : raw_window_equations(n, m)) {
      Rat dot;
      for (size_t k = 0; k < eq.size(); ++k) dot += eq[k] * a.a[k + 1];
      CAPTURE(n);
      CAPTURE(m);
      CHECK(dot.is_zero());
    }
  }
}

TEST_CASE("closed-form sign coefficients") {
  // c_M = -1 always, since h_M = 1
  for (auto [n, m] : {std::pair{4, 3}, {5, 2}, {8, 3}, {7, 4}, {2, 1}})
    CHECK(kdv_coefficients(n, m)[static_cast<size_t>(m)] == Rat(-1));

  auto h = h_exponents(4, 3);
  CHECK(std::vector<long>(h.begin() + 1, h.end()) == std::vector<long>{5, 3, 1, 6, 4, 2});
  auto c = kdv_coefficients(4, 3);
  CHECK(as_longs(c) == std::vector<long>{-1, -1, -1, 1, 1, 1});
  for (int k = 1; k < 7; ++k)
    CHECK(c[static_cast<size_t>(k)] == -c[static_cast<size_t>(7 - k)]);
  CHECK_THROWS_AS(kdv_coefficients(5, 3), BadParity);
}

TEST_CASE("lifted double-sum coefficients") {
  auto a = solve_u_coefficients(4, 3);
  auto [c, d] = cd_from_a(4, 3, a);
  CHECK(c[1] == Rat(1));  // global scale -1 against (-1)^{h_1} = -1
  CHECK(coefficient_scale(4, 3, a) == Rat(-1));
  for (size_t k = 1; k < c.size(); ++k) CHECK(c[k] == d[k]);

  // proportionality and index relations across odd-sum pairs
  for (int sum = 5; sum <= 15; sum += 2)
    for (int m = 1; 2 * m < sum; ++m) {
      int n = sum - m;
      if (std::gcd(n, m) != 1) continue;
      auto ai = solve_u_coefficients(n, m);
      auto [ci, di] = cd_from_a(n, m, ai);
      auto ref = kdv_coefficients(n, m);
      Rat kappa = coefficient_scale(n, m, ai);
      CHECK_FALSE(kappa.is_zero());
      for (size_t k = 1; k < ref.size(); ++k) {
        CHECK(ci[k] == kappa * ref[k]);
        CHECK(di[k] == ci[k]);
      }
      int S = sum;
      auto get = [&](int i) {
        int r = ((i % S) + S) % S;
        return ci[static_cast<size_t>(r)];
      };
      for (int mm = 1; mm < S; ++mm) {
        CHECK(get(mm) == -get(S - mm));
        if ((mm - n) % S != 0) CHECK(get(mm) == -get(mm - n));
        if ((mm - m) % S != 0) CHECK(get(mm) == -get(mm - m));
      }
    }
}

TEST_CASE("Toeplitz coefficient matrix inverts the reduced exchange matrix") {
  auto a = solve_u_coefficients(4, 3);
  auto em = build_exchange(Family::T2, 4, 3);
  auto bh = reduced_exchange(em, palindromic_basis(em));
  RatMat am(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) am(static_cast<size_t>(i), static_cast<size_t>(j)) = a.at(j - i);
  RatMat prod = am * rat_from_int(bh);
  for (size_t i = 0; i < 6; ++i)
    for (size_t j = 0; j < 6; ++j) CHECK(prod(i, j) == (i == j ? Rat(-1) : Rat(0)));
}

TEST_CASE("index tableau prints the congruence columns") {
  auto t = index_tableau(16, 9);
  CHECK(t.find("k = 2Mr mod 25") != std::string::npos);
  CHECK(t.find("1  18") != std::string::npos);   // r=1 -> k=18
  CHECK(t.find("24  7") != std::string::npos);   // r=24 -> k=7

  // even case, odd half-sum: both columns start at (N+M)/2
  auto t179 = index_tableau(17, 9);
  CHECK(t179.find("13  |  13") != std::string::npos);
  CHECK(t179.find("17  |  9") != std::string::npos);
  // even case, even half-sum: seed top right, left column trails
  auto t1711 = index_tableau(17, 11);
  CHECK(t1711.find("25  |  3") != std::string::npos);
  CHECK(t1711.find("17  |  11") != std::string::npos);
}
