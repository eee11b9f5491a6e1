#include "kdvred/exchange.hpp"

#include <numeric>

#include "kdvred/errors.hpp"

namespace kdvred {

namespace {

mpz_class pos_part(const mpz_class& x) { return x > 0 ? x : mpz_class(0); }

// Coefficient vectors of the basis combinations used by the row expansion.
struct RowPatterns {
  // each pattern is a coefficient vector over the basis (length = rank)
  std::vector<std::vector<long>> expected;  // one per row, in row order
};

std::vector<long> shift_coeffs(const std::vector<long>& v, int k) {
  std::vector<long> r(v.size(), 0);
  for (size_t i = 0; i + k < v.size(); ++i) r[i + k] = v[i];
  return r;
}

std::vector<long> rev_coeffs(const std::vector<long>& v) {
  return std::vector<long>(v.rbegin(), v.rend());
}

std::vector<long> neg_coeffs(const std::vector<long>& v) {
  std::vector<long> r(v);
  for (auto& x : r) x = -x;
  return r;
}

}  // namespace

ExchangeMatrix build_exchange(Family family, int N, int M) {
  if (M < 1 || N <= M) throw BadParams("build_exchange: require N > M >= 1");
  if (std::gcd(N, M) != 1) throw BadParams("build_exchange: require gcd(N, M) = 1");
  int D = family == Family::T1 ? 2 * N + M : 2 * M + N;
  IntMat b(D, D);
  // first row (1-based positions)
  if (family == Family::T1) {
    b(0, M) += 1;
    b(0, 2 * N) += 1;
    b(0, N) -= 1;
    b(0, N + M) -= 1;
  } else {
    b(0, M) += 1;
    b(0, N + M) += 1;
    b(0, 2 * M) -= 1;
    b(0, N) -= 1;
  }
  for (int i = 1; i < D; ++i) {
    b(i, 0) = -b(0, i);
    for (int k = 1; k < D - 1; ++k)
      b(i, k) = b(i - 1, k - 1) + b(0, i) * pos_part(-b(0, k)) - b(0, k) * pos_part(-b(0, i));
    b(i, D - 1) = i < D - 1 ? b(0, i + 1) : mpz_class(0);
  }
  return ExchangeMatrix{family, N, M, std::move(b)};
}

IntMat mutate(const IntMat& b, int j) {
  size_t d = b.rows();
  if (j < 0 || static_cast<size_t>(j) >= d) throw BadParams("mutation vertex out of range");
  IntMat r(d, d);
  size_t ju = static_cast<size_t>(j);
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k) {
      if (i == ju || k == ju) {
        r(i, k) = -b(i, k);
      } else {
        mpz_class t = abs(b(i, ju)) * b(ju, k) + b(i, ju) * abs(b(ju, k));
        r(i, k) = b(i, k) + t / 2;
      }
    }
  return r;
}

bool period_one_check(const ExchangeMatrix& em) {
  const IntMat& b = em.B;
  size_t d = b.rows();
  IntMat mu = mutate(b, 0);
  // relabelling 1 -> D, k -> k-1: entry (i,k) of the relabelled matrix is
  // B_{i+1,k+1} read cyclically
  for (size_t i = 0; i < d; ++i)
    for (size_t k = 0; k < d; ++k)
      if (mu(i, k) != b((i + d - 1) % d, (k + d - 1) % d)) return false;
  return true;
}

PalindromicBasis palindromic_basis(const ExchangeMatrix& em) {
  int N = em.N, M = em.M, D = em.size();
  bool odd = (N + M) % 2 == 1;
  int count = odd ? N + M - 1 : N + M - 2;
  int base = em.family == Family::T1 ? N : M;
  std::vector<mpz_class> seed(static_cast<size_t>(D), 0);
  if (odd) {
    seed[0] += 1;
    seed[static_cast<size_t>(base + 1)] += 1;
    seed[1] -= 1;
    seed[static_cast<size_t>(base)] -= 1;
  } else {
    seed[0] += 1;
    seed[static_cast<size_t>(base + 2)] += 1;
    seed[2] -= 1;
    seed[static_cast<size_t>(base)] -= 1;
  }
  PalindromicBasis pb;
  pb.w.push_back(seed);
  for (int j = 1; j < count; ++j) {
    std::vector<mpz_class> w(static_cast<size_t>(D), 0);
    for (size_t i = 0; i + 1 < static_cast<size_t>(D); ++i) w[i + 1] = pb.w.back()[i];
    pb.w.push_back(std::move(w));
  }
  // span check: rank [w_1 .. w_2d] must equal rank B, and every row of B
  // must lie in the span.
  RatMat wmat(static_cast<size_t>(D), pb.w.size());
  for (size_t j = 0; j < pb.w.size(); ++j)
    for (size_t i = 0; i < static_cast<size_t>(D); ++i) wmat(i, j) = Rat(pb.w[j][i]);
  int rw = rank_exact(wmat);
  int rb = rank_exact(rat_from_int(em.B));
  if (rw != count || rb != count) throw SpanFailure("basis rank mismatch");
  RatMat aug(static_cast<size_t>(D), pb.w.size() + static_cast<size_t>(D));
  for (size_t j = 0; j < pb.w.size(); ++j)
    for (size_t i = 0; i < static_cast<size_t>(D); ++i) aug(i, j) = Rat(pb.w[j][i]);
  for (size_t r = 0; r < static_cast<size_t>(D); ++r)
    for (size_t i = 0; i < static_cast<size_t>(D); ++i)
      aug(i, pb.w.size() + r) = Rat(em.B(r, i));
  if (rank_exact(std::move(aug)) != count)
    throw SpanFailure("exchange matrix rows not in basis span");
  return pb;
}

IntMat reduced_exchange(const ExchangeMatrix& em, const PalindromicBasis& basis) {
  size_t D = static_cast<size_t>(em.size());
  size_t n = basis.count();
  RatMat w(D, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < D; ++i) w(i, j) = Rat(basis.w[j][i]);
  RatMat wt = w.transposed();
  RatMat g = wt * w;
  RatMat rhs = wt * rat_from_int(em.B) * w;
  // solve G X = rhs column by column, then X G = Y row by row: Bhat = G^-1 rhs G^-1
  auto solve_gx = [&](const RatMat& b) {
    RatMat x(n, n);
    for (size_t col = 0; col < n; ++col) {
      std::vector<Rat> rhsv(n);
      for (size_t i = 0; i < n; ++i) rhsv[i] = b(i, col);
      auto sol = solve_linear(g, rhsv);
      if (!sol) throw Inconsistent("reduced exchange solve failed");
      for (size_t i = 0; i < n; ++i) x(i, col) = (*sol)[i];
    }
    return x;
  };
  RatMat x = solve_gx(rhs);             // G^-1 rhs
  RatMat bh = solve_gx(x.transposed()).transposed();  // (G^-1 x^T)^T = x G^-1
  // exact verification and integrality
  RatMat back = w * bh * wt;
  IntMat result(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (bh(i, j).den() != 1) throw Inconsistent("reduced exchange not integer");
      result(i, j) = bh(i, j).num();
    }
  for (size_t i = 0; i < D; ++i)
    for (size_t j = 0; j < D; ++j)
      if (back(i, j) != Rat(em.B(i, j))) throw Inconsistent("W Bhat W^T != B");
  if (bareiss_rank(result) != static_cast<int>(n))
    throw Inconsistent("reduced exchange matrix degenerate");
  return result;
}

bool row_structure_check(const ExchangeMatrix& em) {
  int N = em.N, M = em.M, D = em.size();
  bool odd = (N + M) % 2 == 1;
  int n = odd ? N + M - 1 : N + M - 2;
  PalindromicBasis pb = palindromic_basis(em);

  // expand every row of B in the basis
  RatMat w(static_cast<size_t>(D), static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < D; ++i) w(i, j) = Rat(pb.w[static_cast<size_t>(j)][static_cast<size_t>(i)]);
  std::vector<std::vector<long>> got;
  for (int r = 0; r < D; ++r) {
    std::vector<Rat> rhs(static_cast<size_t>(D));
    for (int i = 0; i < D; ++i) rhs[static_cast<size_t>(i)] = Rat(em.B(r, i));
    auto sol = solve_linear(w, rhs);
    if (!sol) return false;
    std::vector<long> coeffs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      if ((*sol)[static_cast<size_t>(i)].den() != 1) return false;
      coeffs[static_cast<size_t>(i)] = static_cast<long>((*sol)[static_cast<size_t>(i)].num().get_si());
    }
    got.push_back(std::move(coeffs));
  }

  // expected combination patterns
  auto comb = [&](std::vector<std::pair<int, long>> terms) {
    std::vector<long> v(static_cast<size_t>(n), 0);
    for (auto [j, c] : terms) v[static_cast<size_t>(j - 1)] += c;
    return v;
  };
  std::vector<long> v, vp, vpp;
  bool has_vp = true;
  if (odd) {
    std::vector<std::pair<int, long>> tv, tvp, tvpp;
    for (int j = 1; j <= N - M; ++j) tv.push_back({j, 1});
    if (em.family == Family::T1) {
      for (int j = 1; j <= M; ++j) { tvp.push_back({j, 1}); tvp.push_back({N - M + j, -1}); }
      for (int j = 1; j <= 2 * M; ++j) tvpp.push_back({j, 1});
    } else {
      int mn = std::min(2 * M, N), c2 = std::min(M, N - M);
      if (N != 2 * M && std::abs(N - 2 * M) > 0)
        for (int j = 1; j <= c2; ++j) { tvp.push_back({j, 1}); tvp.push_back({mn + j, -1}); }
      else
        has_vp = false;
      for (int j = 1; j <= 2 * M; ++j) tvpp.push_back({j, 1});
      for (int j = 1; j <= N - M; ++j) tvpp.push_back({M + j, 1});
    }
    v = comb(tv);
    if (has_vp) vp = comb(tvp);
    vpp = comb(tvpp);
  } else {
    std::vector<std::pair<int, long>> tv, tvp, tvpp;
    for (int j = 1; j <= (N - M) / 2; ++j) tv.push_back({2 * j - 1, 1});
    if (em.family == Family::T1) {
      for (int j = 1; j <= (N - M) / 2; ++j) { tvp.push_back({2 * j - 1, 1}); tvp.push_back({M + 2 * j - 1, -1}); }
      for (int j = 1; j <= M; ++j) tvpp.push_back({2 * j - 1, 1});
    } else {
      if (N > 2 * M)
        for (int j = 1; j <= M; ++j) { tvp.push_back({2 * j - 1, 1}); tvp.push_back({M + 2 * j - 1, -1}); }
      else if (N < 2 * M)
        for (int j = 1; j <= (N - M) / 2; ++j) { tvp.push_back({2 * j - 1, 1}); tvp.push_back({N + 2 * j - 1, -1}); }
      else
        has_vp = false;
      for (int j = 1; j <= M; ++j) tvpp.push_back({2 * j - 1, 1});
      for (int j = 1; j <= (N - M) / 2; ++j) tvpp.push_back({M + 2 * j - 1, 1});
    }
    v = comb(tv);
    if (has_vp) vp = comb(tvp);
    vpp = comb(tvpp);
  }

  std::vector<std::vector<long>> expect(static_cast<size_t>(D));
  auto put = [&](int row1, std::vector<long> coeffs) {  // 1-based row
    expect[static_cast<size_t>(row1 - 1)] = std::move(coeffs);
  };
  if (em.family == Family::T1) {
    int cnt = N - M;
    for (int k = 1; k <= M; ++k) {
      put(k, shift_coeffs(v, M + k - 1));
      put(2 * N + k, neg_coeffs(shift_coeffs(v, k - 1)));
      put(N + k, shift_coeffs(vp, k - 1));
    }
    for (int k = 1; k <= cnt; ++k) {
      put(M + k, neg_coeffs(shift_coeffs(vpp, k - 1)));
      put(N + M + k, rev_coeffs(shift_coeffs(vpp, cnt - k)));
    }
  } else {
    int mn = std::min(2 * M, N), mx = std::max(2 * M, N);
    int cnt = std::min(M, N - M);
    for (int k = 1; k <= M; ++k) {
      put(k, shift_coeffs(v, M + k - 1));
      put(N + M + k, neg_coeffs(shift_coeffs(v, k - 1)));
    }
    for (int k = 1; k <= std::abs(N - 2 * M); ++k) put(mn + k, shift_coeffs(vp, k - 1));
    for (int k = 1; k <= cnt; ++k) {
      put(M + k, neg_coeffs(shift_coeffs(vpp, k - 1)));
      put(mx + k, rev_coeffs(shift_coeffs(vpp, cnt - k)));
    }
  }
  for (int r = 0; r < D; ++r)
    if (got[static_cast<size_t>(r)] != expect[static_cast<size_t>(r)]) return false;
  return true;
}

nlohmann::json intmat_to_json(Family family, int N, int M, const IntMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_si());
    rows.push_back(std::move(row));
  }
  return {{"family", family_name(family)}, {"N", N}, {"M", M}, {"rows", std::move(rows)}};
}

nlohmann::json exchange_to_json(const ExchangeMatrix& em) {
  return intmat_to_json(em.family, em.N, em.M, em.B);
}

}  // namespace kdvred
