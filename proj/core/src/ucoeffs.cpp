#include "kdvred/ucoeffs.hpp"

#include <numeric>
#include <optional>
#include <sstream>

#include "kdvred/errors.hpp"
#include "kdvred/matrix.hpp"

namespace kdvred {

namespace {

long mod_inverse(long a, long m) {
  long t = 0, newt = 1, r = m, newr = a % m;
  if (newr < 0) newr += m;
  while (newr != 0) {
    long q = r / newr;
    t = std::exchange(newt, t - q * newt);
    r = std::exchange(newr, r - q * newr);
  }
  return t < 0 ? t + m : t;
}

}  // namespace

std::vector<std::vector<Rat>> raw_window_equations(int N, int M) {
  // Bracket both sides of the order-(N+M) relation with each window variable
  // u_j; the projected sums must vanish identically in the free coefficient.
  const int S = N + M;
  const int step = S % 2 == 1 ? 1 : 2;
  const int dim = S % 2 == 1 ? S - 1 : S - 2;
  const int nvar = dim - 1;  // unknowns a_1 .. a_{dim-1}
  std::vector<std::vector<Rat>> eqs;
  auto fold = [&](const std::vector<int>& offsets, int j) -> std::optional<std::vector<Rat>> {
    std::vector<Rat> row(static_cast<size_t>(nvar));
    for (int i : offsets) {
      int k = j - i;
      if (k == 0) continue;
      int idx = k > 0 ? k : -k;
      if (idx > nvar) return std::nullopt;  // touches a coefficient outside the window
      row[static_cast<size_t>(idx - 1)] += Rat(k > 0 ? 1 : -1);
    }
    return row;
  };
  std::vector<int> lhs, rhs;
  for (int i = 0; i <= S - step; i += step) lhs.push_back(i);
  for (int i = M; i <= N - step; i += step) rhs.push_back(i);
  for (int j = 1; j <= dim - 1; ++j) {
    if (auto r = fold(lhs, j)) eqs.push_back(std::move(*r));
    if (auto r = fold(rhs, j)) eqs.push_back(std::move(*r));
  }
  return eqs;
}

UCoefficients solve_u_coefficients(int N, int M) {
  if (M < 1 || N <= M || std::gcd(N, M) != 1)
    throw BadParams("solve_u_coefficients: require coprime N > M >= 1");
  int S = N + M;
  std::vector<std::vector<Rat>> eqs;
  int nvar;
  if (S % 2 == 0 && M == 1) {
    // the condensed even-case relation list degenerates for M = 1 (its extra
    // relation would zero the whole bracket); fall back to the window system
    nvar = S - 3;
    eqs = raw_window_equations(N, M);
  } else if (S % 2 == 1) {
    nvar = S - 2;  // unknowns a_1 .. a_{S-2}
    // window sums from the bracket of u_j with both sides of the order-(N+M)
    // relation; all indices stay in range by construction
    for (int j = 2; j <= (S - 1) / 2; ++j) {
      std::vector<Rat> row(static_cast<size_t>(nvar));
      for (int i = j; i <= S - j; ++i) row[static_cast<size_t>(i - 1)] += Rat(1);
      eqs.push_back(std::move(row));
    }
    for (int j = 1; j <= M - 1; ++j) {
      std::vector<Rat> row(static_cast<size_t>(nvar));
      for (int i = j; i <= N - M + j - 1; ++i) row[static_cast<size_t>(i - 1)] += Rat(1);
      eqs.push_back(std::move(row));
    }
    for (int j = 1; j <= (N - M - 1) / 2; ++j) {
      std::vector<Rat> row(static_cast<size_t>(nvar));
      for (int i = j; i <= N - M - j; ++i) row[static_cast<size_t>(i - 1)] += Rat(1);
      eqs.push_back(std::move(row));
    }
  } else {
    nvar = S - 3;  // unknowns a_1 .. a_{S-3}; a_0 = 0
    auto add = [&](std::vector<Rat>& row, int k, int c) {
      if (k == 0) return;
      if (k > 0)
        row[static_cast<size_t>(k - 1)] += Rat(c);
      else
        row[static_cast<size_t>(-k - 1)] -= Rat(c);
    };
    for (int k = 3; k <= S / 2; ++k) {  // a_k + a_{S-k} = 0
      std::vector<Rat> row(static_cast<size_t>(nvar));
      add(row, k, 1);
      add(row, S - k, 1);
      eqs.push_back(std::move(row));
    }
    for (int k = 0; k <= M - 3; ++k) {  // a_k = a_{N-M+k}
      std::vector<Rat> row(static_cast<size_t>(nvar));
      add(row, k, 1);
      add(row, N - M + k, -1);
      eqs.push_back(std::move(row));
    }
    for (int k = 1; k <= (N - M) / 2 - 1; ++k) {  // a_k = a_{2M+k}
      std::vector<Rat> row(static_cast<size_t>(nvar));
      add(row, k, 1);
      add(row, 2 * M + k, -1);
      eqs.push_back(std::move(row));
    }
    {
      std::vector<Rat> row(static_cast<size_t>(nvar));
      add(row, (N - M) / 2, 1);  // a_{(N-M)/2} = 0
      eqs.push_back(std::move(row));
    }
  }
  RatMat m(eqs.size(), static_cast<size_t>(nvar));
  for (size_t i = 0; i < eqs.size(); ++i)
    for (int j = 0; j < nvar; ++j) m(i, static_cast<size_t>(j)) = eqs[i][static_cast<size_t>(j)];
  auto ns = rat_nullspace(std::move(m));
  if (ns.size() != 1)
    throw DimensionFailure("u-coefficient nullspace dimension " + std::to_string(ns.size()));
  std::vector<Rat>& sol = ns[0];
  Rat lead;
  for (const auto& x : sol)
    if (!x.is_zero()) { lead = x; break; }
  for (auto& x : sol) x /= lead;
  UCoefficients uc;
  uc.N = N;
  uc.M = M;
  uc.a.assign(1, Rat(0));
  uc.a.insert(uc.a.end(), sol.begin(), sol.end());
  if (S % 2 == 0) {
    // even-index coefficients must vanish identically
    for (size_t k = 2; k < uc.a.size(); k += 2)
      if (!uc.a[k].is_zero()) throw DimensionFailure("even-index coefficient nonzero");
  }
  return uc;
}

std::vector<long> h_exponents(int N, int M) {
  if ((N + M) % 2 == 0) throw BadParity("h exponents need N+M odd");
  long S = N + M;
  long minv = mod_inverse(M, S);
  std::vector<long> h(static_cast<size_t>(S), 0);
  for (long k = 1; k < S; ++k) h[static_cast<size_t>(k)] = (k * minv) % S;
  return h;
}

std::vector<Rat> kdv_coefficients(int N, int M) {
  auto h = h_exponents(N, M);
  std::vector<Rat> c(h.size());
  for (size_t k = 1; k < h.size(); ++k) c[k] = h[k] % 2 == 0 ? Rat(1) : Rat(-1);
  return c;
}

std::pair<std::vector<Rat>, std::vector<Rat>> cd_from_a(int N, int M,
                                                        const UCoefficients& a) {
  if ((N + M) % 2 == 0) throw BadParity("cd_from_a needs N+M odd");
  int S = N + M;
  std::vector<Rat> c(static_cast<size_t>(S)), d(static_cast<size_t>(S));
  for (int m = 1; m < S; ++m) {
    Rat cm, dm;
    if (m <= N - 1) {
      for (int i = 0; i < M; ++i)
        for (int j = m; j <= m + M - 1; ++j) cm += a.at(j - i);
    } else {
      for (int i = 0; i < M; ++i)
        for (int j = m - N; j <= m - 1; ++j) cm -= a.at(j - i);
    }
    if (m <= M - 1) {
      for (int i = 0; i < N; ++i)
        for (int j = m; j <= m + N - 1; ++j) dm += a.at(j - i);
    } else {
      for (int i = 0; i < N; ++i)
        for (int j = m - M; j <= m - 1; ++j) dm -= a.at(j - i);
    }
    c[static_cast<size_t>(m)] = cm;
    d[static_cast<size_t>(m)] = dm;
  }
  return {std::move(c), std::move(d)};
}

Rat coefficient_scale(int N, int M, const UCoefficients& a) {
  auto [c, d] = cd_from_a(N, M, a);
  auto ref = kdv_coefficients(N, M);
  for (size_t k = 1; k < ref.size(); ++k)
    if (!ref[k].is_zero() && !c[k].is_zero()) return c[k] / ref[k];
  throw Inconsistent("no nonzero coefficient to compare");
}

std::string index_tableau(int N, int M) {
  int S = N + M;
  std::ostringstream os;
  os << "index tableau for (N,M) = (" << N << "," << M << "), k = 2Mr mod " << S << "\n";
  os << "  r   k  |  r   k\n";
  if (S % 2 == 1) {
    int half = (S - 1) / 2;
    for (int r = 1; r <= half; ++r) {
      int rr = S - r;
      int k1 = (2 * M * r) % S, k2 = (2 * M * rr) % S;
      os << "  " << r << "  " << k1 << "  |  " << rr << "  " << k2 << "\n";
    }
  } else {
    // even case: odd indices only, stepping by N-M down the columns; for
    // even S/2 the seed sits top right and the left column trails by a step
    int start = (S / 2) % 2 == 1 ? S / 2 : (N - M) / 2;
    os << "  (odd indices, step " << N - M << ")\n";
    int right = start;
    int left = (S / 2) % 2 == 1 ? start : ((start - (N - M)) % S + S) % S;
    int rows = ((S - 2) / 2 + 2) / 2;
    for (int i = 0; i < rows; ++i) {
      os << "  " << left << "  |  " << right << "\n";
      left = ((left - (N - M)) % S + S) % S;
      right = (right + (N - M)) % S;
    }
  }
  return os.str();
}

}  // namespace kdvred
