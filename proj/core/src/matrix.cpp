#include "kdvred/matrix.hpp"

namespace kdvred {

RatMat rat_from_int(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

int rank_exact(RatMat m) {
  size_t rows = m.rows(), cols = m.cols();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    Rat pivot = m(r, c);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m(i, c).is_zero()) continue;
      Rat f = m(i, c) / pivot;
      for (size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return static_cast<int>(r);
}

int bareiss_rank(IntMat m) {
  size_t rows = m.rows(), cols = m.cols();
  mpz_class prev(1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (size_t j = 0; j < cols; ++j) mpz_swap(m(p, j).get_mpz_t(), m(r, j).get_mpz_t());
    for (size_t i = r + 1; i < rows; ++i) {
      for (size_t j = c + 1; j < cols; ++j) {
        mpz_class num = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return static_cast<int>(r);
}

std::vector<std::vector<mpz_class>> integer_kernel(const IntMat& m) {
  size_t rows = m.rows(), n = m.cols();
  IntMat a = m;
  IntMat u = IntMat::identity(n);
  // Column reduction: gcd steps applied to (a, u) in parallel; the trailing
  // columns of u span the kernel lattice.
  size_t lead = 0;
  for (size_t i = 0; i < rows && lead < n; ++i) {
    while (true) {
      size_t nz = 0, last = 0;
      for (size_t c = lead; c < n; ++c)
        if (a(i, c) != 0) { ++nz; last = c; }
      if (nz == 0) break;
      if (nz == 1) {
        if (last != lead)
          for (size_t rr = 0; rr < rows; ++rr) mpz_swap(a(rr, last).get_mpz_t(), a(rr, lead).get_mpz_t());
        if (last != lead)
          for (size_t rr = 0; rr < n; ++rr) mpz_swap(u(rr, last).get_mpz_t(), u(rr, lead).get_mpz_t());
        ++lead;
        break;
      }
      // pick the column with smallest nonzero |a(i,c)| and reduce the others
      size_t cmin = lead;
      mpz_class best(0);
      for (size_t c = lead; c < n; ++c) {
        if (a(i, c) == 0) continue;
        mpz_class v = abs(a(i, c));
        if (best == 0 || v < best) { best = v; cmin = c; }
      }
      for (size_t c = lead; c < n; ++c) {
        if (c == cmin || a(i, c) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(i, cmin).get_mpz_t());
        if (q == 0) continue;
        for (size_t rr = 0; rr < rows; ++rr) a(rr, c) -= q * a(rr, cmin);
        for (size_t rr = 0; rr < n; ++rr) u(rr, c) -= q * u(rr, cmin);
      }
      // after reduction some entries may still be nonzero remainders; loop
    }
  }
  std::vector<std::vector<mpz_class>> basis;
  for (size_t c = lead; c < n; ++c) {
    std::vector<mpz_class> v(n);
    for (size_t rr = 0; rr < n; ++rr) v[rr] = u(rr, c);
    int s = 0;
    for (auto& x : v)
      if (x != 0) { s = sgn(x); break; }
    if (s < 0)
      for (auto& x : v) x = -x;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rat>> solve_linear(RatMat a, std::vector<Rat> b) {
  size_t rows = a.rows(), cols = a.cols();
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
      std::swap(b[p], b[r]);
    }
    Rat pv = a(r, c);
    for (size_t j = c; j < cols; ++j) a(r, j) /= pv;
    b[r] /= pv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Rat f = a(i, c);
      for (size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<Rat> x(cols);
  for (size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
  return x;
}

std::vector<std::vector<Rat>> rat_nullspace(RatMat a) {
  size_t rows = a.rows(), cols = a.cols();
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    Rat pv = a(r, c);
    for (size_t j = c; j < cols; ++j) a(r, j) /= pv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Rat f = a(i, c);
      for (size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rat> v(cols);
    v[fc] = Rat(1);
    for (size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a(i, fc);
    basis.push_back(std::move(v));
  }
  return basis;
}

int gradient_rank(const std::vector<std::vector<Rat>>& grads) {
  if (grads.empty()) return 0;
  RatMat m(grads.size(), grads[0].size());
  for (size_t i = 0; i < grads.size(); ++i)
    for (size_t j = 0; j < grads[i].size(); ++j) m(i, j) = grads[i][j];
  return rank_exact(std::move(m));
}

}  // namespace kdvred
