#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

#include "kdvred/rational.hpp"

namespace kdvred {

template <class T>
class Mat {
 public:
  Mat() : r_(0), c_(0) {}
  Mat(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  Mat transposed() const {
    Mat m(c_, r_);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat m(a.r_, b.c_);
    for (size_t i = 0; i < a.r_; ++i)
      for (size_t k = 0; k < a.c_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (size_t j = 0; j < b.c_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat m(a.r_, a.c_);
    for (size_t i = 0; i < a.r_ * a.c_; ++i) m.a_[i] = a.a_[i] - b.a_[i];
    return m;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  size_t r_, c_;
  std::vector<T> a_;
};

using IntMat = Mat<mpz_class>;
using RatMat = Mat<Rat>;

RatMat rat_from_int(const IntMat& m);

// Rank over the rational field, by exact Gaussian elimination.
int rank_exact(RatMat m);

// Rank by fraction-free (Bareiss) elimination on integer matrices.
int bareiss_rank(IntMat m);

// Z-basis of the integer kernel, each vector primitive (content 1) with the
// first nonzero entry positive. Basis size equals cols - rank.
std::vector<std::vector<mpz_class>> integer_kernel(const IntMat& m);

// Solves A x = b exactly; nullopt when the system is inconsistent. When the
// solution is not unique, free variables are set to zero.
std::optional<std::vector<Rat>> solve_linear(RatMat a, std::vector<Rat> b);

// Basis of the rational nullspace of A.
std::vector<std::vector<Rat>> rat_nullspace(RatMat a);

// Rank of the matrix whose rows are the given gradient vectors.
int gradient_rank(const std::vector<std::vector<Rat>>& grads);

}  // namespace kdvred
