#pragma once

#include <cstddef>
#include <vector>

#include "hopftwist/cyclotomic.hpp"

namespace hopftwist {

using Vec = std::vector<Scalar>;

// Dense matrix over the exact scalar field, row-major.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), d_(rows * cols) {}

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& at(size_t i, size_t j) { return d_[i * cols_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return d_[i * cols_ + j]; }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw invalid_input("mat: shape mismatch in product");
    Mat r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a.at(i, k);
        if (x.is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) {
          const Scalar& y = b.at(k, j);
          if (!y.is_zero()) r.at(i, j) += x * y;
        }
      }
    return r;
  }
  friend Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw invalid_input("mat: shape mismatch in sum");
    Mat r = a;
    for (size_t i = 0; i < r.d_.size(); ++i) r.d_[i] += b.d_[i];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw invalid_input("mat: shape mismatch in diff");
    Mat r = a;
    for (size_t i = 0; i < r.d_.size(); ++i) r.d_[i] -= b.d_[i];
    return r;
  }
  friend Mat operator*(const Scalar& s, const Mat& a) {
    Mat r = a;
    for (auto& x : r.d_) x = s * x;
    return r;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw invalid_input("mat: shape mismatch in apply");
    Vec r(rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
    return r;
  }

  // Kronecker product.
  static Mat kron(const Mat& a, const Mat& b) {
    Mat r(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t j = 0; j < a.cols_; ++j) {
        if (a.at(i, j).is_zero()) continue;
        for (size_t k = 0; k < b.rows_; ++k)
          for (size_t l = 0; l < b.cols_; ++l)
            if (!b.at(k, l).is_zero())
              r.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
      }
    return r;
  }

  Mat conjugated() const {
    Mat r = *this;
    for (auto& x : r.d_) x = x.conjugate();
    return r;
  }

 private:
  size_t rows_, cols_;
  std::vector<Scalar> d_;
};

// In-place reduced row echelon form; returns the pivot column of each pivot
// row in order.  Deterministic: pivots are the first nonzero entry scanning
// rows top-down within each column, columns left to right.
inline std::vector<size_t> rref(Mat& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Scalar inv = m.at(r, c).inverse();
    for (size_t j = c; j < m.cols(); ++j)
      if (!m.at(r, j).is_zero()) m.at(r, j) = inv * m.at(r, j);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (size_t j = c; j < m.cols(); ++j)
        if (!m.at(r, j).is_zero()) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline size_t rank(Mat m) { return rref(m).size(); }

// Solution of A x = b: consistency flag, one particular solution, and a
// kernel basis whose columns are in reduced column echelon form (each free
// variable contributes the column with a 1 in its own position and the
// negated pivot-row coefficients above).
struct LinearSolution {
  bool consistent = false;
  Vec particular;  // size = #cols of A when consistent
  Mat kernel;      // (#cols of A) x (kernel dimension)
};

inline LinearSolution solve_linear(const Mat& a, const Vec& b) {
  if (b.size() != a.rows()) throw invalid_input("solve: rhs size mismatch");
  size_t n = a.cols();
  Mat aug(a.rows(), n + 1);
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n) = b[i];
  }
  std::vector<size_t> pivots = rref(aug);
  LinearSolution sol;
  if (!pivots.empty() && pivots.back() == n) return sol;  // row (0 ... 0 | 1)
  sol.consistent = true;
  std::vector<long> pivot_of_col(n, -1);
  for (size_t r = 0; r < pivots.size(); ++r) pivot_of_col[pivots[r]] = static_cast<long>(r);
  sol.particular.assign(n, Scalar(0));
  for (size_t r = 0; r < pivots.size(); ++r) sol.particular[pivots[r]] = aug.at(r, n);
  std::vector<size_t> free_cols;
  for (size_t j = 0; j < n; ++j)
    if (pivot_of_col[j] < 0) free_cols.push_back(j);
  sol.kernel = Mat(n, free_cols.size());
  for (size_t k = 0; k < free_cols.size(); ++k) {
    size_t j = free_cols[k];
    sol.kernel.at(j, k) = Scalar(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      if (!aug.at(r, j).is_zero()) sol.kernel.at(pivots[r], k) = -aug.at(r, j);
  }
  return sol;
}

// Kernel of A as columns in reduced column echelon form.
inline Mat kernel(const Mat& a) {
  return solve_linear(a, Vec(a.rows(), Scalar(0))).kernel;
}

// Canonical basis (reduced row echelon, zero rows dropped) of the row span.
inline Mat row_space(Mat m) {
  std::vector<size_t> pivots = rref(m);
  Mat r(pivots.size(), m.cols());
  for (size_t i = 0; i < pivots.size(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = m.at(i, j);
  return r;
}

inline bool same_row_space(const Mat& a, const Mat& b) { return row_space(a) == row_space(b); }

// Is v in the span of the rows of basis?
inline bool in_row_space(const Mat& basis, const Vec& v) {
  return solve_linear(basis.transpose(), v).consistent;
}

inline Mat mat_from_rows(const std::vector<Vec>& rows, size_t cols) {
  Mat m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw invalid_input("mat: ragged rows");
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

// Inverse of a square matrix; throws invalid_input if singular.
inline Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw invalid_input("mat: inverse of non-square");
  size_t n = a.rows();
  Mat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = Scalar(1);
  }
  std::vector<size_t> pivots = rref(aug);
  if (pivots.size() != n || pivots.back() != n - 1)
    throw invalid_input("mat: singular matrix");
  Mat r(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
  return r;
}

}  // namespace hopftwist
