#pragma once

// Dense matrices over an exact field, with Gauss-Jordan elimination for
// rank, kernels, solving, and inversion. Elimination pivots on the first
// nonzero entry in column order, so all outputs are deterministic.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confdens/common.hpp"

namespace confdens {

template <class K>
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0) {}
  DenseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, K(0)) {}

  static DenseMatrix identity(size_t n) {
    DenseMatrix m(n, n);
    for (size_t k = 0; k < n; ++k) m.at(k, k) = K(1);
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  K& at(size_t r, size_t c) {
    CONFDENS_CHECK(r < rows_ && c < cols_, "matrix index out of range");
    return a_[r * cols_ + c];
  }
  const K& at(size_t r, size_t c) const {
    CONFDENS_CHECK(r < rows_ && c < cols_, "matrix index out of range");
    return a_[r * cols_ + c];
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  DenseMatrix operator-() const {
    DenseMatrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    CONFDENS_CHECK(a.rows_ == b.rows_ && a.cols_ == b.cols_, "shape mismatch in +");
    for (size_t k = 0; k < a.a_.size(); ++k) a.a_[k] += b.a_[k];
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    CONFDENS_CHECK(a.rows_ == b.rows_ && a.cols_ == b.cols_, "shape mismatch in -");
    for (size_t k = 0; k < a.a_.size(); ++k) a.a_[k] -= b.a_[k];
    return a;
  }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    CONFDENS_CHECK(a.cols_ == b.rows_, "shape mismatch in *");
    DenseMatrix r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) {
          const K& bkj = b.at(k, j);
          if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
        }
      }
    return r;
  }
  friend DenseMatrix operator*(const K& s, const DenseMatrix& m) {
    DenseMatrix r = m;
    for (auto& x : r.a_) x = s * x;
    return r;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const DenseMatrix& a, const DenseMatrix& b) { return !(a == b); }

  std::vector<K> apply(const std::vector<K>& v) const {
    CONFDENS_CHECK(v.size() == cols_, "vector length mismatch");
    std::vector<K> r(rows_, K(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero()) r[i] += at(i, j) * v[j];
    return r;
  }

  DenseMatrix transpose() const {
    DenseMatrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }
  DenseMatrix conj_transpose() const {
    DenseMatrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
    return r;
  }

  // Reduced row echelon form plus the pivot column list.
  std::pair<DenseMatrix, std::vector<size_t>> rref() const {
    DenseMatrix m = *this;
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
      size_t sel = row;
      while (sel < rows_ && m.at(sel, col).is_zero()) ++sel;
      if (sel == rows_) continue;
      if (sel != row)
        for (size_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(row, j));
      K inv = K(1) / m.at(row, col);
      for (size_t j = col; j < cols_; ++j) m.at(row, j) = inv * m.at(row, j);
      for (size_t i = 0; i < rows_; ++i) {
        if (i == row || m.at(i, col).is_zero()) continue;
        K f = m.at(i, col);
        for (size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return {std::move(m), std::move(pivots)};
  }

  size_t rank() const { return rref().second.size(); }

  // Kernel basis in the standard free-column form: one vector per free
  // column, with a unit at that column and back-substituted pivot entries.
  std::vector<std::vector<K>> nullspace() const {
    auto [m, pivots] = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<K>> basis;
    for (size_t free_col = 0; free_col < cols_; ++free_col) {
      if (is_pivot[free_col]) continue;
      std::vector<K> v(cols_, K(0));
      v[free_col] = K(1);
      for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free_col);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // One solution of A x = b when the system is consistent (free variables set
  // to zero); nullopt when inconsistent.
  std::optional<std::vector<K>> solve(const std::vector<K>& b) const {
    CONFDENS_CHECK(b.size() == rows_, "rhs length mismatch");
    DenseMatrix aug(rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[i];
    }
    auto [m, pivots] = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<K> x(cols_, K(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m.at(r, cols_);
    return x;
  }

  std::optional<DenseMatrix> inverse() const {
    CONFDENS_CHECK(rows_ == cols_, "inverse of a non-square matrix");
    DenseMatrix aug(rows_, 2 * cols_);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_ + i) = K(1);
    }
    auto [m, pivots] = aug.rref();
    if (pivots.size() != rows_) return std::nullopt;
    for (size_t r = 0; r < rows_; ++r)
      if (pivots[r] != r) return std::nullopt;
    DenseMatrix inv(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = m.at(i, cols_ + j);
    return inv;
  }

  std::string to_string() const {
    std::string out;
    for (size_t i = 0; i < rows_; ++i) {
      out += "[";
      for (size_t j = 0; j < cols_; ++j) {
        if (j) out += ", ";
        out += at(i, j).to_string();
      }
      out += "]\n";
    }
    return out;
  }

 private:
  size_t rows_, cols_;
  std::vector<K> a_;
};

}  // namespace confdens
