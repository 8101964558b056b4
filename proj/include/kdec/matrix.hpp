#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace kdec {

// Dense row-major matrix of exact rationals. Elimination uses the first
// nonzero candidate as pivot (no magnitude heuristics), so every reduction is
// deterministic and the reduced row echelon form is the canonical
// representative of the row space.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I.at(i, i) = 1;
    return I;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap(at(a, j), at(b, j));
  }

  void append_row(const std::vector<Rational>& row) {
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw KdecError("matrix product shape mismatch");
    Matrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& v = at(i, k);
        if (v == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          if (o.at(k, j) == 0) continue;
          p.at(i, j) += v * o.at(k, j);
        }
      }
    return p;
  }

  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw KdecError("matrix sum shape mismatch");
    Matrix s(rows_, cols_);
    for (std::size_t q = 0; q < data_.size(); ++q) s.data_[q] = data_[q] + o.data_[q];
    return s;
  }

  Matrix operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw KdecError("matrix difference shape mismatch");
    Matrix s(rows_, cols_);
    for (std::size_t q = 0; q < data_.size(); ++q) s.data_[q] = data_[q] - o.data_[q];
    return s;
  }

  Matrix operator*(const Rational& c) const {
    Matrix s(rows_, cols_);
    for (std::size_t q = 0; q < data_.size(); ++q) s.data_[q] = data_[q] * c;
    return s;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw KdecError("matrix apply shape mismatch");
    std::vector<Rational> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Rational s;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (at(i, j) == 0 || v[j] == 0) continue;
        s += at(i, j) * v[j];
      }
      r[i] = s;
    }
    return r;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (v != 0) return false;
    return true;
  }

  // In-place reduction to reduced row echelon form (leading ones, zeros above
  // and below each pivot). Returns the pivot columns. Elimination iterates
  // only over the nonzero columns of the pivot row, which keeps sparse
  // constraint systems cheap.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && at(p, c) == 0) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      if (at(r, c) != 1) {
        const Rational inv = Rational(1) / at(r, c);
        for (std::size_t j = c; j < cols_; ++j) {
          if (at(r, j) == 0) continue;
          at(r, j) *= inv;
        }
      }
      nz.clear();
      for (std::size_t j = c; j < cols_; ++j)
        if (at(r, j) != 0) nz.push_back(j);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || at(i, c) == 0) continue;
        const Rational f = at(i, c);
        for (std::size_t j : nz) at(i, j) -= f * at(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix copy = *this;
    return copy.rref().size();
  }

  // Rows of the result form a basis of {x : M x = 0}, obtained from the free
  // columns of the reduced form. Deterministic given the matrix.
  Matrix null_space() const {
    Matrix red = *this;
    const std::vector<std::size_t> pivots = red.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    Matrix ker(cols_ - pivots.size(), cols_);
    std::size_t out = 0;
    for (std::size_t fc = 0; fc < cols_; ++fc) {
      if (is_pivot[fc]) continue;
      ker.at(out, fc) = 1;
      for (std::size_t t = 0; t < pivots.size(); ++t)
        ker.at(out, pivots[t]) = -red.at(t, fc);
      ++out;
    }
    return ker;
  }

  // Solves M X = B for square invertible M via one augmented elimination.
  Matrix solve(const Matrix& b) const {
    if (rows_ != cols_ || b.rows() != rows_)
      throw KdecError("solve shape mismatch");
    Matrix aug(rows_, cols_ + b.cols());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      for (std::size_t j = 0; j < b.cols(); ++j)
        aug.at(i, cols_ + j) = b.at(i, j);
    }
    const std::vector<std::size_t> pivots = aug.rref();
    if (pivots.size() != cols_ ||
        (cols_ > 0 && pivots.back() != cols_ - 1))
      throw NotInvertible("singular matrix in solve");
    Matrix x(cols_, b.cols());
    for (std::size_t i = 0; i < cols_; ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        x.at(i, j) = aug.at(i, cols_ + j);
    return x;
  }

  Matrix inverse() const {
    if (rows_ != cols_) throw NotInvertible("non-square matrix");
    return solve(identity(rows_));
  }

  Rational determinant() const {
    if (rows_ != cols_) throw NotInvertible("non-square matrix");
    Matrix work = *this;
    Rational det(1);
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = c;
      while (p < rows_ && work.at(p, c) == 0) ++p;
      if (p == rows_) return Rational(0);
      if (p != c) {
        work.swap_rows(p, c);
        det = -det;
      }
      det *= work.at(c, c);
      const Rational inv = Rational(1) / work.at(c, c);
      for (std::size_t i = c + 1; i < rows_; ++i) {
        if (work.at(i, c) == 0) continue;
        const Rational f = work.at(i, c) * inv;
        for (std::size_t j = c; j < cols_; ++j) {
          if (work.at(c, j) == 0) continue;
          work.at(i, j) -= f * work.at(c, j);
        }
      }
    }
    return det;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> data_;
};

// Incremental echelon basis over sparse rows; used for rank-only dimension
// queries where materializing a dense system would be wasteful. Rows are
// sorted (column, value) lists.
class SparseEchelon {
 public:
  using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

  // Reduces the row against the current pivots and absorbs the remainder if
  // it is nonzero. Returns true when the row increased the rank.
  bool add_row(SparseRow row) {
    while (!row.empty()) {
      const std::size_t lead = row.front().first;
      const auto it = pivot_by_col_.find(lead);
      if (it == pivot_by_col_.end()) {
        // Normalize to a leading one for determinism.
        const Rational inv = Rational(1) / row.front().second;
        if (inv != 1)
          for (auto& e : row) e.second *= inv;
        pivot_by_col_.emplace(lead, rows_.size());
        rows_.push_back(std::move(row));
        return true;
      }
      row = combine(row, rows_[it->second], row.front().second);
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  // row - factor * pivot_row, with the pivot row known to have leading
  // coefficient 1 at row's leading column.
  static SparseRow combine(const SparseRow& row, const SparseRow& pivot,
                           const Rational& factor) {
    SparseRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t a = 0, b = 0;
    while (a < row.size() || b < pivot.size()) {
      if (b == pivot.size() ||
          (a < row.size() && row[a].first < pivot[b].first)) {
        out.push_back(row[a]);
        ++a;
      } else if (a == row.size() || pivot[b].first < row[a].first) {
        out.emplace_back(pivot[b].first, -factor * pivot[b].second);
        ++b;
      } else {
        Rational v = row[a].second - factor * pivot[b].second;
        if (v != 0) out.emplace_back(row[a].first, std::move(v));
        ++a;
        ++b;
      }
    }
    return out;
  }

  std::vector<SparseRow> rows_;
  std::map<std::size_t, std::size_t> pivot_by_col_;
};

}  // namespace kdec
