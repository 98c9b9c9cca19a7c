#ifndef LOGFORMS_MATRIX_HPP
#define LOGFORMS_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "logforms/fields.hpp"

namespace logforms {

/// Dense exact matrix with deterministic reduced-row-echelon elimination.
/// Pivot rows are chosen by sparsity (fewest nonzeros, ties to the lowest
/// index), so ranks, kernels and solutions are reproducible bit for bit.
template <class K>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const K& zero)
      : rows_(rows), cols_(cols), zero_(zero), a_(rows * cols, zero) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const K& zero_like() const { return zero_; }

  const K& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, const K& v) { a_[r * cols_ + c] = v; }

  /// In-place RREF; returns the pivot columns in increasing order.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      // sparsest candidate row
      std::size_t best = rows_;
      std::size_t best_nnz = 0;
      for (std::size_t r = row; r < rows_; ++r) {
        if (is_zero(at(r, col))) continue;
        std::size_t nnz = 0;
        for (std::size_t c = col; c < cols_; ++c)
          if (!is_zero(at(r, c))) ++nnz;
        if (best == rows_ || nnz < best_nnz) {
          best = r;
          best_nnz = nnz;
        }
      }
      if (best == rows_) continue;
      swap_rows(row, best);
      const K piv_inv = inv(at(row, col));
      for (std::size_t c = col; c < cols_; ++c) set(row, c, at(row, c) * piv_inv);
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == row || is_zero(at(r, col))) continue;
        const K factor = at(r, col);
        for (std::size_t c = col; c < cols_; ++c) set(r, c, at(r, c) - factor * at(row, c));
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix copy = *this;
    return copy.rref_in_place().size();
  }

  struct NullspaceResult {
    std::vector<std::vector<K>> basis;       // one vector per free column
    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> free_cols;      // basis[j] has a 1 at free_cols[j]
  };

  /// Kernel basis in RREF parametrization: basis vector j is 1 at its free
  /// column and 0 at every other free column, which makes membership tests
  /// and coordinate extraction exact one-pass operations.
  NullspaceResult nullspace() const {
    Matrix red = *this;
    const auto pivots = red.rref_in_place();
    NullspaceResult out;
    out.pivot_cols = pivots;
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!is_pivot[c]) out.free_cols.push_back(c);
    for (auto f : out.free_cols) {
      std::vector<K> v(cols_, zero_);
      v[f] = from_int_like(zero_, 1);
      for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red.at(i, f);
      out.basis.push_back(std::move(v));
    }
    return out;
  }

  /// One exact solution of A x = rhs with every free variable set to zero,
  /// or nullopt when the system is inconsistent.
  std::optional<std::vector<K>> solve(const std::vector<K>& rhs) const {
    if (rhs.size() != rows_) throw std::invalid_argument("solve: rhs length mismatch");
    Matrix aug(rows_, cols_ + 1, zero_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) aug.set(r, c, at(r, c));
      aug.set(r, cols_, rhs[r]);
    }
    const auto pivots = aug.rref_in_place();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<K> x(cols_, zero_);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, cols_);
    return x;
  }

  std::vector<K> apply(const std::vector<K>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("apply: length mismatch");
    std::vector<K> y(rows_, zero_);
    for (std::size_t r = 0; r < rows_; ++r) {
      K acc = zero_;
      for (std::size_t c = 0; c < cols_; ++c)
        if (!is_zero(at(r, c)) && !is_zero(x[c])) acc += at(r, c) * x[c];
      y[r] = acc;
    }
    return y;
  }

 private:
  std::size_t rows_, cols_;
  K zero_;
  std::vector<K> a_;

  void swap_rows(std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(a_[r1 * cols_ + c], a_[r2 * cols_ + c]);
  }
};

/// Exact rank of a small integer matrix (over Q).
inline std::size_t int_matrix_rank(const std::vector<std::vector<int>>& m) {
  if (m.empty()) return 0;
  Matrix<Rat> a(m.size(), m[0].size(), Rat(0));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) a.set(r, c, Rat(m[r][c]));
  return a.rank();
}

}  // namespace logforms

#endif  // LOGFORMS_MATRIX_HPP
