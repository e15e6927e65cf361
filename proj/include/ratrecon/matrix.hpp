#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ratrecon/field.hpp"

namespace ratrecon {

/// Dense row-major matrix. The fill value doubles as the zero prototype, so
/// even an empty matrix knows which ring it belongs to.
template <class T>
class Matrix {
public:
  Matrix(std::size_t rows, std::size_t cols, const T& zero)
      : rows_(rows), cols_(cols), zero_(zero), entries_(rows * cols, zero) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  const T& zero() const noexcept { return zero_; }

  T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<T>& entries() const noexcept { return entries_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

private:
  std::size_t rows_;
  std::size_t cols_;
  T zero_;
  std::vector<T> entries_;
};

using ExactMatrix = Matrix<FieldElement>;

/// Fraction-free Bareiss elimination with row pivoting on a zero pivot.
FieldElement det_bareiss(const ExactMatrix& m);

/// Laplace expansion, always along the remaining row with the most zero
/// entries in the remaining columns, memoized on (row set, column set).
/// Works for any commutative ring type providing is_zero/one_like and + - *.
/// Limited to 32x32.
template <class T>
T det_cofactor(const Matrix<T>& m) {
  if (!m.square()) throw Error(Errc::NonSquare, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return m.zero().one_like();
  if (n > 32) throw Error(Errc::SizeMismatch, "cofactor expansion limited to 32x32");

  std::unordered_map<std::uint64_t, T> memo;
  auto rec = [&](auto&& self, std::uint32_t row_mask, std::uint32_t col_mask) -> T {
    if (row_mask == 0) return m.zero().one_like();
    const std::uint64_t key = (std::uint64_t{row_mask} << 32) | col_mask;
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    std::size_t best_row = 0;
    int best_zeros = -1;
    for (std::size_t r = 0; r < n; ++r) {
      if (!(row_mask >> r & 1u)) continue;
      int zeros = 0;
      for (std::size_t c = 0; c < n; ++c)
        if ((col_mask >> c & 1u) && m(r, c).is_zero()) ++zeros;
      if (zeros > best_zeros) {
        best_zeros = zeros;
        best_row = r;
      }
    }
    const int row_pos = std::popcount(row_mask & ((1u << best_row) - 1u));
    T total = m.zero();
    int col_pos = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(col_mask >> c & 1u)) continue;
      if (!m(best_row, c).is_zero()) {
        T minor = self(self, row_mask & ~(1u << best_row), col_mask & ~(1u << c));
        if (!minor.is_zero()) {
          T term = m(best_row, c) * minor;
          if ((row_pos + col_pos) % 2 == 0) total = total + term;
          else total = total - term;
        }
      }
      ++col_pos;
    }
    memo.emplace(key, total);
    return total;
  };
  const std::uint32_t full = n == 32 ? 0xffffffffu : ((1u << n) - 1u);
  return rec(rec, full, full);
}

/// Basis of the right nullspace {v : A v = 0}, one vector per free column,
/// obtained from the reduced row echelon form.
std::vector<std::vector<FieldElement>> nullspace(const ExactMatrix& a);

/// Some solution of A x = b (free variables set to zero), or nullopt when
/// the system is inconsistent.
std::optional<std::vector<FieldElement>> solve_linear(const ExactMatrix& a, const std::vector<FieldElement>& b);

/// Rank via row reduction.
std::size_t rank(const ExactMatrix& a);

}  // namespace ratrecon
