#include "ratrecon/matrix.hpp"

namespace ratrecon {

FieldElement det_bareiss(const ExactMatrix& input) {
  if (!input.square()) throw Error(Errc::NonSquare, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return input.zero().one_like();

  ExactMatrix m = input;
  bool negate = false;
  FieldElement prev = input.zero().one_like();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return input.zero();
      m.swap_rows(k, pivot);
      negate = !negate;
    }
    const FieldElement inv_prev = prev.inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) * inv_prev;
      }
      m(i, k) = input.zero();
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(ExactMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    const FieldElement inv = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const FieldElement factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<FieldElement>> nullspace(const ExactMatrix& a) {
  ExactMatrix m = a;
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::vector<FieldElement>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElement> v(a.cols(), a.zero());
    v[free] = a.zero().one_like();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<FieldElement>> solve_linear(const ExactMatrix& a, const std::vector<FieldElement>& b) {
  if (b.size() != a.rows()) throw Error(Errc::SizeMismatch, "right-hand side length differs from row count");
  ExactMatrix aug(a.rows(), a.cols() + 1, a.zero());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  std::vector<FieldElement> x(a.cols(), a.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

std::size_t rank(const ExactMatrix& a) {
  ExactMatrix m = a;
  return rref(m).size();
}

}  // namespace ratrecon
