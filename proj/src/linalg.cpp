#include "liberator/linalg.hpp"

#include <stdexcept>

namespace liberator {

std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  for (const auto& row : m) {
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");
  }

  std::size_t next_row = 0;
  for (std::size_t col = 0; col < cols && next_row < rows; ++col) {
    // Smallest-height nonzero entry at or below next_row, lowest index ties.
    std::size_t best = rows;
    Integer best_height;
    for (std::size_t r = next_row; r < rows; ++r) {
      if (m[r][col] == 0) continue;
      const Integer h = height(m[r][col]);
      if (best == rows || h < best_height) {
        best = r;
        best_height = h;
      }
    }
    if (best == rows) continue;
    std::swap(m[next_row], m[best]);

    const Rational inv_pivot = Rational(1) / m[next_row][col];
    for (std::size_t c = col; c < cols; ++c) m[next_row][c] *= inv_pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next_row || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c) {
        m[r][c] -= factor * m[next_row][c];
      }
    }
    pivots.push_back(col);
    ++next_row;
  }
  return pivots;
}

std::size_t rank(RationalMatrix m) { return rref(m).size(); }

std::vector<std::vector<Rational>> nullspace(RationalMatrix a, std::size_t cols) {
  for (const auto& row : a) {
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");
  }
  const std::vector<std::size_t> pivots = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (const std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t p = 0; p < pivots.size(); ++p) {
      v[pivots[p]] = -a[p][free_col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

LinearSolution solve_affine(const RationalMatrix& a,
                            const std::vector<Rational>& b, std::size_t cols) {
  if (a.size() != b.size()) throw std::invalid_argument("shape mismatch");
  for (const auto& row : a) {
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");
  }
  if (a.empty()) {
    LinearSolution sol;
    sol.consistent = true;
    sol.particular.assign(cols, Rational(0));
    for (std::size_t c = 0; c < cols; ++c) {
      std::vector<Rational> v(cols, Rational(0));
      v[c] = 1;
      sol.kernel.push_back(std::move(v));
    }
    return sol;
  }

  RationalMatrix augmented = a;
  for (std::size_t r = 0; r < augmented.size(); ++r) {
    augmented[r].push_back(b[r]);
  }
  const std::vector<std::size_t> pivots = rref(augmented);

  LinearSolution sol;
  sol.consistent = true;
  for (const std::size_t c : pivots) {
    if (c == cols) {
      sol.consistent = false;  // pivot in the constants column
      return sol;
    }
  }
  sol.particular.assign(cols, Rational(0));
  for (std::size_t p = 0; p < pivots.size(); ++p) {
    sol.particular[pivots[p]] = augmented[p][cols];
  }
  sol.kernel = nullspace(a, cols);
  return sol;
}

}  // namespace liberator
