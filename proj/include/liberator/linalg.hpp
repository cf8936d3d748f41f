#pragma once

#include "liberator/rational.hpp"

#include <cstddef>
#include <vector>

namespace liberator {

using RationalMatrix = std::vector<std::vector<Rational>>;

// In-place reduced row echelon form over the rationals. Within each column
// the pivot row is the not-yet-used row whose entry has the smallest height
// (ties broken by lowest row index), which keeps intermediate numbers small
// and the result deterministic. Returns the pivot column indices in order.
std::vector<std::size_t> rref(RationalMatrix& m);

std::size_t rank(RationalMatrix m);

// Basis of the right nullspace of A (n columns). For each non-pivot column a
// basis vector is emitted with 1 in that column, in ascending column order.
std::vector<std::vector<Rational>> nullspace(RationalMatrix a, std::size_t cols);

struct LinearSolution {
  bool consistent = false;
  std::vector<Rational> particular;             // free variables set to 0
  std::vector<std::vector<Rational>> kernel;    // nullspace basis of A
};

// Solves A x = b exactly for x of the given width (rows may be empty).
LinearSolution solve_affine(const RationalMatrix& a,
                            const std::vector<Rational>& b, std::size_t cols);

}  // namespace liberator
