#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fibral/linalg.hpp"
#include "fibral/rational.hpp"

namespace fibral {

// Hypotheses on the interaction matrix: square; every row sums to zero; for
// size two or more, strictly negative diagonal and strictly positive
// off-diagonal entries.  A one-by-one matrix must be zero.
struct KernelHypothesisViolation {
  enum class Kind { NotSquare, DiagonalSign, OffDiagonalSign, RowSum };
  Kind kind = Kind::NotSquare;
  std::size_t row = 0;
  std::size_t col = 0;
  Rational value;

  std::string describe() const;
};

// Non-throwing hypothesis scan; empty result means the matrix qualifies.
std::vector<KernelHypothesisViolation> hypothesis_violations(const RationalMatrix& matrix);

struct KernelProblem {
  RationalMatrix entries;

  std::size_t size() const { return entries.rows(); }
};

// Validating constructor: returns the problem or throws with the precise
// list of violated hypotheses.
KernelProblem verify_kernel_hypotheses(RationalMatrix matrix);

// Strictly positive weights a with  sum_i a_i * row_i = 0, reduced to the
// primitive integer representative of the kernel ray.
struct PositiveKernelVector {
  std::vector<Rational> weights;

  std::vector<Integer> integer_weights() const;
};

// Solves by induction on the size: rescale each row so the diagonal is -1,
// fold the last row into the others, drop it, recurse, back-substitute.
// The hypotheses are asserted again at every level of the recursion.
PositiveKernelVector positive_row_kernel(const KernelProblem& problem);

}  // namespace fibral
