#include "fibral/kernel_solver.hpp"

#include "fibral/error.hpp"

namespace fibral {

std::string KernelHypothesisViolation::describe() const {
  switch (kind) {
    case Kind::NotSquare:
      return "matrix is not square";
    case Kind::DiagonalSign:
      return "diagonal entry (" + std::to_string(row) + "," + std::to_string(col) + ") = " +
             to_string(value) + " is not negative";
    case Kind::OffDiagonalSign:
      return "off-diagonal entry (" + std::to_string(row) + "," + std::to_string(col) + ") = " +
             to_string(value) + " is not positive";
    case Kind::RowSum:
      return "row " + std::to_string(row) + " sums to " + to_string(value);
  }
  return "unknown violation";
}

std::vector<KernelHypothesisViolation> hypothesis_violations(const RationalMatrix& matrix) {
  std::vector<KernelHypothesisViolation> violations;
  const std::size_t t = matrix.rows();
  if (t == 0 || matrix.cols() != t) {
    violations.push_back({KernelHypothesisViolation::Kind::NotSquare, 0, 0, Rational(0)});
    return violations;
  }
  for (std::size_t i = 0; i < t; ++i) {
    Rational sum(0);
    for (std::size_t j = 0; j < t; ++j) {
      sum += matrix(i, j);
      if (t < 2) continue;
      if (i == j && matrix(i, j) >= 0)
        violations.push_back({KernelHypothesisViolation::Kind::DiagonalSign, i, j, matrix(i, j)});
      if (i != j && matrix(i, j) <= 0)
        violations.push_back(
            {KernelHypothesisViolation::Kind::OffDiagonalSign, i, j, matrix(i, j)});
    }
    if (sum != 0) violations.push_back({KernelHypothesisViolation::Kind::RowSum, i, 0, sum});
  }
  return violations;
}

KernelProblem verify_kernel_hypotheses(RationalMatrix matrix) {
  auto violations = hypothesis_violations(matrix);
  if (!violations.empty()) {
    std::string detail;
    for (const auto& v : violations) {
      if (!detail.empty()) detail += "; ";
      detail += v.describe();
    }
    throw Error(ErrorCode::InvalidKernelProblem, detail);
  }
  return KernelProblem{std::move(matrix)};
}

namespace {

std::vector<Rational> solve_positive_kernel(const RationalMatrix& matrix) {
  auto violations = hypothesis_violations(matrix);
  if (!violations.empty())
    throw Error(ErrorCode::InvalidKernelProblem,
                "hypotheses broke during recursion: " + violations.front().describe());
  const std::size_t t = matrix.rows();
  if (t == 1) return {Rational(1)};

  std::vector<Rational> scale(t);
  RationalMatrix scaled(t, t);
  for (std::size_t i = 0; i < t; ++i) {
    scale[i] = Rational(-1) / matrix(i, i);
    for (std::size_t j = 0; j < t; ++j) scaled(i, j) = scale[i] * matrix(i, j);
  }

  RationalMatrix folded(t - 1, t - 1);
  for (std::size_t i = 0; i + 1 < t; ++i)
    for (std::size_t j = 0; j + 1 < t; ++j)
      folded(i, j) = scaled(i, j) + scaled(i, t - 1) * scaled(t - 1, j);

  std::vector<Rational> inner = solve_positive_kernel(folded);

  std::vector<Rational> lifted(t);
  Rational last(0);
  for (std::size_t i = 0; i + 1 < t; ++i) {
    lifted[i] = inner[i];
    last += inner[i] * scaled(i, t - 1);
  }
  lifted[t - 1] = last;

  std::vector<Rational> result(t);
  for (std::size_t i = 0; i < t; ++i) result[i] = scale[i] * lifted[i];
  return result;
}

}  // namespace

PositiveKernelVector positive_row_kernel(const KernelProblem& problem) {
  std::vector<Rational> raw = solve_positive_kernel(problem.entries);

  // Primitive integer representative of the ray.
  Integer lcm = common_denominator(raw);
  Integer gcd(0);
  std::vector<Rational> weights(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    weights[i] = raw[i] * Rational(lcm);
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), weights[i].get_num().get_mpz_t());
  }
  if (gcd > 1)
    for (Rational& value : weights) value /= Rational(gcd);
  for (const Rational& value : weights)
    if (value <= 0)
      throw Error(ErrorCode::InvalidKernelProblem, "solver produced a non-positive weight");
  return PositiveKernelVector{std::move(weights)};
}

std::vector<Integer> PositiveKernelVector::integer_weights() const {
  std::vector<Integer> result;
  result.reserve(weights.size());
  for (const Rational& w : weights) {
    if (!is_integral(w))
      throw Error(ErrorCode::InvalidKernelProblem, "weight " + to_string(w) + " is not integral");
    result.push_back(w.get_num());
  }
  return result;
}

}  // namespace fibral
