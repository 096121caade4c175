#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fibral/rational.hpp"

namespace fibral {

// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const RationalMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Exact determinant via Gaussian elimination with nonzero pivoting.
Rational determinant(const RationalMatrix& m);

// Determinant of the top-left k-by-k submatrix; k = 0 gives 1.
Rational leading_minor(const RationalMatrix& m, std::size_t k);

// Unique solution of a square system, or nullopt when the matrix is singular.
std::optional<std::vector<Rational>> solve_unique(const RationalMatrix& a,
                                                  const std::vector<Rational>& b);

std::vector<Rational> multiply(const RationalMatrix& m, const std::vector<Rational>& x);

// Canonical nested-bracket form, e.g. "[[-2,2],[2,-2]]".
std::string to_string(const RationalMatrix& m);

}  // namespace fibral
