#include "fibral/linalg.hpp"

#include <cassert>
#include <utility>

namespace fibral {

namespace {

// Row-echelon elimination in place; returns the determinant factor
// accumulated from row swaps (+1 or -1), or 0 when singular.
int eliminate(RationalMatrix& m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  int sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      sign = -sign;
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m(row, col) == 0) continue;
      Rational factor = m(row, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(row, j) -= factor * m(col, j);
    }
  }
  return sign;
}

}  // namespace

Rational determinant(const RationalMatrix& m) {
  RationalMatrix work = m;
  const int sign = eliminate(work);
  if (sign == 0) return Rational(0);
  Rational det(sign);
  for (std::size_t i = 0; i < work.rows(); ++i) det *= work(i, i);
  return det;
}

Rational leading_minor(const RationalMatrix& m, std::size_t k) {
  assert(k <= m.rows() && k <= m.cols());
  RationalMatrix sub(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
  return determinant(sub);
}

std::optional<std::vector<Rational>> solve_unique(const RationalMatrix& a,
                                                  const std::vector<Rational>& b) {
  assert(a.rows() == a.cols() && a.rows() == b.size());
  const std::size_t n = a.rows();
  RationalMatrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col)
      for (std::size_t j = 0; j <= n; ++j) std::swap(m(pivot, j), m(col, j));
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m(row, col) == 0) continue;
      Rational factor = m(row, col) / m(col, col);
      for (std::size_t j = col; j <= n; ++j) m(row, j) -= factor * m(col, j);
    }
  }

  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational sum = m(i, n);
    for (std::size_t j = i + 1; j < n; ++j) sum -= m(i, j) * x[j];
    x[i] = sum / m(i, i);
  }
  return x;
}

std::vector<Rational> multiply(const RationalMatrix& m, const std::vector<Rational>& x) {
  assert(m.cols() == x.size());
  std::vector<Rational> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational sum(0);
    for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j) * x[j];
    out[i] = sum;
  }
  return out;
}

std::string to_string(const RationalMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i > 0) out += ",";
    out += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ",";
      out += to_string(m(i, j));
    }
    out += "]";
  }
  out += "]";
  return out;
}

}  // namespace fibral
