#include "fibral/avoidance.hpp"

#include <algorithm>
#include <set>

#include "fibral/error.hpp"

namespace fibral {

namespace {

bool is_small_prime(unsigned q) {
  return q == 2 || q == 3 || q == 5 || q == 7 || q == 11 || q == 13;
}

void require_prime(unsigned q) {
  if (!is_small_prime(q))
    throw Error(ErrorCode::UsageError,
                "field size " + std::to_string(q) + " is not a prime at most 13");
}

unsigned power_mod(unsigned base, unsigned exponent, unsigned q) {
  unsigned value = 1;
  base %= q;
  for (unsigned i = 0; i < exponent; ++i) value = value * base % q;
  return value;
}

unsigned inverse_mod(unsigned value, unsigned q) {
  return power_mod(value, q - 2, q);  // q prime, value nonzero
}

void collect_exponents(unsigned remaining_vars, unsigned remaining_degree,
                       std::vector<unsigned>& prefix,
                       std::vector<std::vector<unsigned>>& out) {
  if (remaining_vars == 1) {
    prefix.push_back(remaining_degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (unsigned e = remaining_degree + 1; e-- > 0;) {
    prefix.push_back(e);
    collect_exponents(remaining_vars - 1, remaining_degree - e, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

ProjectivePoint make_projective_point(unsigned prime, const std::vector<long long>& raw) {
  require_prime(prime);
  if (raw.empty()) throw Error(ErrorCode::UsageError, "a point needs at least one coordinate");

  ProjectivePoint point;
  point.prime = prime;
  for (long long value : raw) {
    long long reduced = value % static_cast<long long>(prime);
    if (reduced < 0) reduced += prime;
    point.coords.push_back(static_cast<unsigned>(reduced));
  }

  auto first = std::find_if(point.coords.begin(), point.coords.end(),
                            [](unsigned c) { return c != 0; });
  if (first == point.coords.end())
    throw Error(ErrorCode::UsageError, "the zero tuple is not a projective point");
  const unsigned scale = inverse_mod(*first, prime);
  for (unsigned& c : point.coords) c = c * scale % prime;
  return point;
}

std::string to_string(const HomogeneousForm& form) {
  std::string out;
  for (const auto& [exponents, coefficient] : form.coefficients) {
    if (!out.empty()) out += " + ";
    std::string term;
    if (coefficient != 1) term = std::to_string(coefficient);
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (exponents[i] == 0) continue;
      if (!term.empty()) term += "*";
      term += "x" + std::to_string(i);
      if (exponents[i] > 1) term += "^" + std::to_string(exponents[i]);
    }
    if (term.empty()) term = "1";  // degree-0 monomial (never searched, but render it)
    out += term;
  }
  return out;
}

unsigned evaluate_form(const HomogeneousForm& form, const ProjectivePoint& point) {
  if (form.prime != point.prime)
    throw Error(ErrorCode::UsageError, "form and point live over different fields");
  if (form.variables != point.coords.size())
    throw Error(ErrorCode::UsageError, "form and point have different variable counts");
  const unsigned q = form.prime;
  unsigned value = 0;
  for (const auto& [exponents, coefficient] : form.coefficients) {
    unsigned term = coefficient % q;
    for (std::size_t i = 0; i < exponents.size(); ++i)
      term = term * power_mod(point.coords[i], exponents[i], q) % q;
    value = (value + term) % q;
  }
  return value;
}

std::vector<std::vector<unsigned>> monomial_exponents(unsigned variables, unsigned degree) {
  if (variables == 0) throw Error(ErrorCode::UsageError, "a form needs at least one variable");
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> prefix;
  collect_exponents(variables, degree, prefix, out);
  return out;
}

std::vector<ProjectivePoint> all_projective_points(unsigned prime, unsigned m) {
  require_prime(prime);
  std::vector<ProjectivePoint> points;
  // First nonzero coordinate at position p, fixed to 1; later coordinates free.
  for (unsigned p = 0; p <= m; ++p) {
    std::vector<unsigned> coords(m + 1, 0);
    coords[p] = 1;
    const unsigned free = m - p;
    std::vector<unsigned> counter(free, 0);
    while (true) {
      for (unsigned i = 0; i < free; ++i) coords[p + 1 + i] = counter[i];
      ProjectivePoint point;
      point.prime = prime;
      point.coords = coords;
      points.push_back(std::move(point));
      unsigned i = free;
      while (i > 0 && counter[i - 1] + 1 == prime) counter[--i] = 0;
      if (i == 0) break;
      ++counter[i - 1];
    }
  }
  return points;
}

HomogeneousForm find_avoiding_form(unsigned prime, unsigned m,
                                   const std::vector<ProjectivePoint>& points) {
  require_prime(prime);
  if (m < 1 || m > 3)
    throw Error(ErrorCode::UsageError, "projective dimension must be between 1 and 3");

  std::set<ProjectivePoint> targets;
  std::size_t space = 0;
  for (unsigned p = 0, power = 1; p <= m; ++p, power *= prime) space += power;
  for (const ProjectivePoint& point : points) {
    if (point.prime != prime)
      throw Error(ErrorCode::UsageError, "point is over a different field");
    if (point.coords.size() != m + 1)
      throw Error(ErrorCode::UsageError, "point has the wrong number of coordinates");
    targets.insert(point);
  }
  if (targets.size() > space)
    throw Error(ErrorCode::UsageError, "more target points than the space holds");

  for (unsigned degree = 1; degree <= 64; ++degree) {
    const std::vector<std::vector<unsigned>> monomials = monomial_exponents(m + 1, degree);
    const std::size_t k = monomials.size();
    std::vector<unsigned> c(k, 0);
    while (true) {
      // Advance the base-q odometer (last coefficient least significant).
      std::size_t i = k;
      while (i > 0 && c[i - 1] + 1 == prime) c[--i] = 0;
      if (i == 0) break;  // wrapped: this degree is exhausted
      ++c[i - 1];

      auto first = std::find_if(c.begin(), c.end(), [](unsigned v) { return v != 0; });
      if (*first != 1) continue;  // scalar multiple of an earlier candidate

      HomogeneousForm form;
      form.prime = prime;
      form.variables = m + 1;
      form.degree = degree;
      for (std::size_t j = 0; j < k; ++j)
        if (c[j] != 0) form.coefficients[monomials[j]] = c[j];

      bool avoids = true;
      for (const ProjectivePoint& point : targets)
        if (evaluate_form(form, point) == 0) {
          avoids = false;
          break;
        }
      if (avoids) return form;
    }
  }
  throw Error(ErrorCode::InternalInconsistency, "no avoiding form found below the degree cap");
}

}  // namespace fibral
