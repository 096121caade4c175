#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace fibral {

// A point of projective m-space over the field of q elements, stored by its
// canonical representative: the first nonzero coordinate equals 1.
struct ProjectivePoint {
  unsigned prime = 0;
  std::vector<unsigned> coords;

  bool operator==(const ProjectivePoint&) const = default;
  auto operator<=>(const ProjectivePoint&) const = default;
};

// Reduces the raw coordinates modulo the prime and rescales so the first
// nonzero coordinate is 1.  Rejects non-prime moduli, primes above 13, and
// the zero tuple.
ProjectivePoint make_projective_point(unsigned prime, const std::vector<long long>& raw);

// Homogeneous polynomial over the prime field: exponent vector -> nonzero
// coefficient; every exponent vector sums to the degree.  Keys descend
// lexicographically so iteration follows the enumeration order (x0 first).
struct HomogeneousForm {
  unsigned prime = 0;
  unsigned variables = 0;
  unsigned degree = 0;
  std::map<std::vector<unsigned>, unsigned, std::greater<std::vector<unsigned>>> coefficients;
};

// Readable rendering, e.g. "x0^2 + x0*x1 + x1^2", monomials in the
// enumeration order (descending lexicographic exponents).
std::string to_string(const HomogeneousForm& form);

// Value at the canonical representative; scaling-independence of the
// nonvanishing predicate is automatic for homogeneous forms.
unsigned evaluate_form(const HomogeneousForm& form, const ProjectivePoint& point);

// Exponent vectors of the given total degree, first exponent varying
// slowest, in descending lexicographic order.
std::vector<std::vector<unsigned>> monomial_exponents(unsigned variables, unsigned degree);

// Every point of projective m-space over the field of q elements, in
// canonical enumeration order.
std::vector<ProjectivePoint> all_projective_points(unsigned prime, unsigned m);

// Smallest-degree form (first in enumeration order within that degree)
// that is nonzero at every listed point.  Enumerates degree 1, 2, ... and,
// within a degree, coefficient vectors ascending as base-q numbers with the
// leading monomial most significant, keeping only canonical forms (first
// nonzero coefficient 1) so scalar multiples are visited once.
// Guards: q a prime <= 13, 1 <= m <= 3, point count at most the size of the
// whole projective space.
HomogeneousForm find_avoiding_form(unsigned prime, unsigned m,
                                   const std::vector<ProjectivePoint>& points);

}  // namespace fibral
