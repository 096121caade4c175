#pragma once

#include <string>
#include <vector>

#include "fibral/rational.hpp"
#include "fibral/surface.hpp"

namespace fibral {

// Witness that the intersection form of a fiber is negative semidefinite
// with kernel exactly the span of the multiplicity vector: the restriction
// obtained by deleting the base component is negative definite, certified by
// the leading principal minors of its negation (all strictly positive).
struct SemidefinitenessCertificate {
  std::string place_id;
  std::string base_component;
  std::vector<Rational> restricted_minors;  // sizes 1 .. n-1 of the negated restriction
  FibralDivisor kernel_basis;               // the multiplicity vector
};

// <a, b> for two vertical divisors supported on the same fiber.
Rational pair_fibral(const FiberModel& fiber, const FibralDivisor& a, const FibralDivisor& b);

// <profile, divisor> where the profile's fibral pairings are read off the
// stored table; components absent from the table pair to zero.
Rational pair_horizontal(const HorizontalProfile& profile, const FiberModel& fiber,
                         const FibralDivisor& divisor);

// Pairing of the profile against a single component of a fiber.
Rational profile_component_pairing(const HorizontalProfile& profile, const std::string& place_id,
                                   const std::string& component_id);

// Value of the intersection form on a dense coefficient vector.
Rational quadratic_value(const FiberModel& fiber, const std::vector<Rational>& coefficients);

// Certify the fiber form, or throw: NotSemidefinite when the form takes a
// positive value, KernelTooLarge when the radical has dimension above one.
SemidefinitenessCertificate check_fiber_form(const FiberModel& fiber);

}  // namespace fibral
