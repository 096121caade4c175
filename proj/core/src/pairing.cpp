#include "fibral/pairing.hpp"

#include "fibral/error.hpp"
#include "fibral/linalg.hpp"

namespace fibral {

Rational pair_fibral(const FiberModel& fiber, const FibralDivisor& a, const FibralDivisor& b) {
  std::vector<Rational> x = dense_coefficients(fiber, a);
  std::vector<Rational> y = dense_coefficients(fiber, b);
  Rational sum(0);
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < fiber.size(); ++j) sum += x[i] * fiber.pairing(i, j) * y[j];
  }
  return sum;
}

Rational profile_component_pairing(const HorizontalProfile& profile, const std::string& place_id,
                                   const std::string& component_id) {
  const auto* values = profile.pairings_at(place_id);
  if (values == nullptr)
    throw Error(ErrorCode::ProfileUndefinedAtPlace,
                "profile '" + profile.profile_id + "' has no pairings at place '" + place_id + "'");
  auto it = values->find(component_id);
  return it == values->end() ? Rational(0) : it->second;
}

Rational pair_horizontal(const HorizontalProfile& profile, const FiberModel& fiber,
                         const FibralDivisor& divisor) {
  if (divisor.place_id != fiber.place_id)
    throw Error(ErrorCode::PlaceMismatch, "divisor at place '" + divisor.place_id +
                                              "' paired against fiber at '" + fiber.place_id + "'");
  Rational sum(0);
  for (const auto& [component_id, value] : divisor.coefficients) {
    if (!component_index(fiber, component_id))
      throw Error(ErrorCode::UnknownIdentifier,
                  "component '" + component_id + "' is not in the fiber at '" + fiber.place_id + "'");
    if (value != 0) sum += value * profile_component_pairing(profile, fiber.place_id, component_id);
  }
  return sum;
}

Rational quadratic_value(const FiberModel& fiber, const std::vector<Rational>& coefficients) {
  if (coefficients.size() != fiber.size())
    throw Error(ErrorCode::PlaceMismatch, "coefficient vector does not match fiber size");
  Rational sum(0);
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    if (coefficients[i] == 0) continue;
    for (std::size_t j = 0; j < fiber.size(); ++j)
      sum += coefficients[i] * fiber.pairing(i, j) * coefficients[j];
  }
  return sum;
}

SemidefinitenessCertificate check_fiber_form(const FiberModel& fiber) {
  const std::size_t n = fiber.size();
  if (n == 0) throw Error(ErrorCode::InvalidFiber, "fiber has no components");

  // The multiplicity vector must already lie in the radical; without that
  // the minor certificate below proves nothing about the kernel.
  for (std::size_t i = 0; i < n; ++i) {
    Rational sum(0);
    for (std::size_t j = 0; j < n; ++j)
      sum += fiber.pairing(i, j) * Rational(fiber.components[j].multiplicity);
    if (sum != 0)
      throw Error(ErrorCode::InvalidFiber, "multiplicity vector of fiber " + fiber.place_id +
                                               " is not in the radical of the pairing");
  }

  SemidefinitenessCertificate cert;
  cert.place_id = fiber.place_id;
  cert.base_component = fiber.components[0].id;
  cert.kernel_basis = fiber_vector(fiber);
  if (n == 1) return cert;

  // Negated restriction to the non-base components.
  RationalMatrix negated(n - 1, n - 1);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; j < n; ++j) negated(i - 1, j - 1) = -fiber.pairing(i, j);

  cert.restricted_minors.reserve(n - 1);
  for (std::size_t k = 1; k <= n - 1; ++k)
    cert.restricted_minors.push_back(leading_minor(negated, k));

  if (cert.restricted_minors.back() == 0)
    throw Error(ErrorCode::KernelTooLarge,
                "fiber " + fiber.place_id + " has radical of dimension above one");
  for (std::size_t k = 0; k < cert.restricted_minors.size(); ++k)
    if (cert.restricted_minors[k] <= 0)
      throw Error(ErrorCode::NotSemidefinite,
                  "fiber " + fiber.place_id + " form takes positive values (minor " +
                      std::to_string(k + 1) + " = " + to_string(cert.restricted_minors[k]) + ")");
  return cert;
}

}  // namespace fibral
