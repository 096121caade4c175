#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fibral/linalg.hpp"
#include "fibral/rational.hpp"
#include "fibral/report.hpp"

namespace fibral {

struct FiberComponent {
  std::string id;
  Integer multiplicity;  // n_C > 0
};

// One closed fiber of the model: its irreducible components with
// multiplicities and the symmetric intersection matrix between them,
// in component declaration order.
struct FiberModel {
  std::string place_id;
  std::vector<FiberComponent> components;
  RationalMatrix pairing;

  std::size_t size() const { return components.size(); }
};

// Rational coefficient vector supported on one fiber's components.
// Absent entries mean coefficient zero.
struct FibralDivisor {
  std::string place_id;
  std::map<std::string, Rational> coefficients;

  Rational coefficient(const std::string& component_id) const;
  bool is_zero() const;
};

// A horizontal divisor seen through its generic degree, its pairing
// against every fiber component, and an abstract support set.
struct HorizontalProfile {
  std::string profile_id;
  Rational generic_degree;
  std::map<std::string, std::map<std::string, Rational>> pairings;  // place -> component -> value
  std::set<std::string> support;

  const std::map<std::string, Rational>* pairings_at(const std::string& place_id) const;
};

// Component selection at reducible places.
struct ChoiceMap {
  std::map<std::string, std::string> choices;  // place -> component
};

struct SurfaceModel {
  std::string name;
  std::vector<FiberModel> places;
  bool class_group_torsion = false;
  HorizontalProfile ample;

  const FiberModel* find_place(const std::string& place_id) const;
  const FiberModel& place(const std::string& place_id) const;  // throws UnknownIdentifier
};

std::optional<std::size_t> component_index(const FiberModel& fiber, const std::string& component_id);

// The fiber as a divisor: coefficient n_C at every component.
FibralDivisor fiber_vector(const FiberModel& fiber);

// Places whose fiber has at least two components, in declaration order.
// Derived, never stored.
std::vector<std::string> reducible_places(const SurfaceModel& surface);

// Dense coefficient vector in component declaration order; rejects
// coefficients referencing components outside the fiber.
std::vector<Rational> dense_coefficients(const FiberModel& fiber, const FibralDivisor& divisor);

// Builds a divisor from a dense vector, dropping zero entries.
FibralDivisor make_divisor(const FiberModel& fiber, const std::vector<Rational>& dense);

// Structural checks for one fiber: matrix shape, symmetry, off-diagonal
// signs, connectivity of the positive-entry graph, and the weighted
// kernel identity (the multiplicity vector annihilates the matrix).
void check_fiber_structure(const FiberModel& fiber, Report& report);

// Full validation: per-fiber structure, the semidefiniteness certificate,
// and the ample profile (strictly positive pairings, per-place degree
// identity, nonempty support).
Report validate_surface(const SurfaceModel& surface);

// Throws InvalidSurface unless validate_surface passes.
void require_valid(const SurfaceModel& surface);

}  // namespace fibral
