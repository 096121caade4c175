#include "fibral/surface.hpp"

#include <queue>
#include <set>

#include "fibral/error.hpp"
#include "fibral/pairing.hpp"

namespace fibral {

Rational FibralDivisor::coefficient(const std::string& component_id) const {
  auto it = coefficients.find(component_id);
  return it == coefficients.end() ? Rational(0) : it->second;
}

bool FibralDivisor::is_zero() const {
  for (const auto& [id, value] : coefficients)
    if (value != 0) return false;
  return true;
}

const std::map<std::string, Rational>* HorizontalProfile::pairings_at(
    const std::string& place_id) const {
  auto it = pairings.find(place_id);
  return it == pairings.end() ? nullptr : &it->second;
}

const FiberModel* SurfaceModel::find_place(const std::string& place_id) const {
  for (const FiberModel& fiber : places)
    if (fiber.place_id == place_id) return &fiber;
  return nullptr;
}

const FiberModel& SurfaceModel::place(const std::string& place_id) const {
  const FiberModel* fiber = find_place(place_id);
  if (fiber == nullptr)
    throw Error(ErrorCode::UnknownIdentifier, "no place '" + place_id + "' in surface '" + name + "'");
  return *fiber;
}

std::optional<std::size_t> component_index(const FiberModel& fiber,
                                           const std::string& component_id) {
  for (std::size_t i = 0; i < fiber.components.size(); ++i)
    if (fiber.components[i].id == component_id) return i;
  return std::nullopt;
}

FibralDivisor fiber_vector(const FiberModel& fiber) {
  FibralDivisor divisor{fiber.place_id, {}};
  for (const FiberComponent& c : fiber.components)
    divisor.coefficients[c.id] = Rational(c.multiplicity);
  return divisor;
}

std::vector<std::string> reducible_places(const SurfaceModel& surface) {
  std::vector<std::string> result;
  for (const FiberModel& fiber : surface.places)
    if (fiber.size() >= 2) result.push_back(fiber.place_id);
  return result;
}

std::vector<Rational> dense_coefficients(const FiberModel& fiber, const FibralDivisor& divisor) {
  if (divisor.place_id != fiber.place_id)
    throw Error(ErrorCode::PlaceMismatch, "divisor at place '" + divisor.place_id +
                                              "' paired against fiber at '" + fiber.place_id + "'");
  for (const auto& [id, value] : divisor.coefficients)
    if (!component_index(fiber, id))
      throw Error(ErrorCode::UnknownIdentifier,
                  "component '" + id + "' is not in the fiber at '" + fiber.place_id + "'");
  std::vector<Rational> dense(fiber.size(), Rational(0));
  for (std::size_t i = 0; i < fiber.size(); ++i)
    dense[i] = divisor.coefficient(fiber.components[i].id);
  return dense;
}

FibralDivisor make_divisor(const FiberModel& fiber, const std::vector<Rational>& dense) {
  FibralDivisor divisor{fiber.place_id, {}};
  for (std::size_t i = 0; i < fiber.size() && i < dense.size(); ++i)
    if (dense[i] != 0) divisor.coefficients[fiber.components[i].id] = dense[i];
  return divisor;
}

namespace {

bool support_graph_connected(const FiberModel& fiber) {
  const std::size_t n = fiber.size();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    std::size_t i = frontier.front();
    frontier.pop();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || seen[j]) continue;
      if (fiber.pairing(i, j) > 0) {
        seen[j] = true;
        ++reached;
        frontier.push(j);
      }
    }
  }
  return reached == n;
}

}  // namespace

void check_fiber_structure(const FiberModel& fiber, Report& report) {
  const std::string subject = "fiber " + fiber.place_id;
  const std::size_t n = fiber.size();

  bool shape_ok = n > 0 && fiber.pairing.rows() == n && fiber.pairing.cols() == n;
  report.add(subject, "matrix shape", shape_ok,
             shape_ok ? "" : "pairing matrix must be square of component count");
  if (!shape_ok) return;

  bool multiplicities_ok = true;
  for (const FiberComponent& c : fiber.components)
    if (c.multiplicity <= 0) multiplicities_ok = false;
  report.add(subject, "positive multiplicities", multiplicities_ok);

  bool symmetric = true;
  for (std::size_t i = 0; i < n && symmetric; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (fiber.pairing(i, j) != fiber.pairing(j, i)) {
        symmetric = false;
        break;
      }
  report.add(subject, "symmetry", symmetric);

  bool signs_ok = true;
  for (std::size_t i = 0; i < n && signs_ok; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && fiber.pairing(i, j) < 0) {
        signs_ok = false;
        break;
      }
  report.add(subject, "off-diagonal sign", signs_ok);

  report.add(subject, "connectivity", support_graph_connected(fiber));

  // Weighted kernel identity: sum over C' of n_{C'} <C, C'> = 0 for each row.
  bool kernel_ok = true;
  std::string kernel_detail;
  if (multiplicities_ok) {
    for (std::size_t i = 0; i < n; ++i) {
      Rational sum(0);
      for (std::size_t j = 0; j < n; ++j)
        sum += Rational(fiber.components[j].multiplicity) * fiber.pairing(i, j);
      if (sum != 0) {
        kernel_ok = false;
        kernel_detail = "row " + fiber.components[i].id + " weighted sum " + to_string(sum);
        break;
      }
    }
  } else {
    kernel_ok = false;
    kernel_detail = "multiplicities invalid";
  }
  report.add(subject, "weighted kernel identity", kernel_ok, kernel_detail);
}

Report validate_surface(const SurfaceModel& surface) {
  Report report;
  const std::string subject = "surface " + surface.name;

  std::set<std::string> place_ids;
  bool places_unique = true;
  for (const FiberModel& fiber : surface.places)
    if (!place_ids.insert(fiber.place_id).second) places_unique = false;
  report.add(subject, "unique place identifiers", places_unique);

  bool components_unique = true;
  for (const FiberModel& fiber : surface.places) {
    std::set<std::string> ids;
    for (const FiberComponent& c : fiber.components)
      if (!ids.insert(c.id).second) components_unique = false;
  }
  report.add(subject, "unique component identifiers", components_unique);

  bool structure_ok = true;
  for (const FiberModel& fiber : surface.places) {
    Report fiber_report;
    check_fiber_structure(fiber, fiber_report);
    if (!fiber_report.all_passed()) structure_ok = false;
    report.entries.insert(report.entries.end(), fiber_report.entries.begin(),
                          fiber_report.entries.end());
  }

  for (const FiberModel& fiber : surface.places) {
    const std::string fiber_subject = "fiber " + fiber.place_id;
    if (!structure_ok && !components_unique) {
      report.add(fiber_subject, "semidefiniteness certificate", false, "structure checks failed");
      continue;
    }
    try {
      check_fiber_form(fiber);
      report.add(fiber_subject, "semidefiniteness certificate", true);
    } catch (const Error& e) {
      report.add(fiber_subject, "semidefiniteness certificate", false, e.what());
    }
  }

  // Ample profile: defined everywhere, strictly positive on every
  // component, and satisfying the per-place degree identity.
  const HorizontalProfile& ample = surface.ample;
  const std::string ample_subject = "ample " + ample.profile_id;
  report.add(ample_subject, "positive generic degree", ample.generic_degree > 0);
  report.add(ample_subject, "nonempty support", !ample.support.empty());
  for (const FiberModel& fiber : surface.places) {
    const auto* values = ample.pairings_at(fiber.place_id);
    if (values == nullptr) {
      report.add(ample_subject, "defined at " + fiber.place_id, false);
      continue;
    }
    bool positive = true;
    Rational weighted_sum(0);
    for (const FiberComponent& c : fiber.components) {
      auto it = values->find(c.id);
      Rational value = it == values->end() ? Rational(0) : it->second;
      if (value <= 0) positive = false;
      weighted_sum += Rational(c.multiplicity) * value;
    }
    report.add(ample_subject, "strictly positive pairings at " + fiber.place_id, positive);
    report.add(ample_subject, "degree identity at " + fiber.place_id,
               weighted_sum == ample.generic_degree,
               weighted_sum == ample.generic_degree
                   ? ""
                   : "weighted sum " + to_string(weighted_sum) + " != degree " +
                         to_string(ample.generic_degree));
  }

  return report;
}

void require_valid(const SurfaceModel& surface) {
  Report report = validate_surface(surface);
  if (!report.all_passed()) {
    std::string detail;
    for (const CheckEntry& e : report.entries)
      if (!e.passed) {
        detail = e.subject + ": " + e.check;
        break;
      }
    throw Error(ErrorCode::InvalidSurface,
                "surface '" + surface.name + "' failed validation (" + detail + ")");
  }
}

}  // namespace fibral
