#include "fibral/witness.hpp"

#include <set>

#include "fibral/error.hpp"
#include "fibral/linalg.hpp"
#include "fibral/pairing.hpp"

namespace fibral {

const std::string* LogStep::input(const std::string& key) const {
  for (const auto& [k, v] : inputs)
    if (k == key) return &v;
  return nullptr;
}

const std::string* LogStep::output(const std::string& key) const {
  for (const auto& [k, v] : outputs)
    if (k == key) return &v;
  return nullptr;
}

const FibralDivisor* vertical_part(const Witness& witness, const std::string& place_id) {
  auto it = witness.vertical.find(place_id);
  return it == witness.vertical.end() ? nullptr : &it->second;
}

Integer vertical_common_denominator(const Witness& witness) {
  Integer result = 1;
  for (const auto& [place, divisor] : witness.vertical)
    for (const auto& [component, value] : divisor.coefficients) {
      Integer den = value.get_den();
      mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), den.get_mpz_t());
    }
  return result;
}

namespace {

// The component d1 concentrates on: the choice at reducible places, the
// unique component elsewhere.
const FiberComponent& concentration_component(const FiberModel& fiber, const ChoiceMap& choice) {
  if (fiber.size() == 1) return fiber.components[0];
  auto it = choice.choices.find(fiber.place_id);
  if (it == choice.choices.end())
    throw Error(ErrorCode::ChoiceMismatch, "no choice for reducible place '" + fiber.place_id + "'");
  auto index = component_index(fiber, it->second);
  if (!index)
    throw Error(ErrorCode::ChoiceMismatch, "choice '" + it->second + "' is not a component of '" +
                                               fiber.place_id + "'");
  return fiber.components[*index];
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ",";
    out += ids[i];
  }
  out += "]";
  return out;
}

}  // namespace

// Solve  pairing(E, C) = target_C  for all components, with the coefficient
// at the chosen component pinned to zero.  The restriction away from the
// chosen component is negative definite, so the reduced system is uniquely
// solvable; the remaining equation holds because the target is orthogonal to
// the radical.
std::vector<Rational> solve_vertical_part(const FiberModel& fiber, std::size_t choice_index,
                                          const std::vector<Rational>& target) {
  const std::size_t k = fiber.size();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < k; ++i)
    if (i != choice_index) keep.push_back(i);

  std::vector<Rational> dense(k, Rational(0));
  if (!keep.empty()) {
    RationalMatrix a(keep.size(), keep.size());
    std::vector<Rational> b(keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r) {
      b[r] = target[keep[r]];
      for (std::size_t c = 0; c < keep.size(); ++c) a(r, c) = fiber.pairing(keep[r], keep[c]);
    }
    auto solution = solve_unique(a, b);
    if (!solution)
      throw Error(ErrorCode::UnsolvableSystem,
                  "restricted fiber system at '" + fiber.place_id + "' is singular");
    for (std::size_t r = 0; r < keep.size(); ++r) dense[keep[r]] = (*solution)[r];
  }

  Rational residual(0);
  for (std::size_t j = 0; j < k; ++j) residual += fiber.pairing(choice_index, j) * dense[j];
  if (residual != target[choice_index])
    throw Error(ErrorCode::UnsolvableSystem,
                "pinned equation at '" + fiber.place_id + "' is inconsistent: residual " +
                    to_string(residual) + " expected " + to_string(target[choice_index]));
  return dense;
}

Witness synthesize_witness(const SurfaceModel& surface, const ChoiceMap& choice, const Integer& n,
                           const std::string& witness_id) {
  if (n < 1) throw Error(ErrorCode::UsageError, "n must be a positive integer");
  require_valid(surface);

  const std::vector<std::string> reducible = reducible_places(surface);
  if (choice.choices.size() != reducible.size())
    throw Error(ErrorCode::ChoiceMismatch,
                "choice map must cover exactly the reducible places (" +
                    std::to_string(reducible.size()) + " expected, " +
                    std::to_string(choice.choices.size()) + " given)");
  for (const std::string& v : reducible)
    concentration_component(surface.place(v), choice);  // validates key and value

  Witness witness;
  witness.id = witness_id;
  const Rational m = Rational(n) * surface.ample.generic_degree;
  witness.degree = m;

  auto& degree_step = witness.log.add("witness-degree");
  degree_step.in("witness", witness_id).in("n", to_string(n));
  degree_step.out("m", to_string(m));

  // d2 = n * ample, on the ample support.
  witness.d2.profile_id = witness_id + "/d2";
  witness.d2.generic_degree = m;
  witness.d2.support = surface.ample.support;
  for (const auto& [place, values] : surface.ample.pairings)
    for (const auto& [component, value] : values)
      witness.d2.pairings[place][component] = Rational(n) * value;

  // d1: fresh support, degree m, concentrated pairing per place.
  witness.d1.profile_id = witness_id + "/d1";
  witness.d1.generic_degree = m;
  std::vector<std::string> fresh;
  const std::size_t fresh_count = surface.places.empty() ? 1 : surface.places.size();
  for (std::size_t k = 0; k < fresh_count; ++k)
    fresh.push_back(witness_id + "/H" + std::to_string(k));
  witness.d1.support.insert(fresh.begin(), fresh.end());
  auto& support_step = witness.log.add("fresh-support");
  support_step.in("witness", witness_id);
  support_step.out("support", join_ids(fresh));

  for (const FiberModel& fiber : surface.places) {
    const FiberComponent& chosen = concentration_component(fiber, choice);
    const Rational value = m / Rational(chosen.multiplicity);
    witness.d1.pairings[fiber.place_id][chosen.id] = value;
    auto& step = witness.log.add("fresh-pairing");
    step.in("witness", witness_id).in("place", fiber.place_id).in("component", chosen.id);
    step.out("value", to_string(value));
  }

  // Vertical parts: exact solve per reducible place.
  for (const std::string& place_id : reducible) {
    const FiberModel& fiber = surface.place(place_id);
    const FiberComponent& chosen = concentration_component(fiber, choice);
    const std::size_t choice_index = *component_index(fiber, chosen.id);

    std::vector<Rational> target(fiber.size());
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      const FiberComponent& c = fiber.components[i];
      Rational d1_pairing = i == choice_index ? m / Rational(chosen.multiplicity) : Rational(0);
      target[i] =
          Rational(n) * profile_component_pairing(surface.ample, place_id, c.id) - d1_pairing;
    }

    std::vector<Rational> dense = solve_vertical_part(fiber, choice_index, target);
    witness.vertical[place_id] = make_divisor(fiber, dense);

    auto& step = witness.log.add("vertical-solve");
    step.in("witness", witness_id).in("place", place_id).in("choice", chosen.id);
    step.out("target", to_string(target)).out("coefficients", to_string(dense));
  }

  witness.scaling_exponent = vertical_common_denominator(witness);
  return witness;
}

Report verify_witness(const SurfaceModel& surface, const Witness& witness) {
  Report report;
  const std::string subject = "witness " + witness.id;
  const Rational& m = witness.degree;

  // Effectivity of d1 and disjointness from d2's support.
  bool effective = witness.d1.generic_degree > 0;
  for (const auto& [place, values] : witness.d1.pairings)
    for (const auto& [component, value] : values)
      if (value < 0) effective = false;
  report.add(subject, "effectivity", effective);

  std::string common;
  for (const std::string& id : witness.d1.support)
    if (witness.d2.support.count(id)) {
      common = id;
      break;
    }
  report.add(subject, "support disjointness", common.empty(),
             common.empty() ? "" : "shared identifier '" + common + "'");

  // Integrality after scaling by the recorded exponent.
  bool integral = witness.scaling_exponent >= 1;
  std::string integral_detail;
  for (const auto& [place, divisor] : witness.vertical) {
    for (const auto& [component, value] : divisor.coefficients) {
      if (!is_integral(value * Rational(witness.scaling_exponent))) {
        integral = false;
        integral_detail = "coefficient " + to_string(value) + " at " + place + ":" + component +
                          " not cleared by exponent " + to_string(witness.scaling_exponent);
        break;
      }
    }
    if (!integral) break;
  }
  report.add(subject, "scaled integrality", integral, integral_detail);

  // Principality surrogate at every place and component.
  bool surrogate = true;
  std::string surrogate_detail;
  for (const auto& [place, divisor] : witness.vertical)
    if (surface.find_place(place) == nullptr) {
      surrogate = false;
      surrogate_detail = "vertical part at unknown place '" + place + "'";
    }
  if (surrogate) {
    for (const FiberModel& fiber : surface.places) {
      for (const FiberComponent& c : fiber.components) {
        Rational residual;
        try {
          residual = profile_component_pairing(witness.d1, fiber.place_id, c.id) -
                     profile_component_pairing(witness.d2, fiber.place_id, c.id);
        } catch (const Error& e) {
          surrogate = false;
          surrogate_detail = e.what();
          break;
        }
        if (const FibralDivisor* ev = vertical_part(witness, fiber.place_id)) {
          FibralDivisor component_divisor{fiber.place_id, {{c.id, Rational(1)}}};
          residual += pair_fibral(fiber, *ev, component_divisor);
        }
        if (residual != 0) {
          surrogate = false;
          surrogate_detail = "residual " + to_string(residual) + " at " + fiber.place_id + ":" + c.id;
          break;
        }
      }
      if (!surrogate) break;
    }
  }
  report.add(subject, "principality surrogate", surrogate, surrogate_detail);

  // Per reducible place: strict degree bounds, pairing concentration at the
  // inferred chosen component, and the vertical sign pattern.
  for (const FiberModel& fiber : surface.places) {
    if (fiber.size() < 2) continue;
    const std::string& v = fiber.place_id;

    bool bounds = true;
    std::string bounds_detail;
    for (const FiberComponent& c : fiber.components) {
      Rational value(0);
      try {
        value = Rational(c.multiplicity) * profile_component_pairing(witness.d2, v, c.id);
      } catch (const Error&) {
        bounds = false;
        bounds_detail = "d2 undefined at " + v;
        break;
      }
      if (!(value > 0 && value < m)) {
        bounds = false;
        bounds_detail = "weighted pairing " + to_string(value) + " at " + c.id +
                        " outside (0, " + to_string(m) + ")";
        break;
      }
    }
    report.add(subject, "degree bounds at " + v, bounds, bounds_detail);

    // Weighted vertical pairings p_C = <E_v, n_C C>.
    std::vector<Rational> weighted(fiber.size(), Rational(0));
    if (const FibralDivisor* ev = vertical_part(witness, v)) {
      for (std::size_t i = 0; i < fiber.size(); ++i) {
        FibralDivisor scaled{v,
                             {{fiber.components[i].id, Rational(fiber.components[i].multiplicity)}}};
        weighted[i] = pair_fibral(fiber, *ev, scaled);
      }
    }

    // Inferred chosen component: unique negative weighted pairing, else the
    // unique component d1 pairs nonzero with.
    std::size_t negatives = 0, inferred = fiber.size();
    for (std::size_t i = 0; i < fiber.size(); ++i)
      if (weighted[i] < 0) {
        ++negatives;
        inferred = i;
      }
    if (negatives != 1) {
      std::size_t nonzero = 0, candidate = fiber.size();
      for (std::size_t i = 0; i < fiber.size(); ++i) {
        Rational value(0);
        try {
          value = profile_component_pairing(witness.d1, v, fiber.components[i].id);
        } catch (const Error&) {
        }
        if (value != 0) {
          ++nonzero;
          candidate = i;
        }
      }
      inferred = nonzero == 1 ? candidate : fiber.size();
    }

    bool concentration = inferred < fiber.size();
    std::string concentration_detail = concentration ? "" : "no identifiable chosen component";
    if (concentration) {
      for (std::size_t i = 0; i < fiber.size(); ++i) {
        Rational value(0);
        try {
          value = profile_component_pairing(witness.d1, v, fiber.components[i].id);
        } catch (const Error& e) {
          concentration = false;
          concentration_detail = e.what();
          break;
        }
        Rational expected =
            i == inferred ? m / Rational(fiber.components[i].multiplicity) : Rational(0);
        if (value != expected) {
          concentration = false;
          concentration_detail = "pairing " + to_string(value) + " at " +
                                 fiber.components[i].id + ", expected " + to_string(expected);
          break;
        }
      }
    }
    report.add(subject, "pairing concentration at " + v, concentration, concentration_detail);

    bool signs = inferred < fiber.size();
    std::string signs_detail = signs ? "" : "no identifiable chosen component";
    if (signs) {
      for (std::size_t i = 0; i < fiber.size(); ++i) {
        bool ok = i == inferred ? weighted[i] < 0 : weighted[i] > 0;
        if (!ok) {
          signs = false;
          signs_detail = "weighted pairing " + to_string(weighted[i]) + " at " +
                         fiber.components[i].id;
          break;
        }
      }
    }
    report.add(subject, "vertical signs at " + v, signs, signs_detail);
  }

  return report;
}

void translate_vertical(const SurfaceModel& surface, Witness& witness,
                        const std::string& place_id, const Rational& r) {
  const FiberModel& fiber = surface.place(place_id);
  std::vector<Rational> dense(fiber.size(), Rational(0));
  if (const FibralDivisor* ev = vertical_part(witness, place_id))
    dense = dense_coefficients(fiber, *ev);
  for (std::size_t i = 0; i < fiber.size(); ++i)
    dense[i] += r * Rational(fiber.components[i].multiplicity);
  FibralDivisor translated = make_divisor(fiber, dense);
  if (translated.coefficients.empty())
    witness.vertical.erase(place_id);
  else
    witness.vertical[place_id] = translated;
  witness.scaling_exponent = vertical_common_denominator(witness);
}

}  // namespace fibral
