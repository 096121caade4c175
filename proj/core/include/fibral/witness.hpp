#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fibral/rational.hpp"
#include "fibral/report.hpp"
#include "fibral/surface.hpp"

namespace fibral {

// One replayable step: the operation, the objects it consumed (by name or
// reference) and the values it produced, in canonical text form.
struct LogStep {
  std::string op;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> outputs;

  LogStep& in(std::string key, std::string value) {
    inputs.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  LogStep& out(std::string key, std::string value) {
    outputs.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  const std::string* input(const std::string& key) const;
  const std::string* output(const std::string& key) const;
};

struct ConstructionLog {
  std::vector<LogStep> steps;

  LogStep& add(std::string op) {
    steps.push_back(LogStep{std::move(op), {}, {}});
    return steps.back();
  }
  void append(const ConstructionLog& other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  }
};

// A decomposition  d1 - d2 + sum_v E_v  of a principal divisor: d1 has
// fresh horizontal support, d2 is a positive multiple of the ample profile,
// and the E_v are the fibral correction terms.  The scaling exponent is the
// least common denominator of all vertical coefficients, recorded so that
// consumers can pass to an integral multiple.
struct Witness {
  std::string id;
  HorizontalProfile d1;
  HorizontalProfile d2;
  std::map<std::string, FibralDivisor> vertical;
  Rational degree;  // m = generic degree of both sides
  Integer scaling_exponent = 1;
  ConstructionLog log;
};

// The vertical part at a place; nullptr when the map has no entry (E_v = 0).
const FibralDivisor* vertical_part(const Witness& witness, const std::string& place_id);

// Least common denominator of all stored vertical coefficients.
Integer vertical_common_denominator(const Witness& witness);

// Builds the witness for the given choice of one component per reducible
// place: degree m = n * ample degree, d2 = n * ample, d1 with fresh support
// pairing m/n_C only at the chosen component of each place, and per-place
// vertical parts solved exactly from the fiber form (coefficient 0 at the
// chosen component).
Witness synthesize_witness(const SurfaceModel& surface, const ChoiceMap& choice,
                           const Integer& n = 1, const std::string& witness_id = "w");

// Checks the five witness conditions: effectivity and support disjointness;
// integrality after scaling plus the principality surrogate; the strict
// degree bounds at every reducible place; concentration of the d1 pairing at
// the chosen component; and the vertical sign pattern.  The chosen component
// is inferred from the sign pattern (the unique component pairing
// negatively), falling back to the d1 concentration.
Report verify_witness(const SurfaceModel& surface, const Witness& witness);

// Adds r * fiber_vector to the vertical part at the given place and
// refreshes the scaling exponent; every verified condition is invariant
// under this translation.
void translate_vertical(const SurfaceModel& surface, Witness& witness,
                        const std::string& place_id, const Rational& r);

// Dense solution of  pairing(E, C_i) = target_i  with the coefficient at
// choice_index pinned to zero; used by synthesis and by certificate replay.
std::vector<Rational> solve_vertical_part(const FiberModel& fiber, std::size_t choice_index,
                                          const std::vector<Rational>& target);

}  // namespace fibral
