#include "fibral/clearing.hpp"

#include <algorithm>

#include "fibral/error.hpp"
#include "fibral/kernel_solver.hpp"
#include "fibral/linalg.hpp"
#include "fibral/pairing.hpp"
#include "fibral/serialization.hpp"

namespace fibral {

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ",";
    out += ids[i];
  }
  out += "]";
  return out;
}

std::vector<Rational> as_rationals(const std::vector<Integer>& values) {
  std::vector<Rational> out;
  out.reserve(values.size());
  for (const Integer& v : values) out.emplace_back(v);
  return out;
}

void scale_profile(HorizontalProfile& profile, const Rational& factor) {
  profile.generic_degree *= factor;
  for (auto& [place, values] : profile.pairings)
    for (auto& [component, value] : values) value *= factor;
}

Witness clear_impl(const SurfaceModel& surface, const std::vector<std::string>& all_places,
                   const std::set<std::string>& allowed, const ChoiceMap& c0,
                   const std::string& id) {
  std::string v0;
  for (const std::string& v : all_places)
    if (!allowed.count(v)) {
      v0 = v;
      break;
    }
  if (v0.empty()) return synthesize_witness(surface, c0, 1, id);

  const FiberModel& fiber = surface.place(v0);
  std::map<std::string, Witness> parts;
  for (const FiberComponent& c : fiber.components) {
    std::set<std::string> child_allowed = allowed;
    child_allowed.insert(v0);
    ChoiceMap child_choice = c0;
    child_choice.choices[v0] = c.id;
    parts.emplace(c.id, clear_impl(surface, all_places, child_allowed, child_choice,
                                   id + "." + c.id));
  }

  // Interaction matrix of the parts' vertical parts at v0 against the
  // weighted components; its rows sum to zero by the kernel identity and its
  // signs follow the witness sign pattern, so the solver hypotheses hold.
  const std::size_t t = fiber.size();
  RationalMatrix w_matrix(t, t);
  std::vector<std::string> part_ids;
  for (std::size_t i = 0; i < t; ++i) {
    const Witness& part = parts.at(fiber.components[i].id);
    part_ids.push_back(part.id);
    const FibralDivisor* e = vertical_part(part, v0);
    if (e == nullptr)
      throw Error(ErrorCode::InternalInconsistency,
                  "recursive witness '" + part.id + "' has no vertical part at '" + v0 + "'");
    for (std::size_t j = 0; j < t; ++j) {
      FibralDivisor weighted{
          v0, {{fiber.components[j].id, Rational(fiber.components[j].multiplicity)}}};
      w_matrix(i, j) = pair_fibral(fiber, *e, weighted);
    }
  }

  KernelProblem problem = verify_kernel_hypotheses(w_matrix);
  PositiveKernelVector kernel = positive_row_kernel(problem);
  std::vector<Integer> weights = kernel.integer_weights();

  Witness combined = combine_witnesses(surface, v0, parts, weights, id);

  LogStep matrix_step{"interaction-matrix", {}, {}};
  matrix_step.in("place", v0).in("parts", join_ids(part_ids));
  matrix_step.out("matrix", to_string(w_matrix));
  LogStep weights_step{"kernel-weights", {}, {}};
  weights_step.in("place", v0);
  weights_step.out("weights", to_string(kernel.weights));
  auto& steps = combined.log.steps;
  steps.insert(steps.end() - 1, {matrix_step, weights_step});

  return remove_principal_fiber(surface, combined, v0).first;
}

}  // namespace

std::size_t recursion_width(const SurfaceModel& surface, const std::set<std::string>& allowed) {
  std::size_t width = 1;
  for (const std::string& v : reducible_places(surface)) {
    if (allowed.count(v)) continue;
    const std::size_t size = surface.place(v).size();
    if (width > (std::size_t{1} << 52) / size) return std::size_t{1} << 52;  // saturate
    width *= size;
  }
  return width;
}

Witness clear(const SurfaceModel& surface, const std::set<std::string>& allowed,
              const ChoiceMap& c0, const ClearOptions& options) {
  if (!surface.class_group_torsion)
    throw Error(ErrorCode::TorsionRequired,
                "clearing requires class_group_torsion=true on the surface");
  require_valid(surface);

  std::vector<std::string> places = reducible_places(surface);
  std::sort(places.begin(), places.end());
  for (const std::string& v : allowed)
    if (std::find(places.begin(), places.end(), v) == places.end())
      throw Error(ErrorCode::ChoiceMismatch, "allowed place '" + v + "' is not reducible");
  if (c0.choices.size() != allowed.size())
    throw Error(ErrorCode::ChoiceMismatch, "choices must cover exactly the allowed places");
  for (const auto& [place, component] : c0.choices) {
    if (!allowed.count(place))
      throw Error(ErrorCode::ChoiceMismatch, "choice given for place '" + place +
                                                 "' outside the allowed set");
    if (!component_index(surface.place(place), component))
      throw Error(ErrorCode::ChoiceMismatch,
                  "choice '" + component + "' is not a component of '" + place + "'");
  }

  const std::size_t width = recursion_width(surface, allowed);
  if (width > options.max_width)
    throw Error(ErrorCode::WidthGuardExceeded,
                "recursion width " + std::to_string(width) + " exceeds the limit " +
                    std::to_string(options.max_width));

  return clear_impl(surface, places, allowed, c0, options.root_id);
}

Witness combine_witnesses(const SurfaceModel& surface, const std::string& v0,
                          const std::map<std::string, Witness>& parts,
                          const std::vector<Integer>& weights, const std::string& result_id) {
  const FiberModel& fiber = surface.place(v0);
  const std::size_t t = fiber.size();
  if (parts.size() != t || weights.size() != t)
    throw Error(ErrorCode::KeyMismatch, "parts and weights must cover exactly the " +
                                            std::to_string(t) + " components of '" + v0 + "'");
  for (const FiberComponent& c : fiber.components)
    if (!parts.count(c.id))
      throw Error(ErrorCode::KeyMismatch, "no part for component '" + c.id + "'");
  for (const Integer& a : weights)
    if (a < 1) throw Error(ErrorCode::UsageError, "combination weights must be positive integers");

  std::vector<const Witness*> ordered;
  for (const FiberComponent& c : fiber.components) ordered.push_back(&parts.at(c.id));

  const std::set<std::string>& d2_support = ordered.front()->d2.support;
  for (const Witness* part : ordered)
    if (part->d2.support != d2_support)
      throw Error(ErrorCode::KeyMismatch, "parts disagree on the effective-side support");

  std::set<std::string> d1_support;
  for (const Witness* part : ordered)
    for (const std::string& id : part->d1.support) {
      if (!d1_support.insert(id).second)
        throw Error(ErrorCode::SupportCollision, "horizontal identifier '" + id +
                                                     "' appears in two parts");
      if (d2_support.count(id))
        throw Error(ErrorCode::SupportCollision,
                    "horizontal identifier '" + id + "' collides with the effective side");
    }

  Witness out;
  out.id = result_id;
  out.degree = 0;
  for (std::size_t i = 0; i < t; ++i) out.degree += Rational(weights[i]) * ordered[i]->degree;

  out.d1.profile_id = result_id + "/d1";
  out.d1.generic_degree = out.degree;
  out.d1.support = d1_support;
  out.d2.profile_id = result_id + "/d2";
  out.d2.generic_degree = out.degree;
  out.d2.support = d2_support;
  for (std::size_t i = 0; i < t; ++i) {
    const Rational a{weights[i]};
    for (const auto& [place, values] : ordered[i]->d1.pairings)
      for (const auto& [component, value] : values) out.d1.pairings[place][component] += a * value;
    for (const auto& [place, values] : ordered[i]->d2.pairings)
      for (const auto& [component, value] : values) out.d2.pairings[place][component] += a * value;
  }

  std::set<std::string> vertical_places{v0};
  for (const Witness* part : ordered)
    for (const auto& [place, divisor] : part->vertical) vertical_places.insert(place);
  for (const std::string& place : vertical_places) {
    const FiberModel& place_fiber = surface.place(place);
    std::vector<Rational> dense(place_fiber.size(), Rational(0));
    for (std::size_t i = 0; i < t; ++i)
      if (const FibralDivisor* e = vertical_part(*ordered[i], place)) {
        std::vector<Rational> part_dense = dense_coefficients(place_fiber, *e);
        for (std::size_t k = 0; k < dense.size(); ++k)
          dense[k] += Rational(weights[i]) * part_dense[k];
      }
    FibralDivisor sum = make_divisor(place_fiber, dense);
    if (!sum.coefficients.empty() || place == v0) out.vertical[place] = sum;
  }
  out.scaling_exponent = vertical_common_denominator(out);

  for (const Witness* part : ordered) out.log.append(part->log);
  std::vector<std::string> part_ids;
  for (const Witness* part : ordered) part_ids.push_back(part->id);
  auto& step = out.log.add("combine");
  step.in("place", v0)
      .in("parts", join_ids(part_ids))
      .in("weights", to_string(as_rationals(weights)))
      .in("result", result_id);
  step.out("degree", to_string(out.degree));
  for (const auto& [place, divisor] : out.vertical)
    step.out("vertical:" + place, to_string(dense_coefficients(surface.place(place), divisor)));
  step.out("exponent", to_string(out.scaling_exponent));
  return out;
}

std::pair<Witness, Integer> remove_principal_fiber(const SurfaceModel& surface, const Witness& w,
                                                   const std::string& v0) {
  if (!surface.class_group_torsion)
    throw Error(ErrorCode::TorsionRequired,
                "removing a fiber multiple requires class_group_torsion=true");
  const FiberModel& fiber = surface.place(v0);
  std::vector<Rational> dense(fiber.size(), Rational(0));
  if (const FibralDivisor* e = vertical_part(w, v0)) dense = dense_coefficients(fiber, *e);

  for (std::size_t j = 0; j < fiber.size(); ++j) {
    Rational pairing(0);
    for (std::size_t k = 0; k < fiber.size(); ++k) pairing += dense[k] * fiber.pairing(k, j);
    if (pairing != 0)
      throw Error(ErrorCode::NonzeroPairing,
                  "vertical part at '" + v0 + "' pairs to " + to_string(pairing) + " with '" +
                      fiber.components[j].id + "'");
  }

  const Rational r = dense[0] / Rational(fiber.components[0].multiplicity);
  for (std::size_t i = 0; i < fiber.size(); ++i)
    if (dense[i] != r * Rational(fiber.components[i].multiplicity))
      throw Error(ErrorCode::NotFiberMultiple,
                  "vertical part at '" + v0 + "' is not a rational multiple of the fiber");

  const Integer d = r.get_den();
  Witness out = w;
  out.vertical.erase(v0);
  const Rational factor{d};
  out.degree *= factor;
  scale_profile(out.d1, factor);
  scale_profile(out.d2, factor);
  for (auto& [place, divisor] : out.vertical)
    for (auto& [component, value] : divisor.coefficients) value *= factor;
  out.scaling_exponent = vertical_common_denominator(out);

  auto& step = out.log.add("remove-fiber");
  step.in("place", v0).in("witness", w.id);
  step.out("ratio", to_string(r))
      .out("exponent", to_string(d))
      .out("constant-divisor", to_string(r.get_num()) + "*fiber[" + v0 + "]");
  return {std::move(out), d};
}

MorphismCertificate prove_theorem(const SurfaceModel& surface, const ClearOptions& options) {
  Witness w = clear(surface, {}, {}, options);

  if (!w.vertical.empty())
    throw Error(ErrorCode::InternalInconsistency, "final witness keeps a vertical part");
  if (w.d1.generic_degree != w.degree || w.d2.generic_degree != w.degree)
    throw Error(ErrorCode::InternalInconsistency, "final witness degrees disagree");
  std::set<std::string> intersection;
  for (const std::string& id : w.d1.support)
    if (w.d2.support.count(id)) intersection.insert(id);
  if (!intersection.empty())
    throw Error(ErrorCode::InternalInconsistency, "final supports are not disjoint");

  MorphismCertificate cert;
  cert.surface = surface.name;
  cert.surface_digest = surface_digest(surface);
  cert.degree = w.degree;
  cert.d1_support = w.d1.support;
  cert.d2_support = w.d2.support;
  cert.support_intersection = {};
  cert.log = std::move(w.log);
  auto& note = cert.log.add("ampleness-note");
  note.in("witness", w.id);
  note.out("note",
           "scaling the effective side by its generic degree yields an ample profile; "
           "supports and disjointness are unchanged");
  w.log = ConstructionLog{};
  cert.final_witness = std::move(w);
  return cert;
}

}  // namespace fibral
