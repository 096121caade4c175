#include <map>
#include <set>
#include <string>
#include <vector>

#include "fibral/clearing.hpp"
#include "fibral/error.hpp"
#include "fibral/kernel_solver.hpp"
#include "fibral/linalg.hpp"
#include "fibral/pairing.hpp"
#include "fibral/serialization.hpp"
#include "fibral/witness.hpp"

namespace fibral {

namespace {

std::vector<std::string> split_bracketed(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw Error(ErrorCode::ReplayMismatch, "malformed list '" + text + "'");
  std::vector<std::string> items;
  std::string current;
  int depth = 0;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    char ch = text[i];
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      items.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  if (!current.empty()) items.push_back(current);
  return items;
}

std::vector<Rational> parse_vector(const std::string& text) {
  std::vector<Rational> out;
  for (const std::string& item : split_bracketed(text)) out.push_back(parse_rational(item));
  return out;
}

// Everything the log lets us reconstruct about one witness.
struct WitnessState {
  Rational m;
  std::map<std::string, std::map<std::string, Rational>> d1;  // place -> component -> value
  std::map<std::string, std::vector<Rational>> vertical;      // place -> dense coefficients
  std::vector<std::string> support;
};

bool maps_equal(const std::map<std::string, std::map<std::string, Rational>>& a,
                const std::map<std::string, std::map<std::string, Rational>>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [place, values] : a) {
    auto it = b.find(place);
    if (it == b.end() || it->second.size() != values.size()) return false;
    for (const auto& [component, value] : values) {
      auto jt = it->second.find(component);
      if (jt == it->second.end() || jt->second != value) return false;
    }
  }
  return true;
}

class Replayer {
 public:
  Replayer(const SurfaceModel& surface, const MorphismCertificate& cert)
      : surface_(surface), cert_(cert) {}

  ReplayResult run() {
    if (cert_.surface != surface_.name)
      return fail(0, "binding",
                  "certificate names surface '" + cert_.surface + "', document is '" +
                      surface_.name + "'");
    if (cert_.surface_digest != surface_digest(surface_))
      return fail(0, "binding", "surface digest mismatch");

    const auto& steps = cert_.log.steps;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      std::string detail;
      try {
        detail = handle(steps[i]);
      } catch (const Error& e) {
        detail = e.what();
      }
      if (!detail.empty()) return fail(i, steps[i].op, detail);
      ++result_.steps_checked;
    }

    std::string detail;
    try {
      detail = check_final();
    } catch (const Error& e) {
      detail = e.what();
    }
    if (!detail.empty()) return fail(steps.size(), "final", detail);
    ++result_.steps_checked;

    result_.ok = true;
    result_.step_index = steps.size();
    result_.op.clear();
    result_.detail.clear();
    return result_;
  }

 private:
  ReplayResult fail(std::size_t index, const std::string& op, std::string detail) {
    result_.ok = false;
    result_.step_index = index;
    result_.op = op;
    result_.detail = std::move(detail);
    return result_;
  }

  static const std::string& get(const LogStep& step, const char* key, bool is_input) {
    const std::string* value = is_input ? step.input(key) : step.output(key);
    if (value == nullptr)
      throw Error(ErrorCode::ReplayMismatch, std::string("step lacks the ") +
                                                 (is_input ? "input '" : "output '") + key + "'");
    return *value;
  }

  WitnessState& state(const std::string& id) {
    auto it = states_.find(id);
    if (it == states_.end())
      throw Error(ErrorCode::ReplayMismatch, "log references unknown witness '" + id + "'");
    return it->second;
  }

  // Returns empty on success, a divergence description otherwise.
  std::string handle(const LogStep& step) {
    if (step.op == "witness-degree") return witness_degree(step);
    if (step.op == "fresh-support") return fresh_support(step);
    if (step.op == "fresh-pairing") return fresh_pairing(step);
    if (step.op == "vertical-solve") return vertical_solve(step);
    if (step.op == "interaction-matrix") return interaction_matrix(step);
    if (step.op == "kernel-weights") return kernel_weights(step);
    if (step.op == "combine") return combine(step);
    if (step.op == "remove-fiber") return remove_fiber(step);
    if (step.op == "ampleness-note") return "";
    return "unknown operation";
  }

  std::string witness_degree(const LogStep& step) {
    const std::string& id = get(step, "witness", true);
    Rational n = parse_rational(get(step, "n", true));
    if (n < 1) return "n = " + to_string(n) + " is not a positive integer";
    Rational m = n * surface_.ample.generic_degree;
    if (to_string(m) != get(step, "m", false))
      return "m recomputes to " + to_string(m) + ", recorded " + get(step, "m", false);
    states_[id] = WitnessState{};
    states_[id].m = m;
    return "";
  }

  std::string fresh_support(const LogStep& step) {
    const std::string& id = get(step, "witness", true);
    WitnessState& st = state(id);
    const std::size_t count = surface_.places.empty() ? 1 : surface_.places.size();
    std::vector<std::string> ids;
    std::string joined = "[";
    for (std::size_t k = 0; k < count; ++k) {
      ids.push_back(id + "/H" + std::to_string(k));
      if (k > 0) joined += ",";
      joined += ids.back();
    }
    joined += "]";
    if (joined != get(step, "support", false))
      return "support recomputes to " + joined + ", recorded " + get(step, "support", false);
    st.support = ids;
    return "";
  }

  std::string fresh_pairing(const LogStep& step) {
    WitnessState& st = state(get(step, "witness", true));
    const std::string& place = get(step, "place", true);
    const std::string& component = get(step, "component", true);
    const FiberModel& fiber = surface_.place(place);
    auto index = component_index(fiber, component);
    if (!index) return "component '" + component + "' is not in the fiber at '" + place + "'";
    Rational value = st.m / Rational(fiber.components[*index].multiplicity);
    if (to_string(value) != get(step, "value", false))
      return "pairing recomputes to " + to_string(value) + ", recorded " +
             get(step, "value", false);
    st.d1[place][component] = value;
    return "";
  }

  std::string vertical_solve(const LogStep& step) {
    WitnessState& st = state(get(step, "witness", true));
    const std::string& place = get(step, "place", true);
    const std::string& choice = get(step, "choice", true);
    const FiberModel& fiber = surface_.place(place);
    auto choice_index = component_index(fiber, choice);
    if (!choice_index) return "choice '" + choice + "' is not in the fiber at '" + place + "'";

    Rational n = st.m / surface_.ample.generic_degree;
    std::vector<Rational> target(fiber.size());
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      const std::string& cid = fiber.components[i].id;
      Rational d1_value(0);
      auto pit = st.d1.find(place);
      if (pit != st.d1.end()) {
        auto cit = pit->second.find(cid);
        if (cit != pit->second.end()) d1_value = cit->second;
      }
      target[i] = n * profile_component_pairing(surface_.ample, place, cid) - d1_value;
    }
    if (to_string(target) != get(step, "target", false))
      return "target recomputes to " + to_string(target) + ", recorded " +
             get(step, "target", false);

    std::vector<Rational> dense = solve_vertical_part(fiber, *choice_index, target);
    if (to_string(dense) != get(step, "coefficients", false))
      return "solution recomputes to " + to_string(dense) + ", recorded " +
             get(step, "coefficients", false);
    st.vertical[place] = dense;
    return "";
  }

  std::string interaction_matrix(const LogStep& step) {
    const std::string& place = get(step, "place", true);
    std::vector<std::string> parts = split_bracketed(get(step, "parts", true));
    const FiberModel& fiber = surface_.place(place);
    const std::size_t t = fiber.size();
    if (parts.size() != t) return "part count does not match the fiber";

    RationalMatrix w(t, t);
    for (std::size_t i = 0; i < t; ++i) {
      WitnessState& st = state(parts[i]);
      auto it = st.vertical.find(place);
      if (it == st.vertical.end())
        return "witness '" + parts[i] + "' has no vertical part at '" + place + "'";
      const std::vector<Rational>& dense = it->second;
      for (std::size_t j = 0; j < t; ++j) {
        Rational sum(0);
        for (std::size_t k = 0; k < t; ++k) sum += dense[k] * fiber.pairing(k, j);
        w(i, j) = sum * Rational(fiber.components[j].multiplicity);
      }
    }
    if (to_string(w) != get(step, "matrix", false))
      return "matrix recomputes to " + to_string(w) + ", recorded " + get(step, "matrix", false);
    last_matrix_ = w;
    last_matrix_place_ = place;
    return "";
  }

  std::string kernel_weights(const LogStep& step) {
    const std::string& place = get(step, "place", true);
    if (place != last_matrix_place_) return "no interaction matrix recomputed for '" + place + "'";
    PositiveKernelVector kernel = positive_row_kernel(verify_kernel_hypotheses(last_matrix_));
    if (to_string(kernel.weights) != get(step, "weights", false))
      return "weights recompute to " + to_string(kernel.weights) + ", recorded " +
             get(step, "weights", false);
    last_weights_ = kernel.weights;
    last_weights_place_ = place;
    return "";
  }

  std::string combine(const LogStep& step) {
    const std::string& place = get(step, "place", true);
    std::vector<std::string> parts = split_bracketed(get(step, "parts", true));
    std::vector<Rational> weights = parse_vector(get(step, "weights", true));
    const std::string& result_id = get(step, "result", true);
    if (place != last_weights_place_ || weights != last_weights_)
      return "combination weights do not match the solver output";
    const FiberModel& fiber = surface_.place(place);
    if (parts.size() != fiber.size() || weights.size() != fiber.size())
      return "part or weight count does not match the fiber";

    WitnessState combined;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      WitnessState& st = state(parts[i]);
      combined.m += weights[i] * st.m;
      for (const auto& [p, values] : st.d1)
        for (const auto& [component, value] : values)
          combined.d1[p][component] += weights[i] * value;
      combined.support.insert(combined.support.end(), st.support.begin(), st.support.end());
    }
    if (to_string(combined.m) != get(step, "degree", false))
      return "degree recomputes to " + to_string(combined.m) + ", recorded " +
             get(step, "degree", false);

    std::set<std::string> vertical_places{place};
    for (const std::string& part : parts)
      for (const auto& [p, dense] : state(part).vertical) vertical_places.insert(p);
    for (const std::string& p : vertical_places) {
      const FiberModel& place_fiber = surface_.place(p);
      std::vector<Rational> dense(place_fiber.size(), Rational(0));
      for (std::size_t i = 0; i < parts.size(); ++i) {
        auto it = state(parts[i]).vertical.find(p);
        if (it == state(parts[i]).vertical.end()) continue;
        for (std::size_t k = 0; k < dense.size(); ++k) dense[k] += weights[i] * it->second[k];
      }
      bool nonzero = false;
      for (const Rational& value : dense)
        if (value != 0) nonzero = true;
      if (nonzero || p == place) combined.vertical[p] = dense;
    }

    // The recorded vertical outputs must list exactly the kept places.
    std::size_t vertical_outputs = 0;
    for (const auto& [key, value] : step.outputs) {
      if (key.rfind("vertical:", 0) != 0) continue;
      ++vertical_outputs;
      const std::string p = key.substr(9);
      auto it = combined.vertical.find(p);
      if (it == combined.vertical.end()) return "no vertical part recomputed at '" + p + "'";
      if (to_string(it->second) != value)
        return "vertical part at '" + p + "' recomputes to " + to_string(it->second) +
               ", recorded " + value;
    }
    if (vertical_outputs != combined.vertical.size())
      return "recorded vertical parts do not cover the recomputed ones";

    Integer exponent = 1;
    for (const auto& [p, dense] : combined.vertical) {
      Integer den = common_denominator(dense);
      mpz_lcm(exponent.get_mpz_t(), exponent.get_mpz_t(), den.get_mpz_t());
    }
    if (to_string(exponent) != get(step, "exponent", false))
      return "scaling exponent recomputes to " + to_string(exponent) + ", recorded " +
             get(step, "exponent", false);

    states_[result_id] = std::move(combined);
    return "";
  }

  std::string remove_fiber(const LogStep& step) {
    const std::string& place = get(step, "place", true);
    WitnessState& st = state(get(step, "witness", true));
    const FiberModel& fiber = surface_.place(place);
    std::vector<Rational> dense(fiber.size(), Rational(0));
    auto it = st.vertical.find(place);
    if (it != st.vertical.end()) dense = it->second;

    for (std::size_t j = 0; j < fiber.size(); ++j) {
      Rational pairing(0);
      for (std::size_t k = 0; k < fiber.size(); ++k) pairing += dense[k] * fiber.pairing(k, j);
      if (pairing != 0)
        return "vertical part pairs to " + to_string(pairing) + " with '" +
               fiber.components[j].id + "'";
    }
    Rational r = dense[0] / Rational(fiber.components[0].multiplicity);
    for (std::size_t i = 0; i < fiber.size(); ++i)
      if (dense[i] != r * Rational(fiber.components[i].multiplicity))
        return "vertical part is not a rational multiple of the fiber";
    Integer d = r.get_den();

    if (to_string(r) != get(step, "ratio", false))
      return "ratio recomputes to " + to_string(r) + ", recorded " + get(step, "ratio", false);
    if (to_string(d) != get(step, "exponent", false))
      return "exponent recomputes to " + to_string(d) + ", recorded " +
             get(step, "exponent", false);
    const std::string constant = to_string(r.get_num()) + "*fiber[" + place + "]";
    if (constant != get(step, "constant-divisor", false))
      return "principal constant recomputes to " + constant + ", recorded " +
             get(step, "constant-divisor", false);

    const Rational factor{d};
    st.m *= factor;
    for (auto& [p, values] : st.d1)
      for (auto& [component, value] : values) value *= factor;
    st.vertical.erase(place);
    for (auto& [p, vec] : st.vertical)
      for (Rational& value : vec) value *= factor;
    return "";
  }

  std::string check_final() {
    const Witness& fw = cert_.final_witness;
    auto it = states_.find(fw.id);
    if (it == states_.end()) return "log never constructs the final witness '" + fw.id + "'";
    const WitnessState& st = it->second;

    if (st.m != cert_.degree || st.m != fw.degree || st.m != fw.d1.generic_degree ||
        st.m != fw.d2.generic_degree)
      return "final degree " + to_string(st.m) + " disagrees with the certificate";

    if (!maps_equal(st.d1, fw.d1.pairings)) return "final d1 pairings diverge from the log";

    std::set<std::string> support(st.support.begin(), st.support.end());
    if (support.size() != st.support.size()) return "reconstructed support has duplicates";
    if (support != fw.d1.support || support != cert_.d1_support)
      return "d1 support diverges from the log";
    if (fw.d2.support != surface_.ample.support || cert_.d2_support != fw.d2.support)
      return "d2 support does not match the ample profile";
    for (const std::string& id : support)
      if (fw.d2.support.count(id)) return "supports intersect at '" + id + "'";
    if (!cert_.support_intersection.empty()) return "certificate records a nonempty intersection";

    // d2 must be exactly (m / ample degree) times the ample profile.
    Rational n = st.m / surface_.ample.generic_degree;
    std::map<std::string, std::map<std::string, Rational>> expected;
    for (const auto& [place, values] : surface_.ample.pairings)
      for (const auto& [component, value] : values) expected[place][component] = n * value;
    if (!maps_equal(expected, fw.d2.pairings)) return "final d2 is not a multiple of the ample profile";

    if (!fw.vertical.empty()) return "certificate's witness keeps a vertical part";
    for (const auto& [place, dense] : st.vertical)
      for (const Rational& value : dense)
        if (value != 0) return "reconstructed vertical part at '" + place + "' is nonzero";

    // Principality surrogate for the final pair: with no vertical part the
    // two sides must pair identically with every component.
    for (const FiberModel& fiber : surface_.places)
      for (const FiberComponent& c : fiber.components) {
        Rational d1_value(0);
        auto pit = st.d1.find(fiber.place_id);
        if (pit != st.d1.end()) {
          auto cit = pit->second.find(c.id);
          if (cit != pit->second.end()) d1_value = cit->second;
        }
        Rational d2_value = n * profile_component_pairing(surface_.ample, fiber.place_id, c.id);
        if (d1_value != d2_value)
          return "final pairing imbalance at " + fiber.place_id + ":" + c.id;
      }
    return "";
  }

  const SurfaceModel& surface_;
  const MorphismCertificate& cert_;
  ReplayResult result_;
  std::map<std::string, WitnessState> states_;
  RationalMatrix last_matrix_;
  std::string last_matrix_place_;
  std::vector<Rational> last_weights_;
  std::string last_weights_place_;
};

}  // namespace

ReplayResult replay_certificate(const SurfaceModel& surface, const MorphismCertificate& cert) {
  return Replayer(surface, cert).run();
}

}  // namespace fibral
