#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "fibral/clearing.hpp"
#include "fibral/error.hpp"
#include "fibral/kodaira.hpp"
#include "fibral/serialization.hpp"
#include "fibral/surface.hpp"
#include "fibral/witness.hpp"

#include "support/test_support.hpp"

using namespace fibral;
using testsupport::frac;

namespace {

ChoiceMap choose(std::initializer_list<std::pair<std::string, std::string>> entries) {
  ChoiceMap choice;
  for (const auto& [place, component] : entries) choice.choices[place] = component;
  return choice;
}

void set_output(LogStep& step, const std::string& key, const std::string& value) {
  for (auto& [k, v] : step.outputs)
    if (k == key) {
      v = value;
      return;
    }
  FAIL(("no output '" + key + "'"));
}

void set_input(LogStep& step, const std::string& key, const std::string& value) {
  for (auto& [k, v] : step.inputs)
    if (k == key) {
      v = value;
      return;
    }
  FAIL(("no input '" + key + "'"));
}

std::size_t count_ops(const ConstructionLog& log, const std::string& op) {
  std::size_t n = 0;
  for (const LogStep& step : log.steps)
    if (step.op == op) ++n;
  return n;
}

// Two reducible places with cycle fibers of two and three components.
SurfaceModel two_place_surface() {
  SurfaceModel surface;
  surface.name = "two-places";
  surface.class_group_torsion = true;
  surface.places.push_back(kodaira_cycle(2, "v1"));
  surface.places.push_back(kodaira_cycle(3, "v2"));
  surface.ample.profile_id = "ample";
  surface.ample.generic_degree = 6;
  surface.ample.pairings["v1"] = {{"C0", Rational(3)}, {"C1", Rational(3)}};
  surface.ample.pairings["v2"] = {{"C0", Rational(2)}, {"C1", Rational(2)}, {"C2", Rational(2)}};
  surface.ample.support = {"P"};
  return surface;
}

}  // namespace

TEST_CASE("two-component pipeline, exact numbers") {
  SurfaceModel surface = testsupport::i2_surface();
  MorphismCertificate cert = prove_theorem(surface);

  CHECK(cert.surface == "i2-demo");
  CHECK(cert.surface_digest == surface_digest(surface));
  CHECK(cert.degree == 8);
  CHECK(cert.d1_support == std::set<std::string>{"w.C0/H0", "w.C1/H0"});
  CHECK(cert.d2_support == std::set<std::string>{"P"});
  CHECK(cert.support_intersection.empty());

  const Witness& cleared = cert.final_witness;
  CHECK(cleared.id == "w");
  CHECK(cleared.degree == 8);
  CHECK(cleared.vertical.empty());
  CHECK(cleared.scaling_exponent == 1);
  CHECK(cleared.d1.generic_degree == 8);
  CHECK(cleared.d2.generic_degree == 8);
  CHECK(cleared.d1.pairings.at("v") ==
        std::map<std::string, Rational>{{"C0", Rational(4)}, {"C1", Rational(4)}});
  CHECK(cleared.d2.pairings.at("v") ==
        std::map<std::string, Rational>{{"C0", Rational(4)}, {"C1", Rational(4)}});
  CHECK(cleared.log.steps.empty());  // the certificate owns the log

  const std::vector<std::string> expected_ops = {
      "witness-degree", "fresh-support", "fresh-pairing", "vertical-solve",
      "witness-degree", "fresh-support", "fresh-pairing", "vertical-solve",
      "interaction-matrix", "kernel-weights", "combine", "remove-fiber", "ampleness-note"};
  REQUIRE(cert.log.steps.size() == expected_ops.size());
  for (std::size_t i = 0; i < expected_ops.size(); ++i)
    CHECK(cert.log.steps[i].op == expected_ops[i]);

  CHECK(*cert.log.steps[8].output("matrix") == "[[-1,1],[1,-1]]");
  CHECK(*cert.log.steps[9].output("weights") == "[1,1]");
  CHECK(*cert.log.steps[10].output("degree") == "4");
  CHECK(*cert.log.steps[10].output("vertical:v") == "[-1/2,-1/2]");
  CHECK(*cert.log.steps[10].output("exponent") == "2");
  CHECK(*cert.log.steps[11].output("ratio") == "-1/2");
  CHECK(*cert.log.steps[11].output("exponent") == "2");
  CHECK(*cert.log.steps[11].output("constant-divisor") == "-1*fiber[v]");
}

TEST_CASE("replay accepts the genuine certificate") {
  SurfaceModel surface = testsupport::i2_surface();
  MorphismCertificate cert = prove_theorem(surface);
  ReplayResult result = replay_certificate(surface, cert);
  INFO(result.op, ": ", result.detail);
  CHECK(result.ok);
  CHECK(result.steps_checked == 14);
  CHECK(result.step_index == 13);
}

TEST_CASE("replay pinpoints divergence") {
  SurfaceModel surface = testsupport::i2_surface();
  MorphismCertificate genuine = prove_theorem(surface);

  SUBCASE("edited solve output") {
    MorphismCertificate cert = genuine;
    set_output(cert.log.steps[3], "coefficients", "[0,1/2]");
    ReplayResult result = replay_certificate(surface, cert);
    CHECK(!result.ok);
    CHECK(result.step_index == 3);
    CHECK(result.op == "vertical-solve");
  }

  SUBCASE("edited kernel weights") {
    MorphismCertificate cert = genuine;
    set_output(cert.log.steps[9], "weights", "[1,2]");
    ReplayResult result = replay_certificate(surface, cert);
    CHECK(!result.ok);
    CHECK(result.step_index == 9);
    CHECK(result.op == "kernel-weights");
  }

  SUBCASE("combination weights differ from the solver output") {
    MorphismCertificate cert = genuine;
    set_input(cert.log.steps[10], "weights", "[2,2]");
    ReplayResult result = replay_certificate(surface, cert);
    CHECK(!result.ok);
    CHECK(result.step_index == 10);
    CHECK(result.op == "combine");
  }

  SUBCASE("wrong surface name") {
    MorphismCertificate cert = genuine;
    cert.surface = "other";
    ReplayResult result = replay_certificate(surface, cert);
    CHECK(!result.ok);
    CHECK(result.op == "binding");
  }

  SUBCASE("wrong digest") {
    MorphismCertificate cert = genuine;
    cert.surface_digest.assign(64, '0');
    ReplayResult result = replay_certificate(surface, cert);
    CHECK(!result.ok);
    CHECK(result.op == "binding");
    CHECK(result.detail == "surface digest mismatch");
  }

  SUBCASE("surface edited after certification") {
    SurfaceModel moved = surface;
    moved.ample.pairings["v"]["C0"] = frac(3, 2);
    moved.ample.pairings["v"]["C1"] = frac(1, 2);
    ReplayResult result = replay_certificate(moved, genuine);
    CHECK(!result.ok);
    CHECK(result.op == "binding");
  }

  SUBCASE("dropped removal step") {
    MorphismCertificate cert = genuine;
    cert.log.steps.erase(cert.log.steps.begin() + 11);
    ReplayResult result = replay_certificate(surface, cert);
    CHECK(!result.ok);
    CHECK(result.op == "final");
  }

  SUBCASE("edited final witness") {
    MorphismCertificate cert = genuine;
    cert.final_witness.degree = 7;
    ReplayResult result = replay_certificate(surface, cert);
    CHECK(!result.ok);
    CHECK(result.op == "final");
  }

  SUBCASE("unknown operation") {
    MorphismCertificate cert = genuine;
    cert.log.steps.insert(cert.log.steps.begin() + 8, LogStep{"mystery", {}, {}});
    ReplayResult result = replay_certificate(surface, cert);
    CHECK(!result.ok);
    CHECK(result.step_index == 8);
    CHECK(result.op == "mystery");
  }

  SUBCASE("truncated log") {
    MorphismCertificate cert = genuine;
    cert.log.steps.resize(10);
    ReplayResult result = replay_certificate(surface, cert);
    CHECK(!result.ok);
    CHECK(result.op == "final");
  }
}

TEST_CASE("allowed places are left uncleared") {
  SurfaceModel surface = testsupport::i2_surface();
  Witness w = clear(surface, {"v"}, choose({{"v", "C0"}}));
  CHECK(w.id == "w");
  CHECK(w.degree == 2);
  REQUIRE(vertical_part(w, "v") != nullptr);
  CHECK(vertical_part(w, "v")->coefficients ==
        std::map<std::string, Rational>{{"C1", frac(-1, 2)}});
  CHECK(verify_witness(surface, w).all_passed());
}

TEST_CASE("combine and remove, step by step") {
  SurfaceModel surface = testsupport::i2_surface();
  std::map<std::string, Witness> parts;
  parts.emplace("C0", synthesize_witness(surface, choose({{"v", "C0"}}), 1, "w.C0"));
  parts.emplace("C1", synthesize_witness(surface, choose({{"v", "C1"}}), 1, "w.C1"));

  Witness combined = combine_witnesses(surface, "v", parts, {Integer(1), Integer(1)}, "w");
  CHECK(combined.degree == 4);
  CHECK(combined.d1.pairings.at("v") ==
        std::map<std::string, Rational>{{"C0", Rational(2)}, {"C1", Rational(2)}});
  CHECK(combined.vertical.at("v").coefficients ==
        std::map<std::string, Rational>{{"C0", frac(-1, 2)}, {"C1", frac(-1, 2)}});
  CHECK(combined.scaling_exponent == 2);
  CHECK(combined.d1.support == std::set<std::string>{"w.C0/H0", "w.C1/H0"});

  auto [cleared, d] = remove_principal_fiber(surface, combined, "v");
  CHECK(d == 2);
  CHECK(cleared.degree == 8);
  CHECK(cleared.vertical.empty());
  CHECK(cleared.scaling_exponent == 1);
  CHECK(cleared.log.steps.back().op == "remove-fiber");
  CHECK(*cleared.log.steps.back().output("ratio") == "-1/2");
}

TEST_CASE("removal guards") {
  SurfaceModel surface = testsupport::i2_surface();

  SUBCASE("vertical part pairs nonzero") {
    Witness w = synthesize_witness(surface, choose({{"v", "C0"}}));
    try {
      remove_principal_fiber(surface, w, "v");
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonzeroPairing);
    }
  }

  SUBCASE("torsion flag required") {
    SurfaceModel no_torsion = surface;
    no_torsion.class_group_torsion = false;
    Witness w = synthesize_witness(surface, choose({{"v", "C0"}}));
    try {
      remove_principal_fiber(no_torsion, w, "v");
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TorsionRequired);
      CHECK(std::string(e.what()).find("class_group_torsion") != std::string::npos);
    }
  }

  SUBCASE("kernel vector that is not a fiber multiple") {
    // A degenerate all-zero pairing matrix leaves room between "pairs to
    // zero" and "is a fiber multiple"; the second guard must catch it.
    SurfaceModel degenerate;
    degenerate.name = "degenerate";
    degenerate.class_group_torsion = true;
    FiberModel fiber;
    fiber.place_id = "z";
    fiber.components.push_back({"A", 1});
    fiber.components.push_back({"B", 1});
    fiber.pairing = RationalMatrix(2, 2);
    degenerate.places.push_back(fiber);
    Witness w;
    w.id = "w";
    w.degree = 1;
    w.vertical["z"] = FibralDivisor{"z", {{"A", Rational(1)}}};
    try {
      remove_principal_fiber(degenerate, w, "z");
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotFiberMultiple);
    }
  }
}

TEST_CASE("clear guards") {
  SurfaceModel surface = testsupport::i2_surface();

  SUBCASE("torsion flag required") {
    SurfaceModel no_torsion = surface;
    no_torsion.class_group_torsion = false;
    try {
      clear(no_torsion, {}, {});
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TorsionRequired);
      CHECK(std::string(e.what()).find("class_group_torsion") != std::string::npos);
    }
  }

  SUBCASE("allowed set must name reducible places") {
    CHECK_THROWS_AS(clear(surface, {"x"}, choose({{"x", "C0"}})), Error);
  }

  SUBCASE("choices must cover the allowed set") {
    CHECK_THROWS_AS(clear(surface, {"v"}, ChoiceMap{}), Error);
    CHECK_THROWS_AS(clear(surface, {}, choose({{"v", "C0"}})), Error);
    CHECK_THROWS_AS(clear(surface, {"v"}, choose({{"v", "C7"}})), Error);
  }

  SUBCASE("width guard") {
    ClearOptions options;
    options.max_width = 1;
    try {
      clear(surface, {}, {}, options);
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::WidthGuardExceeded);
    }
  }
}

TEST_CASE("combination guards") {
  SurfaceModel surface = testsupport::i2_surface();
  Witness w0 = synthesize_witness(surface, choose({{"v", "C0"}}), 1, "w.C0");
  Witness w1 = synthesize_witness(surface, choose({{"v", "C1"}}), 1, "w.C1");

  std::map<std::string, Witness> parts{{"C0", w0}, {"C1", w1}};

  SUBCASE("weight count mismatch") {
    try {
      combine_witnesses(surface, "v", parts, {Integer(1)});
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::KeyMismatch);
    }
  }

  SUBCASE("part keyed by a foreign component") {
    std::map<std::string, Witness> wrong{{"C0", w0}, {"CX", w1}};
    try {
      combine_witnesses(surface, "v", wrong, {Integer(1), Integer(1)});
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::KeyMismatch);
    }
  }

  SUBCASE("weights must be positive") {
    try {
      combine_witnesses(surface, "v", parts, {Integer(0), Integer(1)});
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UsageError);
    }
  }

  SUBCASE("duplicated fresh support") {
    std::map<std::string, Witness> duplicated{{"C0", w0}, {"C1", w0}};
    try {
      combine_witnesses(surface, "v", duplicated, {Integer(1), Integer(1)});
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SupportCollision);
    }
  }

  SUBCASE("parts disagree on the effective side") {
    std::map<std::string, Witness> skewed{{"C0", w0}, {"C1", w1}};
    skewed.at("C1").d2.support = {"Q"};
    try {
      combine_witnesses(surface, "v", skewed, {Integer(1), Integer(1)});
      FAIL("expected rejection");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::KeyMismatch);
    }
  }
}

TEST_CASE("recursion width") {
  SurfaceModel i2 = testsupport::i2_surface();
  CHECK(recursion_width(i2, {}) == 2);
  CHECK(recursion_width(i2, {"v"}) == 1);

  SurfaceModel both = two_place_surface();
  CHECK(recursion_width(both, {}) == 6);
  CHECK(recursion_width(both, {"v1"}) == 3);
  CHECK(recursion_width(both, {"v2"}) == 2);
  CHECK(recursion_width(both, {"v1", "v2"}) == 1);
}

TEST_CASE("two reducible places clear end to end") {
  SurfaceModel surface = two_place_surface();
  REQUIRE(validate_surface(surface).all_passed());

  MorphismCertificate cert = prove_theorem(surface);
  CHECK(cert.final_witness.vertical.empty());
  CHECK(cert.degree == cert.final_witness.degree);
  CHECK(cert.support_intersection.empty());

  // One combination and one removal per place cleared along each branch:
  // v2 is cleared inside both v1-children, v1 once at the top.
  CHECK(count_ops(cert.log, "combine") == 3);
  CHECK(count_ops(cert.log, "remove-fiber") == 3);
  CHECK(count_ops(cert.log, "interaction-matrix") == 3);
  CHECK(count_ops(cert.log, "kernel-weights") == 3);
  CHECK(count_ops(cert.log, "witness-degree") == 6);  // one per leaf
  CHECK(count_ops(cert.log, "ampleness-note") == 1);

  ReplayResult result = replay_certificate(surface, cert);
  INFO(result.op, ": ", result.detail);
  CHECK(result.ok);
}

TEST_CASE("random surfaces clear and replay") {
  std::mt19937_64 rng(106);
  for (int trial = 0; trial < 20; ++trial) {
    SurfaceModel surface = testsupport::random_surface(rng);
    MorphismCertificate cert = prove_theorem(surface);
    CHECK(cert.final_witness.vertical.empty());
    CHECK(cert.final_witness.d1.generic_degree == cert.degree);
    CHECK(cert.final_witness.d2.generic_degree == cert.degree);
    CHECK(cert.support_intersection.empty());
    CHECK(cert.degree > 0);

    ReplayResult result = replay_certificate(surface, cert);
    INFO("trial ", trial, " diverged at ", result.op, ": ", result.detail);
    CHECK(result.ok);
  }
}
