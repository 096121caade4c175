#include <doctest.h>

#include <random>

#include "fibral/error.hpp"
#include "fibral/kodaira.hpp"
#include "fibral/surface.hpp"

#include "support/test_support.hpp"

using namespace fibral;
using testsupport::i2_surface;

TEST_CASE("divisor helpers") {
  FiberModel fiber = kodaira_cycle(3, "v");
  FibralDivisor d = fiber_vector(fiber);
  CHECK(d.place_id == "v");
  CHECK(d.coefficient("C0") == 1);
  CHECK(d.coefficient("C2") == 1);
  CHECK(d.coefficient("missing") == 0);
  CHECK(!d.is_zero());

  std::vector<Rational> dense = dense_coefficients(fiber, d);
  CHECK(dense == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});

  FibralDivisor rebuilt = make_divisor(fiber, {Rational(0), Rational(2), Rational(0)});
  CHECK(rebuilt.coefficients.size() == 1);
  CHECK(rebuilt.coefficient("C1") == 2);

  FibralDivisor wrong{"v", {{"zz", Rational(1)}}};
  CHECK_THROWS_AS(dense_coefficients(fiber, wrong), Error);
  FibralDivisor other{"w", {}};
  CHECK_THROWS_AS(dense_coefficients(fiber, other), Error);
}

TEST_CASE("fiber vector examples") {
  CHECK(dense_coefficients(kodaira_cycle(2), fiber_vector(kodaira_cycle(2))) ==
        std::vector<Rational>{Rational(1), Rational(1)});
  FiberModel star = kodaira_star();
  std::vector<Rational> expected{Rational(2), Rational(1), Rational(1), Rational(1), Rational(1)};
  CHECK(dense_coefficients(star, fiber_vector(star)) == expected);
}

TEST_CASE("reducible places derived in declaration order") {
  std::mt19937_64 rng(1);
  SurfaceModel s = i2_surface();
  FiberModel point = testsupport::random_tree_fiber(rng, "u", 1);
  s.places.insert(s.places.begin(), point);
  s.ample.pairings["u"][point.components[0].id] =
      s.ample.generic_degree / Rational(point.components[0].multiplicity);
  CHECK(reducible_places(s) == std::vector<std::string>{"v"});
  CHECK(validate_surface(s).all_passed());
}

TEST_CASE("valid surface passes validation") {
  Report report = validate_surface(i2_surface());
  CHECK(report.all_passed());
  CHECK(report.failure_count() == 0);
  require_valid(i2_surface());
}

TEST_CASE("broken weighted row sum is reported with its row") {
  SurfaceModel s = i2_surface();
  s.places[0].pairing(1, 1) = Rational(-1);
  Report report = validate_surface(s);
  CHECK(!report.all_passed());
  bool found = false;
  for (const CheckEntry& e : report.entries)
    if (e.check == "weighted kernel identity" && !e.passed) found = true;
  CHECK(found);
  CHECK_THROWS_AS(require_valid(s), Error);
}

TEST_CASE("asymmetry and negative off-diagonals are caught") {
  SurfaceModel s = i2_surface();
  s.places[0].pairing(0, 1) = Rational(3);
  Report r1 = validate_surface(s);
  bool symmetry_failed = false;
  for (const CheckEntry& e : r1.entries)
    if (e.check == "symmetry" && !e.passed) symmetry_failed = true;
  CHECK(symmetry_failed);

  SurfaceModel t = i2_surface();
  t.places[0].pairing(0, 1) = Rational(-2);
  t.places[0].pairing(1, 0) = Rational(-2);
  t.places[0].pairing(0, 0) = Rational(2);
  t.places[0].pairing(1, 1) = Rational(2);
  Report r2 = validate_surface(t);
  bool sign_failed = false;
  for (const CheckEntry& e : r2.entries)
    if (e.check == "off-diagonal sign" && !e.passed) sign_failed = true;
  CHECK(sign_failed);
}

TEST_CASE("disconnected fiber is caught") {
  FiberModel fiber;
  fiber.place_id = "v";
  for (int i = 0; i < 4; ++i)
    fiber.components.push_back({"C" + std::to_string(i), Integer(1)});
  fiber.pairing = RationalMatrix(4, 4);
  // two disjoint two-cycles
  fiber.pairing(0, 0) = fiber.pairing(1, 1) = Rational(-2);
  fiber.pairing(0, 1) = fiber.pairing(1, 0) = Rational(2);
  fiber.pairing(2, 2) = fiber.pairing(3, 3) = Rational(-2);
  fiber.pairing(2, 3) = fiber.pairing(3, 2) = Rational(2);
  Report report;
  check_fiber_structure(fiber, report);
  bool connectivity_failed = false;
  for (const CheckEntry& e : report.entries)
    if (e.check == "connectivity" && !e.passed) connectivity_failed = true;
  CHECK(connectivity_failed);
}

TEST_CASE("ample profile checks") {
  SurfaceModel zero = i2_surface();
  zero.ample.pairings["v"]["C1"] = Rational(0);
  Report r = validate_surface(zero);
  bool positivity_failed = false;
  for (const CheckEntry& e : r.entries)
    if (e.check == "strictly positive pairings at v" && !e.passed) positivity_failed = true;
  CHECK(positivity_failed);

  SurfaceModel off = i2_surface();
  off.ample.generic_degree = Rational(3);  // weighted sum stays 2
  Report r2 = validate_surface(off);
  bool identity_failed = false;
  for (const CheckEntry& e : r2.entries)
    if (e.check == "degree identity at v" && !e.passed) identity_failed = true;
  CHECK(identity_failed);

  SurfaceModel missing = i2_surface();
  missing.ample.pairings.clear();
  CHECK(!validate_surface(missing).all_passed());
}

TEST_CASE("duplicate identifiers fail validation") {
  SurfaceModel s = i2_surface();
  s.places.push_back(s.places[0]);
  CHECK(!validate_surface(s).all_passed());

  SurfaceModel t = i2_surface();
  t.places[0].components[1].id = "C0";
  CHECK(!validate_surface(t).all_passed());
}

TEST_CASE("place lookup") {
  SurfaceModel s = i2_surface();
  CHECK(s.find_place("v") != nullptr);
  CHECK(s.find_place("w") == nullptr);
  CHECK(s.place("v").size() == 2);
  CHECK_THROWS_AS(s.place("w"), Error);
  CHECK(component_index(s.places[0], "C1") == 1);
  CHECK(!component_index(s.places[0], "C7"));
}

TEST_CASE("generated random surfaces are valid") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    SurfaceModel s = testsupport::random_surface(rng);
    Report report = validate_surface(s);
    if (!report.all_passed()) FAIL(report.format());
  }
}
