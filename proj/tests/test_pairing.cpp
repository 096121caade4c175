#include <doctest.h>

#include <random>

#include "fibral/error.hpp"
#include "fibral/kodaira.hpp"
#include "fibral/pairing.hpp"
#include "fibral/surface.hpp"

#include "support/test_support.hpp"

using namespace fibral;
using testsupport::frac;
using testsupport::i2_surface;

TEST_CASE("fibral pairing values") {
  FiberModel i2 = kodaira_cycle(2);
  FibralDivisor c0{"v", {{"C0", Rational(1)}}};
  FibralDivisor c1{"v", {{"C1", Rational(1)}}};
  CHECK(pair_fibral(i2, c0, c0) == -2);
  CHECK(pair_fibral(i2, c0, c1) == 2);
  CHECK(pair_fibral(i2, c1, c0) == 2);

  FibralDivisor mixed{"v", {{"C0", frac(1, 2)}, {"C1", Rational(-1)}}};
  // <mixed, C0> = 1/2*(-2) + (-1)*2 = -3
  CHECK(pair_fibral(i2, mixed, c0) == -3);
}

TEST_CASE("kernel property: the fiber vector pairs to zero") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  for (std::size_t n = 2; n <= 6; ++n) {
    FiberModel fiber = kodaira_cycle(n);
    FibralDivisor f = fiber_vector(fiber);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Rational> dense(n);
      for (auto& v : dense) v = frac(num(rng), den(rng));
      CHECK(pair_fibral(fiber, f, make_divisor(fiber, dense)) == 0);
    }
  }
}

TEST_CASE("degree formula at every place") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    SurfaceModel s = testsupport::random_surface(rng);
    for (const FiberModel& fiber : s.places)
      CHECK(pair_horizontal(s.ample, fiber, fiber_vector(fiber)) == s.ample.generic_degree);
  }
}

TEST_CASE("horizontal pairing errors") {
  SurfaceModel s = i2_surface();
  FibralDivisor wrong_place{"w", {{"C0", Rational(1)}}};
  CHECK_THROWS_AS(pair_horizontal(s.ample, s.places[0], wrong_place), Error);
  FibralDivisor unknown{"v", {{"C9", Rational(1)}}};
  CHECK_THROWS_AS(pair_horizontal(s.ample, s.places[0], unknown), Error);
  CHECK_THROWS_AS(profile_component_pairing(s.ample, "nowhere", "C0"), Error);
  CHECK(profile_component_pairing(s.ample, "v", "not-listed") == 0);
}

TEST_CASE("certificate for cycles") {
  SemidefinitenessCertificate cert = check_fiber_form(kodaira_cycle(3));
  CHECK(cert.place_id == "v");
  CHECK(cert.base_component == "C0");
  CHECK(cert.restricted_minors == std::vector<Rational>{Rational(2), Rational(3)});
  CHECK(cert.kernel_basis.coefficient("C0") == 1);
  CHECK(cert.kernel_basis.coefficient("C2") == 1);

  SemidefinitenessCertificate star = check_fiber_form(kodaira_star());
  CHECK(star.restricted_minors ==
        std::vector<Rational>{Rational(2), Rational(4), Rational(8), Rational(16)});
  CHECK(star.kernel_basis.coefficient("C0") == 2);
}

TEST_CASE("irreducible fiber has an empty certificate") {
  FiberModel point;
  point.place_id = "v";
  point.components.push_back({"C0", Integer(1)});
  point.pairing = RationalMatrix(1, 1);
  SemidefinitenessCertificate cert = check_fiber_form(point);
  CHECK(cert.restricted_minors.empty());
  CHECK(cert.kernel_basis.coefficient("C0") == 1);
}

TEST_CASE("positive form is rejected") {
  FiberModel bad;
  bad.place_id = "v";
  bad.components.push_back({"C0", Integer(1)});
  bad.components.push_back({"C1", Integer(1)});
  bad.pairing = RationalMatrix(2, 2);
  bad.pairing(0, 0) = Rational(2);
  bad.pairing(0, 1) = Rational(-2);
  bad.pairing(1, 0) = Rational(-2);
  bad.pairing(1, 1) = Rational(2);
  try {
    check_fiber_form(bad);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSemidefinite);
  }
  CHECK(!testsupport::grid_oracle_semidefinite(bad));  // oracle agrees
}

TEST_CASE("radical above the fiber line is rejected") {
  FiberModel split;
  split.place_id = "v";
  for (int i = 0; i < 4; ++i)
    split.components.push_back({"C" + std::to_string(i), Integer(1)});
  split.pairing = RationalMatrix(4, 4);
  split.pairing(0, 0) = split.pairing(1, 1) = Rational(-2);
  split.pairing(0, 1) = split.pairing(1, 0) = Rational(2);
  split.pairing(2, 2) = split.pairing(3, 3) = Rational(-2);
  split.pairing(2, 3) = split.pairing(3, 2) = Rational(2);
  try {
    check_fiber_form(split);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::KernelTooLarge);
  }
  CHECK(!testsupport::grid_oracle_semidefinite(split));  // zero off the fiber line
}

TEST_CASE("kernel identity violation is an invalid fiber") {
  FiberModel bad = kodaira_cycle(2);
  bad.pairing(1, 1) = Rational(-1);
  try {
    check_fiber_form(bad);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidFiber);
  }
}

TEST_CASE("negativity off the kernel line") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> num(-6, 6), den(1, 3);
  for (std::size_t n = 2; n <= 6; ++n) {
    FiberModel fiber = kodaira_cycle(n);
    const std::vector<Rational> mult = dense_coefficients(fiber, fiber_vector(fiber));
    int tested = 0;
    while (tested < 25) {
      std::vector<Rational> x(n);
      for (auto& v : x) v = frac(num(rng), den(rng));
      if (testsupport::proportional(x, mult)) continue;
      bool zero = true;
      for (const auto& v : x) zero = zero && v == 0;
      if (zero) continue;
      CHECK(quadratic_value(fiber, x) < 0);
      ++tested;
    }
    CHECK(quadratic_value(fiber, mult) == 0);
  }
}

TEST_CASE("quadratic value matches the bilinear pairing") {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
  FiberModel star = kodaira_star();
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> x(star.size());
    for (auto& v : x) v = frac(num(rng), den(rng));
    FibralDivisor d = make_divisor(star, x);
    CHECK(quadratic_value(star, x) == pair_fibral(star, d, d));
  }
}
