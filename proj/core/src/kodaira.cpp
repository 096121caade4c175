#include "fibral/kodaira.hpp"

#include "fibral/error.hpp"

namespace fibral {

FiberModel kodaira_cycle(std::size_t n, const std::string& place_id) {
  if (n < 2)
    throw Error(ErrorCode::InvalidFiber, "cycle fibers need at least two components");
  FiberModel fiber;
  fiber.place_id = place_id;
  for (std::size_t i = 0; i < n; ++i)
    fiber.components.push_back({"C" + std::to_string(i), Integer(1)});
  fiber.pairing = RationalMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) fiber.pairing(i, i) = Rational(-2);
  if (n == 2) {
    fiber.pairing(0, 1) = Rational(2);
    fiber.pairing(1, 0) = Rational(2);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = (i + 1) % n;
      fiber.pairing(i, j) = Rational(1);
      fiber.pairing(j, i) = Rational(1);
    }
  }
  return fiber;
}

FiberModel kodaira_star(const std::string& place_id) {
  FiberModel fiber;
  fiber.place_id = place_id;
  fiber.components.push_back({"C0", Integer(2)});
  for (std::size_t i = 1; i <= 4; ++i)
    fiber.components.push_back({"C" + std::to_string(i), Integer(1)});
  fiber.pairing = RationalMatrix(5, 5);
  for (std::size_t i = 0; i < 5; ++i) fiber.pairing(i, i) = Rational(-2);
  for (std::size_t i = 1; i <= 4; ++i) {
    fiber.pairing(0, i) = Rational(1);
    fiber.pairing(i, 0) = Rational(1);
  }
  return fiber;
}

FiberModel make_kodaira_fiber(const std::string& type, std::size_t n,
                              const std::string& place_id) {
  if (type == "I_n") return kodaira_cycle(n, place_id);
  if (type == "I0*") return kodaira_star(place_id);
  throw Error(ErrorCode::InvalidFiber, "unknown fiber type '" + type + "'");
}

}  // namespace fibral
