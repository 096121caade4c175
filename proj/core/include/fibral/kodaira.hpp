#pragma once

#include <cstddef>
#include <string>

#include "fibral/surface.hpp"

namespace fibral {

// Multiplicative cycle of n rational curves (n >= 2).  For n == 2 the two
// components meet in two points, so the off-diagonal entry is 2.
FiberModel kodaira_cycle(std::size_t n, const std::string& place_id = "v");

// Star of four reduced legs around a central component of multiplicity 2.
FiberModel kodaira_star(const std::string& place_id = "v");

// Dispatch on the textual type tag used by the command line ("I_n" / "I0*").
FiberModel make_kodaira_fiber(const std::string& type, std::size_t n,
                              const std::string& place_id = "v");

}  // namespace fibral
