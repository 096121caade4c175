#pragma once

#include <string>

#include "fibral/clearing.hpp"
#include "fibral/surface.hpp"
#include "fibral/witness.hpp"

namespace fibral {

// Parses a surface document.  Rationals must be integer or "p/q" strings
// (plain JSON integers are accepted); anything floating point is rejected.
// Errors carry the field locus; duplicate place or component identifiers
// are reported as such.
SurfaceModel load_surface(const std::string& text);
SurfaceModel load_surface_file(const std::string& path);

// Canonical document: schema field order, all rationals as strings,
// two-space indentation, trailing newline.  load_surface inverts it.
std::string serialize_surface(const SurfaceModel& surface);

// SHA-256 of the canonical document; binds certificates to their input.
std::string surface_digest(const SurfaceModel& surface);

// One entry of the `places` array, e.g. for generated fiber fragments.
std::string serialize_fiber_fragment(const FiberModel& fiber);

std::string witness_to_text(const Witness& witness);
Witness witness_from_text(const std::string& text);

std::string certificate_to_text(const MorphismCertificate& cert);
MorphismCertificate certificate_from_text(const std::string& text);
MorphismCertificate certificate_from_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace fibral
