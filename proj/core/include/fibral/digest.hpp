#pragma once

#include <string>
#include <string_view>

namespace fibral {

// Lowercase hex SHA-256 of the exact byte sequence.
std::string sha256_hex(std::string_view data);

}  // namespace fibral
