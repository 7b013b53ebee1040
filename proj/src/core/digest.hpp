#pragma once

#include <string>
#include <string_view>

namespace tarjim {

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace tarjim
