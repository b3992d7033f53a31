#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace momentforge {

/// SHA-256 digest of `data`, as a 64-char lowercase hex string.
std::string sha256_hex(std::string_view data);

} // namespace momentforge
