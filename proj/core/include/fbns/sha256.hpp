#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace fbns {

// FIPS 180-4 SHA-256; lowercase hex digest.
std::string sha256_hex(const void* data, std::size_t len);
std::string sha256_hex(std::string_view text);

}  // namespace fbns
