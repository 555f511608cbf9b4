#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace castlab {

// Parses an even-length string of hex digits (either case). Throws
// Error(InvalidHex) on odd length or a non-hex character.
std::vector<std::uint8_t> parse_hex(std::string_view text);

// Upper-case hex, two digits per byte.
std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace castlab
