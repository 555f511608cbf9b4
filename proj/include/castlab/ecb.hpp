#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "castlab/cast128.hpp"
#include "castlab/image.hpp"

namespace castlab {

struct EcbConfig {
  MasterKey key;
  Variant variant = Variant::Original;
  int rounds = kMaxRounds;
};

// Pixels are taken row-major in groups of eight, one block each. The pixel
// count must be a multiple of 8 (Error(NotBlockAligned) otherwise); images
// are never padded so plain and cipher images stay the same size.
GrayImage encrypt_image_ecb(const GrayImage& img, const EcbConfig& cfg);
GrayImage decrypt_image_ecb(const GrayImage& img, const EcbConfig& cfg);

// In-place ECB over an aligned buffer.
void ecb_encrypt_in_place(std::span<std::uint8_t> data, const Cast128& cipher);
void ecb_decrypt_in_place(std::span<std::uint8_t> data, const Cast128& cipher);

// PKCS#7 padded byte streams; decryption throws Error(BadPadding).
std::vector<std::uint8_t> encrypt_bytes_ecb(std::span<const std::uint8_t> data, const EcbConfig& cfg);
std::vector<std::uint8_t> decrypt_bytes_ecb(std::span<const std::uint8_t> data, const EcbConfig& cfg);

}  // namespace castlab
