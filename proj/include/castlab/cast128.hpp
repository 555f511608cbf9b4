#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "castlab/sboxes.hpp"

namespace castlab {

using Word32 = std::uint32_t;

inline constexpr int kMaxRounds = 16;
inline constexpr std::size_t kBlockBytes = 8;
inline constexpr std::size_t kMinKeyBytes = 5;
inline constexpr std::size_t kMaxKeyBytes = 16;

// One 64-bit block as (left, right) halves. Byte serialization is
// big-endian: the most significant byte of `left` comes first.
struct Block64 {
  Word32 left = 0;
  Word32 right = 0;

  static Block64 from_u64(std::uint64_t v) noexcept {
    return {static_cast<Word32>(v >> 32), static_cast<Word32>(v)};
  }
  std::uint64_t to_u64() const noexcept {
    return (static_cast<std::uint64_t>(left) << 32) | right;
  }

  static Block64 from_bytes(std::span<const std::uint8_t, kBlockBytes> in) noexcept;
  void to_bytes(std::span<std::uint8_t, kBlockBytes> out) const noexcept;
  std::array<std::uint8_t, kBlockBytes> to_bytes() const noexcept;

  // 16 hex digits.
  static Block64 from_hex(std::string_view hex);
  std::string hex() const;

  friend bool operator==(const Block64&, const Block64&) = default;
};

// 40..128-bit user key, stored unpadded. Bit indices used by
// with_bit_flipped() count from the most significant bit of the first octet.
class MasterKey {
 public:
  explicit MasterKey(std::span<const std::uint8_t> bytes);
  static MasterKey from_hex(std::string_view hex);

  std::span<const std::uint8_t> bytes() const noexcept { return {bytes_.data(), length_}; }
  std::size_t size() const noexcept { return length_; }
  std::size_t bit_length() const noexcept { return length_ * 8; }
  std::string hex() const;

  MasterKey with_bit_flipped(std::size_t bit_index) const;

  friend bool operator==(const MasterKey& a, const MasterKey& b) noexcept {
    return a.length_ == b.length_ && a.bytes_ == b.bytes_;
  }

 private:
  std::array<std::uint8_t, kMaxKeyBytes> bytes_{};
  std::size_t length_ = 0;
};

struct RoundKeys {
  std::array<Word32, kMaxRounds> km{};
  std::array<std::uint8_t, kMaxRounds> kr{};  // each in [0, 31]

  friend bool operator==(const RoundKeys&, const RoundKeys&) = default;
};

// Original is the RFC 2144 round function; Modified regroups the S-box
// combine so that the first and third operations are independent.
enum class Variant { Original, Modified };

std::string_view to_string(Variant v) noexcept;
Variant parse_variant(std::string_view name);
inline constexpr std::array<Variant, 2> kVariants{Variant::Original, Variant::Modified};

constexpr Word32 rotl32(Word32 x, int n) noexcept { return std::rotl(x, n); }

// Round type 1, 2 or 3 for a 1-based round index.
constexpr int round_type(int round_index) noexcept { return (round_index - 1) % 3 + 1; }

RoundKeys key_schedule(const MasterKey& key);

// F for one round. Throughout, "^" is XOR and +/- wrap modulo 2^32.
//
//   type 1: I = (km + r) <<< kr
//   type 2: I = (km ^ r) <<< kr
//   type 3: I = (km - r) <<< kr
//
//            Original                     Modified
//   type 1   ((s1 ^ s2) - s3) + s4        (s1 ^ s2) - (s3 + s4)
//   type 2   ((s1 - s2) + s3) ^ s4        (s1 - s2) + (s3 ^ s4)
//   type 3   ((s1 + s2) ^ s3) - s4        (s1 + s2) ^ (s3 - s4)
//
// with s1 = S1[Ia], ..., s4 = S4[Id], Ia the most significant byte of I.
inline Word32 round_function(int round_index, Variant variant, Word32 km, int kr,
                             Word32 r_prev) noexcept {
  const int type = round_type(round_index);
  Word32 i = 0;
  switch (type) {
    case 1: i = km + r_prev; break;
    case 2: i = km ^ r_prev; break;
    default: i = km - r_prev; break;
  }
  i = rotl32(i, kr);
  const Word32 s1 = sbox::S1[i >> 24];
  const Word32 s2 = sbox::S2[(i >> 16) & 0xFF];
  const Word32 s3 = sbox::S3[(i >> 8) & 0xFF];
  const Word32 s4 = sbox::S4[i & 0xFF];
  if (variant == Variant::Original) {
    switch (type) {
      case 1: return ((s1 ^ s2) - s3) + s4;
      case 2: return ((s1 - s2) + s3) ^ s4;
      default: return ((s1 + s2) ^ s3) - s4;
    }
  }
  switch (type) {
    case 1: return (s1 ^ s2) - (s3 + s4);
    case 2: return (s1 - s2) + (s3 ^ s4);
    default: return (s1 + s2) ^ (s3 - s4);
  }
}

// Reduced-round operation runs the first `rounds` subkeys and then swaps the
// halves, so rounds == 12 is the RFC short-key mode and 16 the full cipher.
// Throws Error(InvalidRounds) outside [1, 16].
Block64 encrypt_block(Block64 block, const RoundKeys& keys, Variant variant,
                      int rounds = kMaxRounds);
Block64 decrypt_block(Block64 block, const RoundKeys& keys, Variant variant,
                      int rounds = kMaxRounds);

// Bound key/variant/rounds; the form the mode and analysis code uses.
class Cast128 {
 public:
  Cast128(const MasterKey& key, Variant variant, int rounds = kMaxRounds);
  Cast128(const RoundKeys& keys, Variant variant, int rounds = kMaxRounds);

  Block64 encrypt(Block64 block) const noexcept;
  Block64 decrypt(Block64 block) const noexcept;

  const RoundKeys& round_keys() const noexcept { return keys_; }
  Variant variant() const noexcept { return variant_; }
  int rounds() const noexcept { return rounds_; }

 private:
  RoundKeys keys_;
  Variant variant_;
  int rounds_;
};

void check_rounds(int rounds);

}  // namespace castlab
