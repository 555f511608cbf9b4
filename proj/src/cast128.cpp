#include "castlab/cast128.hpp"

#include <algorithm>

#include "castlab/error.hpp"
#include "castlab/hex.hpp"

namespace castlab {

Block64 Block64::from_bytes(std::span<const std::uint8_t, kBlockBytes> in) noexcept {
  auto word = [&](std::size_t o) {
    return (Word32{in[o]} << 24) | (Word32{in[o + 1]} << 16) | (Word32{in[o + 2]} << 8) |
           Word32{in[o + 3]};
  };
  return {word(0), word(4)};
}

void Block64::to_bytes(std::span<std::uint8_t, kBlockBytes> out) const noexcept {
  for (int i = 0; i < 4; ++i) {
    out[i] = static_cast<std::uint8_t>(left >> (24 - 8 * i));
    out[4 + i] = static_cast<std::uint8_t>(right >> (24 - 8 * i));
  }
}

std::array<std::uint8_t, kBlockBytes> Block64::to_bytes() const noexcept {
  std::array<std::uint8_t, kBlockBytes> out{};
  to_bytes(std::span<std::uint8_t, kBlockBytes>(out));
  return out;
}

Block64 Block64::from_hex(std::string_view hex) {
  const auto bytes = parse_hex(hex);
  if (bytes.size() != kBlockBytes) {
    throw Error(ErrorKind::InvalidHex, "a block needs exactly 16 hex digits");
  }
  return from_bytes(std::span<const std::uint8_t, kBlockBytes>(bytes.data(), kBlockBytes));
}

std::string Block64::hex() const {
  const auto bytes = to_bytes();
  return to_hex(bytes);
}

MasterKey::MasterKey(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMinKeyBytes || bytes.size() > kMaxKeyBytes) {
    throw Error(ErrorKind::InvalidKeyLength,
                "key must be 5..16 octets, got " + std::to_string(bytes.size()));
  }
  std::copy(bytes.begin(), bytes.end(), bytes_.begin());
  length_ = bytes.size();
}

MasterKey MasterKey::from_hex(std::string_view hex) { return MasterKey(parse_hex(hex)); }

std::string MasterKey::hex() const { return to_hex(bytes()); }

MasterKey MasterKey::with_bit_flipped(std::size_t bit_index) const {
  if (bit_index >= bit_length()) {
    throw Error(ErrorKind::InvalidBitIndex, "bit " + std::to_string(bit_index) +
                                                " is outside a " + std::to_string(bit_length()) +
                                                "-bit key");
  }
  MasterKey out = *this;
  out.bytes_[bit_index / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit_index % 8));
  return out;
}

std::string_view to_string(Variant v) noexcept {
  return v == Variant::Original ? "original" : "modified";
}

Variant parse_variant(std::string_view name) {
  if (name == "original") return Variant::Original;
  if (name == "modified") return Variant::Modified;
  throw Error(ErrorKind::InvalidArgument, "unknown variant '" + std::string(name) + "'");
}

void check_rounds(int rounds) {
  if (rounds < 1 || rounds > kMaxRounds) {
    throw Error(ErrorKind::InvalidRounds,
                "rounds must be in [1, 16], got " + std::to_string(rounds));
  }
}

namespace {

// 16-byte working buffer of the key schedule (x0..xF or z0..zF).
using KeyState = std::array<std::uint8_t, 16>;

Word32 word_at(const KeyState& s, int i) {
  return (Word32{s[i]} << 24) | (Word32{s[i + 1]} << 16) | (Word32{s[i + 2]} << 8) |
         Word32{s[i + 3]};
}

void put_word(KeyState& s, int i, Word32 w) {
  s[i] = static_cast<std::uint8_t>(w >> 24);
  s[i + 1] = static_cast<std::uint8_t>(w >> 16);
  s[i + 2] = static_cast<std::uint8_t>(w >> 8);
  s[i + 3] = static_cast<std::uint8_t>(w);
}

using sbox::S5;
using sbox::S6;
using sbox::S7;
using sbox::S8;

// z0..zF from x0..xF.
void mix_x_to_z(const KeyState& x, KeyState& z) {
  put_word(z, 0x0, word_at(x, 0x0) ^ S5[x[0xD]] ^ S6[x[0xF]] ^ S7[x[0xC]] ^ S8[x[0xE]] ^ S7[x[0x8]]);
  put_word(z, 0x4, word_at(x, 0x8) ^ S5[z[0x0]] ^ S6[z[0x2]] ^ S7[z[0x1]] ^ S8[z[0x3]] ^ S8[x[0xA]]);
  put_word(z, 0x8, word_at(x, 0xC) ^ S5[z[0x7]] ^ S6[z[0x6]] ^ S7[z[0x5]] ^ S8[z[0x4]] ^ S5[x[0x9]]);
  put_word(z, 0xC, word_at(x, 0x4) ^ S5[z[0xA]] ^ S6[z[0x9]] ^ S7[z[0xB]] ^ S8[z[0x8]] ^ S6[x[0xB]]);
}

// x0..xF from z0..zF.
void mix_z_to_x(const KeyState& z, KeyState& x) {
  put_word(x, 0x0, word_at(z, 0x8) ^ S5[z[0x5]] ^ S6[z[0x7]] ^ S7[z[0x4]] ^ S8[z[0x6]] ^ S7[z[0x0]]);
  put_word(x, 0x4, word_at(z, 0x0) ^ S5[x[0x0]] ^ S6[x[0x2]] ^ S7[x[0x1]] ^ S8[x[0x3]] ^ S8[z[0x2]]);
  put_word(x, 0x8, word_at(z, 0x4) ^ S5[x[0x7]] ^ S6[x[0x6]] ^ S7[x[0x5]] ^ S8[x[0x4]] ^ S5[z[0x1]]);
  put_word(x, 0xC, word_at(z, 0xC) ^ S5[x[0xA]] ^ S6[x[0x9]] ^ S7[x[0xB]] ^ S8[x[0x8]] ^ S6[z[0x3]]);
}

// Output taps: four S5..S8 indices plus the final extra index, per subkey.
struct Tap {
  std::uint8_t a, b, c, d, extra;
};

Word32 tap(const KeyState& s, const Tap& t, int extra_box) {
  Word32 w = S5[s[t.a]] ^ S6[s[t.b]] ^ S7[s[t.c]] ^ S8[s[t.d]];
  switch (extra_box) {
    case 0: return w ^ S5[s[t.extra]];
    case 1: return w ^ S6[s[t.extra]];
    case 2: return w ^ S7[s[t.extra]];
    default: return w ^ S8[s[t.extra]];
  }
}

// Each quarter of the 16 subkeys: which state feeds it and its four taps.
constexpr std::array<std::array<Tap, 4>, 4> kTaps{{
    {{{0x8, 0x9, 0x7, 0x6, 0x2}, {0xA, 0xB, 0x5, 0x4, 0x6}, {0xC, 0xD, 0x3, 0x2, 0x9}, {0xE, 0xF, 0x1, 0x0, 0xC}}},
    {{{0x3, 0x2, 0xC, 0xD, 0x8}, {0x1, 0x0, 0xE, 0xF, 0xD}, {0x7, 0x6, 0x8, 0x9, 0x3}, {0x5, 0x4, 0xA, 0xB, 0x7}}},
    {{{0x3, 0x2, 0xC, 0xD, 0x9}, {0x1, 0x0, 0xE, 0xF, 0xC}, {0x7, 0x6, 0x8, 0x9, 0x2}, {0x5, 0x4, 0xA, 0xB, 0x6}}},
    {{{0x8, 0x9, 0x7, 0x6, 0x3}, {0xA, 0xB, 0x5, 0x4, 0x7}, {0xC, 0xD, 0x3, 0x2, 0x8}, {0xE, 0xF, 0x1, 0x0, 0xD}}},
}};

// Sixteen 32-bit subkeys; x is advanced in place so a second call continues
// the sequence (K17..K32).
std::array<Word32, 16> generate_sixteen(KeyState& x) {
  std::array<Word32, 16> k{};
  KeyState z{};
  for (int quarter = 0; quarter < 4; ++quarter) {
    // Quarters 0 and 2 tap z after an x->z mix; 1 and 3 tap x after z->x.
    if (quarter % 2 == 0) {
      mix_x_to_z(x, z);
    } else {
      mix_z_to_x(z, x);
    }
    const KeyState& src = (quarter % 2 == 0) ? z : x;
    for (int j = 0; j < 4; ++j) {
      k[quarter * 4 + j] = tap(src, kTaps[quarter][j], j);
    }
  }
  return k;
}

}  // namespace

RoundKeys key_schedule(const MasterKey& key) {
  KeyState x{};
  std::copy(key.bytes().begin(), key.bytes().end(), x.begin());

  RoundKeys out;
  out.km = generate_sixteen(x);
  const auto rotation = generate_sixteen(x);
  for (int i = 0; i < kMaxRounds; ++i) {
    out.kr[i] = static_cast<std::uint8_t>(rotation[i] & 0x1F);
  }
  return out;
}

namespace {

inline Block64 run_network(Block64 block, const RoundKeys& keys, Variant variant, int first,
                           int last, int step) noexcept {
  Word32 l = block.left;
  Word32 r = block.right;
  for (int round = first; round != last + step; round += step) {
    const Word32 f = round_function(round, variant, keys.km[round - 1], keys.kr[round - 1], r);
    const Word32 next_r = l ^ f;
    l = r;
    r = next_r;
  }
  return {r, l};
}

}  // namespace

Block64 encrypt_block(Block64 block, const RoundKeys& keys, Variant variant, int rounds) {
  check_rounds(rounds);
  return run_network(block, keys, variant, 1, rounds, 1);
}

Block64 decrypt_block(Block64 block, const RoundKeys& keys, Variant variant, int rounds) {
  check_rounds(rounds);
  return run_network(block, keys, variant, rounds, 1, -1);
}

Cast128::Cast128(const MasterKey& key, Variant variant, int rounds)
    : Cast128(key_schedule(key), variant, rounds) {}

Cast128::Cast128(const RoundKeys& keys, Variant variant, int rounds)
    : keys_(keys), variant_(variant), rounds_(rounds) {
  check_rounds(rounds);
}

Block64 Cast128::encrypt(Block64 block) const noexcept {
  return run_network(block, keys_, variant_, 1, rounds_, 1);
}

Block64 Cast128::decrypt(Block64 block) const noexcept {
  return run_network(block, keys_, variant_, rounds_, 1, -1);
}

}  // namespace castlab
