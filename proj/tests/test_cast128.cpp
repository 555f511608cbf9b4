#include <openssl/cast.h>

#include <array>
#include <cstdint>
#include <vector>

#include "castlab/cast128.hpp"
#include "castlab/hex.hpp"
#include "castlab/rng.hpp"
#include "castlab/selftest.hpp"
#include "test_util.hpp"

using namespace castlab;

namespace {

std::vector<std::uint8_t> random_key_bytes(SplitMix64& rng) {
  std::vector<std::uint8_t> key(kMinKeyBytes + rng.below(kMaxKeyBytes - kMinKeyBytes + 1));
  for (auto& b : key) b = static_cast<std::uint8_t>(rng.next_u64());
  return key;
}

std::array<std::uint8_t, 8> openssl_encrypt(const std::vector<std::uint8_t>& key,
                                            const std::array<std::uint8_t, 8>& in) {
  CAST_KEY ks;
  CAST_set_key(&ks, static_cast<int>(key.size()), key.data());
  std::array<std::uint8_t, 8> out{};
  CAST_ecb_encrypt(in.data(), out.data(), &ks, CAST_ENCRYPT);
  return out;
}

}  // namespace

TEST_CASE("RFC 2144 single-block vectors") {
  for (const KnownAnswer& v : kRfcVectors) {
    CAPTURE(v.key_hex);
    const Cast128 c(MasterKey::from_hex(v.key_hex), Variant::Original, v.rounds);
    const Block64 plain = Block64::from_hex(v.plain_hex);
    CHECK(c.encrypt(plain).hex() == v.cipher_hex);
    CHECK(c.decrypt(Block64::from_hex(v.cipher_hex)) == plain);
  }
}

TEST_CASE("RFC 2144 full maintenance test") {
  const MaintenanceResult m = run_maintenance_test();
  CHECK(m.a_hex == kMaintenanceFinalA);
  CHECK(m.b_hex == kMaintenanceFinalB);
}

TEST_CASE("original variant agrees with OpenSSL on random keys") {
  SplitMix64 rng(2024);
  for (int i = 0; i < 2000; ++i) {
    const auto key = random_key_bytes(rng);
    std::array<std::uint8_t, 8> in{};
    for (auto& b : in) b = static_cast<std::uint8_t>(rng.next_u64());

    // OpenSSL follows the RFC: 12 rounds for keys of 80 bits or fewer.
    const int rounds = key.size() <= 10 ? 12 : 16;
    const Cast128 c(MasterKey(key), Variant::Original, rounds);
    CHECK(c.encrypt(Block64::from_bytes(in)).to_bytes() == openssl_encrypt(key, in));
  }
}

TEST_CASE("hand-computed round function values") {
  // Round 2 is type 2; km = kr = r = 0 selects entry 0 of every S-box.
  REQUIRE(sbox::S1[0] == 0x30FB40D4u);
  REQUIRE(sbox::S2[0] == 0x1F201094u);
  REQUIRE(sbox::S3[0] == 0x8DEFC240u);
  REQUIRE(sbox::S4[0] == 0x9DB30420u);
  CHECK(round_function(2, Variant::Original, 0, 0, 0) == 0x0279F6A0u);
  CHECK(round_function(2, Variant::Modified, 0, 0, 0) == 0x2237F6A0u);
}

TEST_CASE("round types cycle 1, 2, 3") {
  CHECK(round_type(1) == 1);
  CHECK(round_type(2) == 2);
  CHECK(round_type(3) == 3);
  CHECK(round_type(4) == 1);
  CHECK(round_type(16) == 1);
  CHECK(rotl32(0x80000001u, 1) == 0x00000003u);
  CHECK(rotl32(0x12345678u, 0) == 0x12345678u);
  CHECK(rotl32(0x01234567u, 8) == 0x23456701u);
}

TEST_CASE("kr = 0 applies no rotation") {
  // Type 3: I = km - r; with km - r = 0x00010203 the S-box indices are 0, 1, 2, 3.
  const Word32 expected = ((sbox::S1[0] + sbox::S2[1]) ^ sbox::S3[2]) - sbox::S4[3];
  CHECK(round_function(3, Variant::Original, 0x00010203u + 5, 0, 5) == expected);
}

TEST_CASE("one round is a single Feistel step followed by the swap") {
  const RoundKeys keys = key_schedule(MasterKey::from_hex("0123456712345678234567893456789A"));
  const Block64 b = Block64::from_hex("0123456789ABCDEF");
  for (Variant v : kVariants) {
    const Block64 out = encrypt_block(b, keys, v, 1);
    CHECK(out.left == (b.left ^ round_function(1, v, keys.km[0], keys.kr[0], b.right)));
    CHECK(out.right == b.right);
  }
}

TEST_CASE("type-1 identity: modified = original - 2*S4[Id]") {
  SplitMix64 rng(5);
  for (int i = 0; i < 100000; ++i) {
    const int round = 1 + 3 * static_cast<int>(rng.below(6));
    const auto km = static_cast<Word32>(rng.next_u64());
    const auto kr = static_cast<int>(rng.below(32));
    const auto r = static_cast<Word32>(rng.next_u64());
    const Word32 id = rotl32(km + r, kr) & 0xFF;
    const Word32 expected = round_function(round, Variant::Original, km, kr, r) - 2 * sbox::S4[id];
    REQUIRE(round_function(round, Variant::Modified, km, kr, r) == expected);
  }
}

TEST_CASE("decrypt inverts encrypt for every variant and round count") {
  SplitMix64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const RoundKeys keys = key_schedule(MasterKey(random_key_bytes(rng)));
    const Block64 b = Block64::from_u64(rng.next_u64());
    for (Variant v : kVariants) {
      for (int r = 1; r <= kMaxRounds; ++r) {
        REQUIRE(decrypt_block(encrypt_block(b, keys, v, r), keys, v, r) == b);
      }
    }
  }
}

TEST_CASE("variants diverge and rotation subkeys stay in range") {
  SplitMix64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const RoundKeys keys = key_schedule(MasterKey(random_key_bytes(rng)));
    for (auto kr : keys.kr) CHECK(kr < 32);
    const Block64 b = Block64::from_u64(rng.next_u64());
    CHECK(encrypt_block(b, keys, Variant::Original) != encrypt_block(b, keys, Variant::Modified));
  }
}

TEST_CASE("short keys are zero padded") {
  const RoundKeys a = key_schedule(MasterKey::from_hex("0123456712"));
  const RoundKeys b = key_schedule(MasterKey::from_hex("01234567120000000000000000000000"));
  CHECK(a == b);
}

TEST_CASE("block serialization is big-endian") {
  const Block64 b = Block64::from_hex("0123456789ABCDEF");
  CHECK(b.left == 0x01234567u);
  CHECK(b.right == 0x89ABCDEFu);
  CHECK(b.to_u64() == 0x0123456789ABCDEFull);
  const auto bytes = b.to_bytes();
  CHECK(bytes[0] == 0x01);
  CHECK(bytes[7] == 0xEF);
  CHECK(Block64::from_bytes(bytes) == b);
  CHECK(Block64::from_u64(b.to_u64()) == b);
  CHECK(b.hex() == "0123456789ABCDEF");
}

TEST_CASE("master key validation") {
  CHECK_THROWS_KIND(MasterKey::from_hex("01234567"), ErrorKind::InvalidKeyLength);
  CHECK_THROWS_KIND(MasterKey::from_hex("0123456789ABCDEF0123456789ABCDEF01"), ErrorKind::InvalidKeyLength);
  CHECK_THROWS_KIND(MasterKey::from_hex("ZZZ"), ErrorKind::InvalidHex);
  CHECK_THROWS_KIND(MasterKey::from_hex("0123456"), ErrorKind::InvalidHex);
  CHECK_THROWS_KIND(Block64::from_hex("0123"), ErrorKind::InvalidHex);

  const MasterKey k = MasterKey::from_hex("0123456712");
  CHECK(k.size() == 5);
  CHECK(k.bit_length() == 40);
  CHECK(k.hex() == "0123456712");
  CHECK(MasterKey::from_hex("adf278565e262ad1f5dec94a0bf25b27").hex() == "ADF278565E262AD1F5DEC94A0BF25B27");
}

TEST_CASE("key bit flips count from the first octet's top bit") {
  const MasterKey k1 = MasterKey::from_hex("ADF278565E262AD1F5DEC94A0BF25B27");
  const MasterKey k2 = MasterKey::from_hex("ADF238565E262AD1F5DEC94A0BF25B27");
  CHECK(k1.with_bit_flipped(17) == k2);
  CHECK(k1.with_bit_flipped(0).hex() == "2DF278565E262AD1F5DEC94A0BF25B27");
  CHECK(k1.with_bit_flipped(127).hex() == "ADF278565E262AD1F5DEC94A0BF25B26");
  CHECK(k1.with_bit_flipped(5).with_bit_flipped(5) == k1);
  CHECK_THROWS_KIND(k1.with_bit_flipped(128), ErrorKind::InvalidBitIndex);
  CHECK_THROWS_KIND(MasterKey::from_hex("0123456712").with_bit_flipped(40), ErrorKind::InvalidBitIndex);
}

TEST_CASE("round count validation") {
  const RoundKeys keys = key_schedule(MasterKey::from_hex("0123456712"));
  CHECK_THROWS_KIND(encrypt_block({}, keys, Variant::Original, 0), ErrorKind::InvalidRounds);
  CHECK_THROWS_KIND(decrypt_block({}, keys, Variant::Original, 17), ErrorKind::InvalidRounds);
  CHECK_THROWS_KIND(Cast128(keys, Variant::Modified, -1), ErrorKind::InvalidRounds);
  CHECK_NOTHROW(Cast128(keys, Variant::Modified, 1));
}

TEST_CASE("variant names") {
  CHECK(parse_variant("original") == Variant::Original);
  CHECK(parse_variant("modified") == Variant::Modified);
  CHECK(to_string(Variant::Modified) == "modified");
  CHECK_THROWS_AS(parse_variant("rc5"), Error);
}

TEST_CASE("hex helpers") {
  CHECK(to_hex(parse_hex("00ff7A")) == "00FF7A");
  CHECK(parse_hex("").empty());
  CHECK_THROWS_KIND(parse_hex("0g"), ErrorKind::InvalidHex);
}
