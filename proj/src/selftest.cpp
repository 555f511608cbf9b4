#include "castlab/selftest.hpp"

#include <algorithm>

#include "castlab/cast128.hpp"
#include "castlab/ecb.hpp"
#include "castlab/error.hpp"
#include "castlab/hex.hpp"
#include "castlab/rng.hpp"

namespace castlab {

MaintenanceResult run_maintenance_test(std::uint64_t iterations) {
  std::vector<std::uint8_t> a = parse_hex(kMaintenanceStartHex);
  std::vector<std::uint8_t> b = a;

  auto encrypt_half = [](std::vector<std::uint8_t>& data, std::size_t offset, const Cast128& c) {
    auto half = std::span<std::uint8_t>(data).subspan(offset).first<kBlockBytes>();
    c.encrypt(Block64::from_bytes(half)).to_bytes(half);
  };

  for (std::uint64_t i = 0; i < iterations; ++i) {
    const Cast128 with_b(MasterKey(b), Variant::Original);
    encrypt_half(a, 0, with_b);
    encrypt_half(a, 8, with_b);
    const Cast128 with_a(MasterKey(a), Variant::Original);
    encrypt_half(b, 0, with_a);
    encrypt_half(b, 8, with_a);
  }
  return {to_hex(a), to_hex(b)};
}

namespace {

CheckResult check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, std::move(detail)};
}

MasterKey random_key(SplitMix64& rng) {
  std::vector<std::uint8_t> bytes(kMinKeyBytes + rng.below(kMaxKeyBytes - kMinKeyBytes + 1));
  for (auto& v : bytes) v = static_cast<std::uint8_t>(rng.next_u64());
  return MasterKey(bytes);
}

}  // namespace

std::vector<CheckResult> run_selftest(bool include_maintenance) {
  std::vector<CheckResult> out;

  for (const KnownAnswer& v : kRfcVectors) {
    const RoundKeys keys = key_schedule(MasterKey::from_hex(v.key_hex));
    const Block64 plain = Block64::from_hex(v.plain_hex);
    const Block64 cipher = encrypt_block(plain, keys, Variant::Original, v.rounds);
    const Block64 back = decrypt_block(cipher, keys, Variant::Original, v.rounds);
    const std::string label = "rfc2144 " + std::to_string(v.key_hex.size() * 4) + "-bit key";
    out.push_back(check(label, cipher.hex() == v.cipher_hex && back == plain,
                        "got " + cipher.hex() + ", expected " + std::string(v.cipher_hex)));
  }

  if (include_maintenance) {
    const MaintenanceResult m = run_maintenance_test();
    out.push_back(check("rfc2144 maintenance test",
                        m.a_hex == kMaintenanceFinalA && m.b_hex == kMaintenanceFinalB,
                        "a=" + m.a_hex + " b=" + m.b_hex));
  }

  SplitMix64 rng(0);
  out.push_back(check("splitmix64 reference output", rng.next_u64() == 0xE220A8397B1DCDAFull));

  bool roundtrip = true;
  bool kr_range = true;
  std::size_t divergent = 0;
  constexpr int kKeys = 200;
  for (int i = 0; i < kKeys; ++i) {
    const RoundKeys keys = key_schedule(random_key(rng));
    kr_range = kr_range && std::all_of(keys.kr.begin(), keys.kr.end(), [](auto k) { return k < 32; });
    const Block64 b = Block64::from_u64(rng.next_u64());
    for (Variant v : kVariants) {
      for (int r = 1; r <= kMaxRounds; ++r) {
        roundtrip = roundtrip && decrypt_block(encrypt_block(b, keys, v, r), keys, v, r) == b;
      }
    }
    divergent += encrypt_block(b, keys, Variant::Original) != encrypt_block(b, keys, Variant::Modified);
  }
  out.push_back(check("decrypt(encrypt(x)) == x, both variants, rounds 1..16", roundtrip));
  out.push_back(check("rotation subkeys in [0, 31]", kr_range));
  out.push_back(check("original and modified ciphertexts differ", divergent == kKeys,
                      std::to_string(divergent) + "/" + std::to_string(kKeys)));

  bool identity = true;
  for (int i = 0; i < 10000; ++i) {
    const int round = 1 + 3 * static_cast<int>(rng.below(6));
    const auto km = static_cast<Word32>(rng.next_u64());
    const auto kr = static_cast<int>(rng.below(32));
    const auto r = static_cast<Word32>(rng.next_u64());
    const Word32 id = rotl32(km + r, kr) & 0xFF;
    identity = identity && round_function(round, Variant::Modified, km, kr, r) ==
                               round_function(round, Variant::Original, km, kr, r) - 2 * sbox::S4[id];
  }
  out.push_back(check("type-1 F_modified == F_original - 2*S4[Id]", identity));

  bool ecb = true;
  const EcbConfig cfg{MasterKey::from_hex(kRfcVectors[0].key_hex), Variant::Modified, 16};
  for (std::size_t len = 0; len <= 64; ++len) {
    std::vector<std::uint8_t> data(len);
    for (auto& v : data) v = static_cast<std::uint8_t>(rng.next_u64());
    const auto c = encrypt_bytes_ecb(data, cfg);
    ecb = ecb && c.size() == (len / 8 + 1) * 8 && decrypt_bytes_ecb(c, cfg) == data;
  }
  out.push_back(check("ECB PKCS#7 roundtrip, lengths 0..64", ecb));

  return out;
}

}  // namespace castlab
