#include "castlab/bench.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <vector>

#include "castlab/ecb.hpp"
#include "castlab/error.hpp"
#include "castlab/rng.hpp"

namespace castlab {

std::string_view to_string(OpKind k) noexcept {
  return k == OpKind::RoundFunction ? "round_function" : "block_encrypt";
}

namespace {

using Clock = std::chrono::steady_clock;

struct ChainInput {
  RoundKeys keys;
  Word32 start = 0;
};

ChainInput chain_input(std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::array<std::uint8_t, kMaxKeyBytes> key{};
  for (std::size_t i = 0; i < key.size(); i += 8) {
    const std::uint64_t v = rng.next_u64();
    for (std::size_t j = 0; j < 8; ++j) key[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
  }
  return {key_schedule(MasterKey(key)), static_cast<Word32>(rng.next_u64())};
}

struct ChainState {
  Word32 x = 0;
  std::uint64_t sum = 0;  // off the dependency chain
};

template <Variant V>
ChainState run_chain(const RoundKeys& keys, ChainState s, std::uint64_t steps) {
  for (std::uint64_t i = 0; i < steps; ++i) {
    const int round = static_cast<int>(i & 15) + 1;
    s.x = round_function(round, V, keys.km[round - 1], keys.kr[round - 1], s.x);
    s.sum += s.x;
  }
  return s;
}

ChainState run_chain(Variant v, const RoundKeys& keys, ChainState s, std::uint64_t steps) {
  return v == Variant::Original ? run_chain<Variant::Original>(keys, s, steps)
                                : run_chain<Variant::Modified>(keys, s, steps);
}

std::uint64_t chain_checksum(const ChainState& s) { return s.sum ^ (std::uint64_t{s.x} << 32); }

std::uint64_t warmup_steps(std::uint64_t iterations) {
  // Multiple of 16 so the timed section starts at round 1.
  return (iterations / 10 + 15) & ~std::uint64_t{15};
}

constexpr std::size_t kMiB = std::size_t{1} << 20;

std::vector<std::uint8_t> bench_buffer(std::size_t megabytes, std::uint64_t seed) {
  if (megabytes == 0) throw Error(ErrorKind::InvalidArgument, "block benchmark needs >= 1 MB");
  std::vector<std::uint8_t> buf(megabytes * kMiB);
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < buf.size(); i += 8) {
    const std::uint64_t v = rng.next_u64();
    for (std::size_t j = 0; j < 8; ++j) buf[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
  }
  return buf;
}

MasterKey bench_key(std::uint64_t seed) {
  SplitMix64 rng = derive_stream(seed, 1);
  std::array<std::uint8_t, kMaxKeyBytes> key{};
  for (auto& b : key) b = static_cast<std::uint8_t>(rng.next_u64());
  return MasterKey(key);
}

std::uint64_t fnv1a(std::span<const std::uint8_t> data) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (std::uint8_t b : data) {
    h ^= b;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace

std::uint64_t round_function_chain(Variant variant, std::uint64_t iterations, std::uint64_t seed) {
  const ChainInput in = chain_input(seed);
  ChainState s{in.start, 0};
  const std::uint64_t steps = warmup_steps(iterations) + iterations;
  for (std::uint64_t i = 0; i < steps; ++i) {
    const int round = static_cast<int>(i % 16) + 1;
    s.x = round_function(round, variant, in.keys.km[round - 1], in.keys.kr[round - 1], s.x);
    s.sum += s.x;
  }
  return chain_checksum(s);
}

BenchReport bench_round_function(Variant variant, std::uint64_t iterations, std::uint64_t seed) {
  if (iterations == 0) throw Error(ErrorKind::InvalidArgument, "benchmark needs iterations >= 1");
  const ChainInput in = chain_input(seed);
  const std::uint64_t warmup = warmup_steps(iterations);

  // Warm-up time is discarded; the timed section continues the same chain.
  const ChainState warm = run_chain(variant, in.keys, {in.start, 0}, warmup);
  const auto t0 = Clock::now();
  const ChainState s = run_chain(variant, in.keys, warm, iterations);
  const auto t1 = Clock::now();

  BenchReport r;
  r.variant = variant;
  r.op_kind = OpKind::RoundFunction;
  r.iterations = iterations;
  r.total_time_ns = static_cast<std::uint64_t>(
      std::max<std::int64_t>(1, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
  r.ns_per_op = static_cast<double>(r.total_time_ns) / static_cast<double>(iterations);
  r.checksum = chain_checksum(s);
  return r;
}

BenchReport bench_block_encrypt(Variant variant, std::size_t megabytes, int rounds,
                                std::uint64_t seed) {
  std::vector<std::uint8_t> buf = bench_buffer(megabytes, seed);
  const Cast128 cipher(bench_key(seed), variant, rounds);

  std::vector<std::uint8_t> warm(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 10 / 8 * 8));
  ecb_encrypt_in_place(warm, cipher);

  const auto t0 = Clock::now();
  ecb_encrypt_in_place(buf, cipher);
  const auto t1 = Clock::now();

  BenchReport r;
  r.variant = variant;
  r.op_kind = OpKind::BlockEncrypt;
  r.iterations = buf.size() / kBlockBytes;
  r.total_time_ns = static_cast<std::uint64_t>(
      std::max<std::int64_t>(1, std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
  r.ns_per_op = static_cast<double>(r.total_time_ns) / static_cast<double>(r.iterations);
  r.throughput_mb_s = static_cast<double>(megabytes) / (static_cast<double>(r.total_time_ns) * 1e-9);
  r.checksum = fnv1a(buf);
  return r;
}

std::uint64_t block_encrypt_checksum(Variant variant, std::size_t megabytes, int rounds,
                                     std::uint64_t seed) {
  std::vector<std::uint8_t> buf = bench_buffer(megabytes, seed);
  const Cast128 cipher(bench_key(seed), variant, rounds);
  for (std::size_t off = 0; off < buf.size(); off += kBlockBytes) {
    auto chunk = std::span<std::uint8_t>(buf).subspan(off).first<kBlockBytes>();
    cipher.encrypt(Block64::from_bytes(chunk)).to_bytes(chunk);
  }
  return fnv1a(buf);
}

namespace {

template <class Run>
BenchComparison compare(int repeats, const Run& run) {
  if (repeats < 1) throw Error(ErrorKind::InvalidArgument, "repeats must be >= 1");
  BenchComparison c;
  for (int i = 0; i < repeats; ++i) {
    const BenchReport o = run(Variant::Original);
    const BenchReport m = run(Variant::Modified);
    if (i == 0 || o.total_time_ns < c.original.total_time_ns) c.original = o;
    if (i == 0 || m.total_time_ns < c.modified.total_time_ns) c.modified = m;
  }
  c.speedup = c.original.ns_per_op / c.modified.ns_per_op;
  c.original.speedup_modified_vs_original = c.speedup;
  c.modified.speedup_modified_vs_original = c.speedup;
  return c;
}

}  // namespace

BenchComparison compare_round_function(std::uint64_t iterations, std::uint64_t seed, int repeats) {
  return compare(repeats, [&](Variant v) { return bench_round_function(v, iterations, seed); });
}

BenchComparison compare_block_encrypt(std::size_t megabytes, int rounds, std::uint64_t seed,
                                      int repeats) {
  return compare(repeats, [&](Variant v) { return bench_block_encrypt(v, megabytes, rounds, seed); });
}

}  // namespace castlab
