#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "castlab/cast128.hpp"

namespace castlab {

enum class OpKind { RoundFunction, BlockEncrypt };

std::string_view to_string(OpKind k) noexcept;

// Execution-time improvement of F claimed for the regrouped variant, in
// percent. Reported next to measurements; never asserted.
inline constexpr double kReferenceImprovementPercent = 20.0;

struct BenchReport {
  Variant variant = Variant::Original;
  OpKind op_kind = OpKind::RoundFunction;
  std::uint64_t iterations = 0;  // F calls, or blocks for BlockEncrypt
  std::uint64_t total_time_ns = 0;
  double ns_per_op = 0;
  double throughput_mb_s = 0;  // BlockEncrypt only
  double speedup_modified_vs_original = 0;  // filled by the compare_* helpers
  std::uint64_t checksum = 0;
};

// Untimed evaluation of the benchmark chain x_{k+1} = F_{round(k)}(x_k),
// cycling through rounds 1..16 of a seed-derived key, warm-up included.
// Equals the checksum bench_round_function reports for the same arguments.
std::uint64_t round_function_chain(Variant variant, std::uint64_t iterations, std::uint64_t seed);

// Times a serially dependent chain of F evaluations so the measurement sees
// the latency of one call rather than overlapped independent calls. A
// further 10% of `iterations` runs first as untimed warm-up.
BenchReport bench_round_function(Variant variant, std::uint64_t iterations, std::uint64_t seed);

// ECB encryption of an in-memory buffer of `megabytes` MiB.
BenchReport bench_block_encrypt(Variant variant, std::size_t megabytes, int rounds = kMaxRounds,
                                std::uint64_t seed = 0);

// FNV-1a 64 over ECB ciphertext of the same buffer bench_block_encrypt uses.
std::uint64_t block_encrypt_checksum(Variant variant, std::size_t megabytes, int rounds,
                                     std::uint64_t seed);

struct BenchComparison {
  BenchReport original;
  BenchReport modified;
  double speedup = 0;  // original ns/op divided by modified ns/op
};

// Alternates the variants `repeats` times and keeps each one's fastest run.
BenchComparison compare_round_function(std::uint64_t iterations, std::uint64_t seed, int repeats = 5);
BenchComparison compare_block_encrypt(std::size_t megabytes, int rounds, std::uint64_t seed,
                                      int repeats = 3);

}  // namespace castlab
