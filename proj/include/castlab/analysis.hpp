#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "castlab/cast128.hpp"
#include "castlab/image.hpp"

namespace castlab {

// Keys of the key-sensitivity experiment; they differ in bit 17.
inline constexpr std::string_view kDefaultKey1Hex = "ADF278565E262AD1F5DEC94A0BF25B27";
inline constexpr std::string_view kDefaultKey2Hex = "ADF238565E262AD1F5DEC94A0BF25B27";

inline constexpr std::uint64_t kDefaultAvalancheSamples = 60000;
inline constexpr std::size_t kDefaultCorrelationPairs = 1200;

int hamming64(Block64 a, Block64 b) noexcept;

// ---------------------------------------------------------------------------
// Avalanche

// How two Hamming distances are ranked. CloserTo32 treats the distance
// nearest half the block as the better avalanche; Greater prefers more
// flipped bits. For independent Binomial(64, 1/2) distances the tie rates
// are about 0.1309 and 0.0704 respectively.
enum class Comparator { CloserTo32, Greater };
enum class Outcome { FirstBetter, SecondBetter, Tie };

Comparator parse_comparator(std::string_view name);  // "closer32" | "greater"
std::string_view to_string(Comparator c) noexcept;

Outcome avalanche_compare(int d1, int d2, Comparator mode) noexcept;

enum class AvalancheMode { PlaintextFlip, KeyFlip };

AvalancheMode parse_avalanche_mode(std::string_view name);  // "plaintext" | "key"
std::string_view to_string(AvalancheMode m) noexcept;

struct AvalancheConfig {
  AvalancheMode mode = AvalancheMode::PlaintextFlip;
  std::uint64_t samples = kDefaultAvalancheSamples;
  int rounds = kMaxRounds;
  MasterKey master_key = MasterKey::from_hex(kDefaultKey1Hex);
  std::uint64_t seed = 0;
  Comparator comparator = Comparator::CloserTo32;
  // Key mode only: flip this bit in every trial instead of a fresh random one.
  std::optional<std::size_t> fixed_key_bit;
  // The pair being compared; the table's *_original columns belong to
  // `first` and *_modified to `second`.
  Variant first = Variant::Original;
  Variant second = Variant::Modified;
  unsigned workers = 1;
};

struct AvalancheTrial {
  int d_original = 0;
  int d_modified = 0;
};

struct AvalancheTable {
  int rounds = 0;
  std::uint64_t samples = 0;
  std::uint64_t wins_original = 0;
  std::uint64_t wins_modified = 0;
  std::uint64_t ties = 0;
  double mean_distance_original = 0;
  double mean_distance_modified = 0;
  double sd_distance_original = 0;  // population (divisor N)
  double sd_distance_modified = 0;

  friend bool operator==(const AvalancheTable&, const AvalancheTable&) = default;
};

// Trial i always draws from derive_stream(seed, i), so the result does not
// depend on cfg.workers.
std::vector<AvalancheTrial> avalanche_trials(const AvalancheConfig& cfg);
AvalancheTable tabulate_avalanche(std::span<const AvalancheTrial> trials, int rounds,
                                  Comparator comparator);
AvalancheTable avalanche_experiment(const AvalancheConfig& cfg);

// ---------------------------------------------------------------------------
// Encryption quality: sum over grey levels of |H(cipher) - H(plain)| / 256.

double encryption_quality(const Histogram& plain, const Histogram& cipher) noexcept;
double encryption_quality(const GrayImage& plain, const GrayImage& cipher);

struct EqRow {
  int rounds = 0;
  double eq = 0;
};

std::vector<EqRow> eq_vs_rounds(const GrayImage& img, const MasterKey& key, Variant variant,
                                std::span<const int> rounds_list);

// ---------------------------------------------------------------------------
// Key sensitivity

enum class DiffMode { Absolute, Xor };

DiffMode parse_diff_mode(std::string_view name);  // "abs" | "xor"

GrayImage difference_image(const GrayImage& a, const GrayImage& b, DiffMode mode = DiffMode::Absolute);

// 100 * (pixels where a != b) / pixel count.
double percent_differing(const GrayImage& a, const GrayImage& b);

struct KeySensitivityReport {
  double percent_differing = 0;
  double wrong_key_decrypt_percent = 0;          // D_k2(E_k1(img)) vs img
  double wrong_key_decrypt_reverse_percent = 0;  // D_k1(E_k2(img)) vs img
  GrayImage cipher_k1;
  GrayImage cipher_k2;
  GrayImage difference_image;
  GrayImage wrong_key_decrypt;
  GrayImage wrong_key_decrypt_reverse;
};

KeySensitivityReport key_sensitivity(const GrayImage& img, const MasterKey& k1, const MasterKey& k2,
                                     Variant variant, int rounds = kMaxRounds,
                                     DiffMode diff = DiffMode::Absolute);

// ---------------------------------------------------------------------------
// Histogram uniformity

struct Uniformity {
  double chi_square = 0;
  double p_value = 0;  // upper tail, 255 degrees of freedom
  double max_bin_percent = 0;
  double min_bin_percent = 0;
};

Uniformity histogram_uniformity(const Histogram& h);

// ---------------------------------------------------------------------------
// Adjacent-pixel correlation

enum class Direction { Horizontal, Vertical };

Direction parse_direction(std::string_view name);
std::string_view to_string(Direction d) noexcept;

struct PixelPair {
  std::uint8_t x = 0;
  std::uint8_t y = 0;
  friend bool operator==(const PixelPair&, const PixelPair&) = default;
};

struct CorrelationSample {
  std::vector<PixelPair> pairs;
};

// n pairs drawn with replacement, uniform over valid first-pixel positions.
CorrelationSample sample_adjacent_pairs(const GrayImage& img, std::size_t n, std::uint64_t seed,
                                        Direction direction = Direction::Horizontal);

// Population moments (divisor N). Throws Error(DegenerateVariance) when either
// coordinate is constant.
double correlation_coefficient(std::span<const double> x, std::span<const double> y);
double correlation_coefficient(const CorrelationSample& s);

}  // namespace castlab
