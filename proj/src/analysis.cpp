#include "castlab/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

#include "castlab/ecb.hpp"
#include "castlab/error.hpp"
#include "castlab/rng.hpp"
#include "castlab/stats.hpp"
#include "parallel.hpp"

namespace castlab {

int hamming64(Block64 a, Block64 b) noexcept { return std::popcount(a.to_u64() ^ b.to_u64()); }

Comparator parse_comparator(std::string_view name) {
  if (name == "closer32") return Comparator::CloserTo32;
  if (name == "greater") return Comparator::Greater;
  throw Error(ErrorKind::InvalidArgument, "unknown comparator '" + std::string(name) + "'");
}

std::string_view to_string(Comparator c) noexcept {
  return c == Comparator::CloserTo32 ? "closer32" : "greater";
}

Outcome avalanche_compare(int d1, int d2, Comparator mode) noexcept {
  int score1 = d1;
  int score2 = d2;
  if (mode == Comparator::CloserTo32) {
    // Smaller deviation wins; negate so "larger score wins" holds for both modes.
    score1 = -std::abs(d1 - 32);
    score2 = -std::abs(d2 - 32);
  }
  if (score1 > score2) return Outcome::FirstBetter;
  if (score2 > score1) return Outcome::SecondBetter;
  return Outcome::Tie;
}

AvalancheMode parse_avalanche_mode(std::string_view name) {
  if (name == "plaintext") return AvalancheMode::PlaintextFlip;
  if (name == "key") return AvalancheMode::KeyFlip;
  throw Error(ErrorKind::InvalidArgument, "unknown avalanche mode '" + std::string(name) + "'");
}

std::string_view to_string(AvalancheMode m) noexcept {
  return m == AvalancheMode::PlaintextFlip ? "plaintext" : "key";
}

std::vector<AvalancheTrial> avalanche_trials(const AvalancheConfig& cfg) {
  check_rounds(cfg.rounds);
  if (cfg.samples == 0) throw Error(ErrorKind::InvalidArgument, "avalanche needs samples >= 1");
  const std::size_t key_bits = cfg.master_key.bit_length();
  if (cfg.fixed_key_bit && *cfg.fixed_key_bit >= key_bits) {
    throw Error(ErrorKind::InvalidBitIndex, "fixed key bit " + std::to_string(*cfg.fixed_key_bit) +
                                                " is outside a " + std::to_string(key_bits) +
                                                "-bit key");
  }

  const RoundKeys base = key_schedule(cfg.master_key);
  const Cast128 first(base, cfg.first, cfg.rounds);
  const Cast128 second(base, cfg.second, cfg.rounds);
  // A fixed key bit means a single flipped key for the whole run.
  std::optional<RoundKeys> fixed_flipped;
  if (cfg.mode == AvalancheMode::KeyFlip && cfg.fixed_key_bit) {
    fixed_flipped = key_schedule(cfg.master_key.with_bit_flipped(*cfg.fixed_key_bit));
  }

  std::vector<AvalancheTrial> trials(cfg.samples);
  detail::parallel_for(cfg.samples, cfg.workers, [&](std::size_t i) {
    SplitMix64 rng = derive_stream(cfg.seed, i);
    const Block64 plain = Block64::from_u64(rng.next_u64());
    AvalancheTrial& t = trials[i];
    if (cfg.mode == AvalancheMode::PlaintextFlip) {
      const Block64 flipped = Block64::from_u64(plain.to_u64() ^ (1ull << rng.below(64)));
      t.d_original = hamming64(first.encrypt(plain), first.encrypt(flipped));
      t.d_modified = hamming64(second.encrypt(plain), second.encrypt(flipped));
    } else {
      const RoundKeys other =
          fixed_flipped ? *fixed_flipped
                        : key_schedule(cfg.master_key.with_bit_flipped(rng.below(key_bits)));
      const Cast128 first_other(other, cfg.first, cfg.rounds);
      const Cast128 second_other(other, cfg.second, cfg.rounds);
      t.d_original = hamming64(first.encrypt(plain), first_other.encrypt(plain));
      t.d_modified = hamming64(second.encrypt(plain), second_other.encrypt(plain));
    }
  });
  return trials;
}

AvalancheTable tabulate_avalanche(std::span<const AvalancheTrial> trials, int rounds,
                                  Comparator comparator) {
  AvalancheTable table;
  table.rounds = rounds;
  table.samples = trials.size();
  if (trials.empty()) return table;

  // Integer moments keep the summary exact and order independent.
  std::uint64_t sum1 = 0, sum2 = 0, sq1 = 0, sq2 = 0;
  for (const AvalancheTrial& t : trials) {
    switch (avalanche_compare(t.d_original, t.d_modified, comparator)) {
      case Outcome::FirstBetter: ++table.wins_original; break;
      case Outcome::SecondBetter: ++table.wins_modified; break;
      case Outcome::Tie: ++table.ties; break;
    }
    sum1 += static_cast<std::uint64_t>(t.d_original);
    sum2 += static_cast<std::uint64_t>(t.d_modified);
    sq1 += static_cast<std::uint64_t>(t.d_original * t.d_original);
    sq2 += static_cast<std::uint64_t>(t.d_modified * t.d_modified);
  }
  const auto n = static_cast<double>(trials.size());
  auto sd = [n](std::uint64_t sum, std::uint64_t sq) {
    const double var = (n * static_cast<double>(sq) - static_cast<double>(sum) * static_cast<double>(sum)) / (n * n);
    return std::sqrt(std::max(var, 0.0));
  };
  table.mean_distance_original = static_cast<double>(sum1) / n;
  table.mean_distance_modified = static_cast<double>(sum2) / n;
  table.sd_distance_original = sd(sum1, sq1);
  table.sd_distance_modified = sd(sum2, sq2);
  return table;
}

AvalancheTable avalanche_experiment(const AvalancheConfig& cfg) {
  const auto trials = avalanche_trials(cfg);
  return tabulate_avalanche(trials, cfg.rounds, cfg.comparator);
}

double encryption_quality(const Histogram& plain, const Histogram& cipher) noexcept {
  std::uint64_t total = 0;
  for (int level = 0; level < kGreyLevels; ++level) {
    const std::uint64_t a = plain.bins[level];
    const std::uint64_t b = cipher.bins[level];
    total += a > b ? a - b : b - a;
  }
  return static_cast<double>(total) / kGreyLevels;
}

namespace {

void require_same_size(const GrayImage& a, const GrayImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorKind::SizeMismatch,
                std::to_string(a.width) + "x" + std::to_string(a.height) + " vs " +
                    std::to_string(b.width) + "x" + std::to_string(b.height));
  }
}

}  // namespace

double encryption_quality(const GrayImage& plain, const GrayImage& cipher) {
  require_same_size(plain, cipher);
  return encryption_quality(histogram(plain), histogram(cipher));
}

std::vector<EqRow> eq_vs_rounds(const GrayImage& img, const MasterKey& key, Variant variant,
                                std::span<const int> rounds_list) {
  for (int r : rounds_list) check_rounds(r);
  const Histogram plain = histogram(img);
  std::vector<EqRow> rows;
  rows.reserve(rounds_list.size());
  for (int r : rounds_list) {
    const GrayImage cipher = encrypt_image_ecb(img, EcbConfig{key, variant, r});
    rows.push_back({r, encryption_quality(plain, histogram(cipher))});
  }
  return rows;
}

DiffMode parse_diff_mode(std::string_view name) {
  if (name == "abs") return DiffMode::Absolute;
  if (name == "xor") return DiffMode::Xor;
  throw Error(ErrorKind::InvalidArgument, "unknown difference mode '" + std::string(name) + "'");
}

GrayImage difference_image(const GrayImage& a, const GrayImage& b, DiffMode mode) {
  require_same_size(a, b);
  GrayImage out(a.width, a.height);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int p = a.pixels[i];
    const int q = b.pixels[i];
    out.pixels[i] = static_cast<std::uint8_t>(mode == DiffMode::Absolute ? std::abs(p - q) : (p ^ q));
  }
  return out;
}

double percent_differing(const GrayImage& a, const GrayImage& b) {
  require_same_size(a, b);
  if (a.size() == 0) return 0.0;
  std::size_t differ = 0;
  for (std::size_t i = 0; i < a.size(); ++i) differ += a.pixels[i] != b.pixels[i];
  return 100.0 * static_cast<double>(differ) / static_cast<double>(a.size());
}

KeySensitivityReport key_sensitivity(const GrayImage& img, const MasterKey& k1, const MasterKey& k2,
                                     Variant variant, int rounds, DiffMode diff) {
  const EcbConfig c1{k1, variant, rounds};
  const EcbConfig c2{k2, variant, rounds};
  KeySensitivityReport r;
  r.cipher_k1 = encrypt_image_ecb(img, c1);
  r.cipher_k2 = encrypt_image_ecb(img, c2);
  r.percent_differing = percent_differing(r.cipher_k1, r.cipher_k2);
  r.difference_image = difference_image(r.cipher_k1, r.cipher_k2, diff);
  r.wrong_key_decrypt = decrypt_image_ecb(r.cipher_k1, c2);
  r.wrong_key_decrypt_reverse = decrypt_image_ecb(r.cipher_k2, c1);
  r.wrong_key_decrypt_percent = percent_differing(r.wrong_key_decrypt, img);
  r.wrong_key_decrypt_reverse_percent = percent_differing(r.wrong_key_decrypt_reverse, img);
  return r;
}

Uniformity histogram_uniformity(const Histogram& h) {
  if (h.total == 0) throw Error(ErrorKind::EmptyHistogram, "histogram has no samples");
  const double total = static_cast<double>(h.total);
  const double expected = total / kGreyLevels;
  Uniformity u;
  for (std::uint64_t bin : h.bins) {
    const double d = static_cast<double>(bin) - expected;
    u.chi_square += d * d / expected;
  }
  u.p_value = stats::chi_square_sf(u.chi_square, kGreyLevels - 1);
  const auto [lo, hi] = std::minmax_element(h.bins.begin(), h.bins.end());
  u.max_bin_percent = 100.0 * static_cast<double>(*hi) / total;
  u.min_bin_percent = 100.0 * static_cast<double>(*lo) / total;
  return u;
}

Direction parse_direction(std::string_view name) {
  if (name == "horizontal") return Direction::Horizontal;
  if (name == "vertical") return Direction::Vertical;
  throw Error(ErrorKind::InvalidArgument, "unknown direction '" + std::string(name) + "'");
}

std::string_view to_string(Direction d) noexcept {
  return d == Direction::Horizontal ? "horizontal" : "vertical";
}

CorrelationSample sample_adjacent_pairs(const GrayImage& img, std::size_t n, std::uint64_t seed,
                                        Direction direction) {
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 pixel pairs");
  const bool horizontal = direction == Direction::Horizontal;
  if ((horizontal ? img.width : img.height) < 2 || img.size() == 0) {
    throw Error(ErrorKind::InvalidArgument, "image too small for adjacent pairs");
  }
  // Valid positions of the first pixel of a pair.
  const std::size_t cols = horizontal ? img.width - 1 : img.width;
  const std::size_t rows = horizontal ? img.height : img.height - 1;
  SplitMix64 rng = derive_stream(seed, 0);
  CorrelationSample s;
  s.pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pos = rng.below(cols * rows);
    const std::size_t x = pos % cols;
    const std::size_t y = pos / cols;
    s.pairs.push_back({img.at(x, y), horizontal ? img.at(x + 1, y) : img.at(x, y + 1)});
  }
  return s;
}

double correlation_coefficient(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::SizeMismatch, "x and y lengths differ");
  if (x.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 pairs");
  const double n = static_cast<double>(x.size());
  double ex = 0, ey = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ex += x[i];
    ey += y[i];
  }
  ex /= n;
  ey /= n;
  double dx = 0, dy = 0, cov = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dx += (x[i] - ex) * (x[i] - ex);
    dy += (y[i] - ey) * (y[i] - ey);
    cov += (x[i] - ex) * (y[i] - ey);
  }
  dx /= n;
  dy /= n;
  cov /= n;
  if (dx == 0.0 || dy == 0.0) {
    throw Error(ErrorKind::DegenerateVariance, "a coordinate has zero variance");
  }
  return std::clamp(cov / (std::sqrt(dx) * std::sqrt(dy)), -1.0, 1.0);
}

double correlation_coefficient(const CorrelationSample& s) {
  std::vector<double> x, y;
  x.reserve(s.pairs.size());
  y.reserve(s.pairs.size());
  for (const PixelPair& p : s.pairs) {
    x.push_back(p.x);
    y.push_back(p.y);
  }
  return correlation_coefficient(x, y);
}

}  // namespace castlab
