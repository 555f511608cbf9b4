#include "castlab/report.hpp"

#include <cstdio>

#include "castlab/hex.hpp"

namespace castlab {

using nlohmann::json;

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json to_json(const AvalancheTable& t) {
  return json{
      {"rounds", t.rounds},
      {"samples", t.samples},
      {"wins_original", t.wins_original},
      {"wins_modified", t.wins_modified},
      {"ties", t.ties},
      {"mean_distance_original", t.mean_distance_original},
      {"mean_distance_modified", t.mean_distance_modified},
      {"sd_distance_original", t.sd_distance_original},
      {"sd_distance_modified", t.sd_distance_modified},
  };
}

json to_json(const Uniformity& u) {
  return json{
      {"chi_square", u.chi_square},
      {"p_value", u.p_value},
      {"max_bin_percent", u.max_bin_percent},
      {"min_bin_percent", u.min_bin_percent},
  };
}

json to_json(const KeySensitivityReport& r) {
  return json{
      {"percent_differing", r.percent_differing},
      {"wrong_key_decrypt_percent", r.wrong_key_decrypt_percent},
      {"wrong_key_decrypt_reverse_percent", r.wrong_key_decrypt_reverse_percent},
      {"width", r.cipher_k1.width},
      {"height", r.cipher_k1.height},
  };
}

json to_json(const BenchReport& r) {
  json j{
      {"variant", to_string(r.variant)},
      {"op_kind", to_string(r.op_kind)},
      {"iterations", r.iterations},
      {"total_time_ns", r.total_time_ns},
      {"ns_per_op", r.ns_per_op},
      {"speedup_modified_vs_original", r.speedup_modified_vs_original},
      {"checksum", to_hex(std::span<const std::uint8_t>(
                       Block64::from_u64(r.checksum).to_bytes()))},
  };
  if (r.op_kind == OpKind::BlockEncrypt) j["throughput_mb_s"] = r.throughput_mb_s;
  return j;
}

json avalanche_report(const AvalancheConfig& cfg, std::span<const AvalancheTable> tables) {
  json rows = json::array();
  for (const AvalancheTable& t : tables) rows.push_back(to_json(t));
  json j{
      {"experiment", "avalanche"},
      {"mode", to_string(cfg.mode)},
      {"comparator", to_string(cfg.comparator)},
      {"seed", cfg.seed},
      {"key", cfg.master_key.hex()},
      {"first", to_string(cfg.first)},
      {"second", to_string(cfg.second)},
      {"tables", std::move(rows)},
  };
  if (cfg.fixed_key_bit) j["fixed_key_bit"] = *cfg.fixed_key_bit;
  return j;
}

std::string avalanche_csv(std::span<const AvalancheTable> tables) {
  std::string out =
      "rounds,samples,wins_original,wins_modified,ties,mean_distance_original,"
      "mean_distance_modified,sd_distance_original,sd_distance_modified\n";
  for (const AvalancheTable& t : tables) {
    out += std::to_string(t.rounds) + ',' + std::to_string(t.samples) + ',' +
           std::to_string(t.wins_original) + ',' + std::to_string(t.wins_modified) + ',' +
           std::to_string(t.ties) + ',' + format_fixed(t.mean_distance_original) + ',' +
           format_fixed(t.mean_distance_modified) + ',' + format_fixed(t.sd_distance_original) +
           ',' + format_fixed(t.sd_distance_modified) + '\n';
  }
  return out;
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "level,count,percent\n";
  for (int level = 0; level < kGreyLevels; ++level) {
    const double pct = h.total ? 100.0 * static_cast<double>(h.bins[level]) / static_cast<double>(h.total) : 0.0;
    out += std::to_string(level) + ',' + std::to_string(h.bins[level]) + ',' + format_fixed(pct) + '\n';
  }
  return out;
}

}  // namespace castlab
