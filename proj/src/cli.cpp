#include "castlab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "castlab/analysis.hpp"
#include "castlab/bench.hpp"
#include "castlab/ecb.hpp"
#include "castlab/error.hpp"
#include "castlab/image.hpp"
#include "castlab/report.hpp"
#include "castlab/selftest.hpp"
#include "castlab/svg.hpp"

namespace castlab::cli {

namespace {

using nlohmann::json;

// Bad input from the command line rather than a runtime failure.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kVariantNames{"original", "modified"};
constexpr std::string_view kDefaultRoundsList = "2,4,6,8,10,12,14,16";

// "2,4,6", "2..16" or "2..16:2", and mixtures separated by commas.
std::vector<int> parse_rounds_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  auto to_int = [&](const std::string& s) {
    if (s.empty() || s.size() > 3 || !std::all_of(s.begin(), s.end(), ::isdigit)) {
      throw UsageError("bad rounds list '" + text + "'");
    }
    return std::stoi(s);
  };
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
    } else {
      const std::size_t colon = item.find(':', dots);
      const int lo = to_int(item.substr(0, dots));
      const int hi = to_int(item.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
      const int step = colon == std::string::npos ? 1 : to_int(item.substr(colon + 1));
      if (step < 1 || hi < lo) throw UsageError("bad rounds range '" + item + "'");
      for (int r = lo; r <= hi; r += step) out.push_back(r);
    }
    pos = comma + 1;
  }
  for (int r : out) {
    if (r < 1 || r > kMaxRounds) throw UsageError("rounds must lie in 1..16: '" + text + "'");
  }
  return out;
}

MasterKey parse_key(const std::string& hex) {
  try {
    return MasterKey::from_hex(hex);
  } catch (const Error& e) {
    throw UsageError(std::string(e.what()));
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::IoError, "cannot create " + path);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct ImageSource {
  std::string in;
  std::string synth;
  std::size_t width = 512;
  std::size_t height = 512;
  std::uint64_t image_seed = 1;

  void add_to(CLI::App* app) {
    auto* in_opt = app->add_option("--in", in, "Input image (PGM P5 or 8-bit BMP)")
                       ->check(CLI::ExistingFile);
    auto* synth_opt = app->add_option("--synth", synth, "Synthetic input instead of --in")
                          ->check(CLI::IsMember({"gradient", "smooth_noise", "constant"}));
    in_opt->excludes(synth_opt);
    app->add_option("--width", width, "Synthetic image width")->check(CLI::PositiveNumber);
    app->add_option("--height", height, "Synthetic image height")->check(CLI::PositiveNumber);
    app->add_option("--image-seed", image_seed, "Synthetic image seed");
  }

  GrayImage load() const {
    if (!in.empty()) return load_image(in);
    if (!synth.empty()) return synth_image(parse_synth_kind(synth), width, height, image_seed);
    throw UsageError("one of --in or --synth is required");
  }
};

struct CipherOptions {
  std::string key{kDefaultKey1Hex};
  std::string variant = "original";
  int rounds = kMaxRounds;

  void add_to(CLI::App* app, bool key_required = false) {
    auto* k = app->add_option("--key", key, "Key as 10..32 hex digits");
    if (key_required) k->required();
    app->add_option("--variant", variant, "original | modified")->check(CLI::IsMember(kVariantNames));
    app->add_option("--rounds", rounds, "Rounds 1..16")->check(CLI::Range(1, kMaxRounds));
  }

  EcbConfig config() const { return {parse_key(key), parse_variant(variant), rounds}; }
};

void add_seed(CLI::App* app, std::uint64_t& seed) {
  app->add_option("--seed", seed, "Master seed (env CASTLAB_SEED)")->envname("CASTLAB_SEED");
}

void add_format(CLI::App* app, std::string& format) {
  app->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

// ---------------------------------------------------------------------------

struct CryptOptions {
  CipherOptions cipher;
  std::string in;
  std::string out;
  std::string mode = "auto";
};

int do_crypt(const CryptOptions& o, bool encrypt, std::ostream& out) {
  const EcbConfig cfg = o.cipher.config();
  std::string mode = o.mode;
  if (mode == "auto") {
    std::string ext = std::filesystem::path(o.in).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    mode = (ext == ".pgm" || ext == ".bmp") ? "image" : "bytes";
  }
  if (mode == "image") {
    const GrayImage img = load_image(o.in);
    save_image(encrypt ? encrypt_image_ecb(img, cfg) : decrypt_image_ecb(img, cfg), o.out);
  } else {
    const auto data = read_file(o.in);
    write_file(o.out, encrypt ? encrypt_bytes_ecb(data, cfg) : decrypt_bytes_ecb(data, cfg));
  }
  out << (encrypt ? "encrypted " : "decrypted ") << o.in << " -> " << o.out << "\n";
  return kExitOk;
}

struct AvalancheOptions {
  std::string mode = "plaintext";
  std::uint64_t samples = kDefaultAvalancheSamples;
  std::string rounds{kDefaultRoundsList};
  std::uint64_t seed = 0;
  std::string comparator = "closer32";
  std::string key{kDefaultKey1Hex};
  std::optional<std::size_t> fixed_key_bit;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "json";
  std::string out;
};

int do_avalanche(const AvalancheOptions& o, std::ostream& out) {
  AvalancheConfig cfg;
  cfg.mode = parse_avalanche_mode(o.mode);
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.comparator = parse_comparator(o.comparator);
  cfg.master_key = parse_key(o.key);
  cfg.fixed_key_bit = o.fixed_key_bit;
  cfg.workers = o.workers;
  if (cfg.fixed_key_bit && cfg.mode != AvalancheMode::KeyFlip) {
    throw UsageError("--fixed-key-bit applies only to --mode key");
  }
  if (cfg.fixed_key_bit && *cfg.fixed_key_bit >= cfg.master_key.bit_length()) {
    throw UsageError("--fixed-key-bit is outside the key");
  }
  std::vector<AvalancheTable> tables;
  for (int r : parse_rounds_list(o.rounds)) {
    cfg.rounds = r;
    tables.push_back(avalanche_experiment(cfg));
  }
  emit(o.format == "csv" ? avalanche_csv(tables) : dump(avalanche_report(cfg, tables)), o.out, out);
  return kExitOk;
}

struct QualityOptions {
  std::string plain;
  std::string cipher;
  bool sweep = false;
  ImageSource source;
  std::string key{kDefaultKey1Hex};
  std::string variant = "both";
  std::string rounds{kDefaultRoundsList};
  std::string format = "json";
  std::string out;
};

int do_quality(const QualityOptions& o, std::ostream& out) {
  if (!o.sweep) {
    if (o.plain.empty() || o.cipher.empty()) {
      throw UsageError("quality needs --plain and --cipher, or --sweep");
    }
    const double eq = encryption_quality(load_image(o.plain), load_image(o.cipher));
    if (o.format == "csv") {
      emit("eq\n" + format_fixed(eq) + "\n", o.out, out);
    } else {
      emit(dump(json{{"experiment", "encryption_quality"}, {"eq", eq}}), o.out, out);
    }
    return kExitOk;
  }

  const GrayImage img = o.source.load();
  const MasterKey key = parse_key(o.key);
  const std::vector<int> rounds = parse_rounds_list(o.rounds);
  std::vector<Variant> variants;
  if (o.variant == "both") {
    variants.assign(kVariants.begin(), kVariants.end());
  } else {
    variants.push_back(parse_variant(o.variant));
  }
  std::vector<std::vector<EqRow>> results;
  for (Variant v : variants) results.push_back(eq_vs_rounds(img, key, v, rounds));

  if (o.format == "csv") {
    std::string text = "rounds";
    for (Variant v : variants) text += ",eq_" + std::string(to_string(v));
    text += "\n";
    for (std::size_t i = 0; i < rounds.size(); ++i) {
      text += std::to_string(rounds[i]);
      for (const auto& col : results) text += "," + format_fixed(col[i].eq);
      text += "\n";
    }
    emit(text, o.out, out);
    return kExitOk;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < rounds.size(); ++i) {
    for (std::size_t v = 0; v < variants.size(); ++v) {
      rows.push_back({{"rounds", rounds[i]}, {"variant", to_string(variants[v])}, {"eq", results[v][i].eq}});
    }
  }
  emit(dump(json{{"experiment", "encryption_quality_sweep"},
                 {"width", img.width},
                 {"height", img.height},
                 {"key", key.hex()},
                 {"rows", std::move(rows)}}),
       o.out, out);
  return kExitOk;
}

struct KeySensOptions {
  ImageSource source;
  std::string key1{kDefaultKey1Hex};
  std::string key2{kDefaultKey2Hex};
  std::string variant = "original";
  int rounds = kMaxRounds;
  std::string diff = "abs";
  std::string out_dir;
  std::string image_format = "pgm";
  std::string out;
};

int do_keysens(const KeySensOptions& o, std::ostream& out) {
  const GrayImage img = o.source.load();
  const MasterKey k1 = parse_key(o.key1);
  const MasterKey k2 = parse_key(o.key2);
  const Variant variant = parse_variant(o.variant);
  const KeySensitivityReport r = key_sensitivity(img, k1, k2, variant, o.rounds, parse_diff_mode(o.diff));

  json j = to_json(r);
  j["experiment"] = "key_sensitivity";
  j["variant"] = to_string(variant);
  j["rounds"] = o.rounds;
  j["key1"] = k1.hex();
  j["key2"] = k2.hex();
  j["difference"] = o.diff;
  if (!o.out_dir.empty()) {
    const std::filesystem::path dir(o.out_dir);
    std::filesystem::create_directories(dir);
    const std::string ext = "." + o.image_format;
    const ImageFormat fmt = o.image_format == "bmp" ? ImageFormat::Bmp : ImageFormat::Pgm;
    save_image(img, dir / ("plain" + ext), fmt);
    save_image(r.cipher_k1, dir / ("cipher_k1" + ext), fmt);
    save_image(r.cipher_k2, dir / ("cipher_k2" + ext), fmt);
    save_image(r.difference_image, dir / ("difference" + ext), fmt);
    save_image(r.wrong_key_decrypt, dir / ("k1_cipher_decrypted_with_k2" + ext), fmt);
    save_image(r.wrong_key_decrypt_reverse, dir / ("k2_cipher_decrypted_with_k1" + ext), fmt);
  }
  emit(dump(j), o.out, out);
  return kExitOk;
}

// Optionally encrypt the loaded image before measuring it.
struct PreEncrypt {
  bool enabled = false;
  CipherOptions cipher;

  void add_to(CLI::App* app) {
    app->add_flag("--encrypt", enabled, "Measure the ECB cipherimage of the input");
    cipher.add_to(app);
  }

  GrayImage apply(GrayImage img) const {
    return enabled ? encrypt_image_ecb(img, cipher.config()) : img;
  }
};

struct HistogramOptions {
  ImageSource source;
  PreEncrypt pre;
  std::string svg;
  std::string format = "json";
  std::string out;
};

int do_histogram(const HistogramOptions& o, std::ostream& out) {
  const GrayImage img = o.pre.apply(o.source.load());
  const Histogram h = histogram(img);
  if (!o.svg.empty()) {
    plot_histogram_svg(h, o.svg, o.pre.enabled ? "Histogram of encrypted image" : "Histogram");
  }
  if (o.format == "csv") {
    emit(histogram_csv(h), o.out, out);
    return kExitOk;
  }
  json j = to_json(histogram_uniformity(h));
  j["experiment"] = "histogram";
  j["total"] = h.total;
  j["bins"] = h.bins;
  emit(dump(j), o.out, out);
  return kExitOk;
}

struct CorrelateOptions {
  ImageSource source;
  PreEncrypt pre;
  std::size_t pairs = kDefaultCorrelationPairs;
  std::string direction = "horizontal";
  std::uint64_t seed = 0;
  std::string svg;
  std::string out;
};

int do_correlate(const CorrelateOptions& o, std::ostream& out) {
  const GrayImage img = o.pre.apply(o.source.load());
  const Direction dir = parse_direction(o.direction);
  const CorrelationSample s = sample_adjacent_pairs(img, o.pairs, o.seed, dir);
  const double r = correlation_coefficient(s);
  if (!o.svg.empty()) {
    plot_scatter_svg(s, o.svg, "Correlation of " + std::string(to_string(dir)) + "ly adjacent pixels");
  }
  emit(dump(json{{"experiment", "correlation"},
                 {"correlation", r},
                 {"pairs", o.pairs},
                 {"direction", to_string(dir)},
                 {"seed", o.seed}}),
       o.out, out);
  return kExitOk;
}

struct BenchOptions {
  std::uint64_t iters = 2'000'000;
  std::size_t mb = 4;
  int rounds = kMaxRounds;
  std::uint64_t seed = 0;
  int repeats = 5;
  std::string out;
};

int do_bench(const BenchOptions& o, std::ostream& out) {
  const BenchComparison f = compare_round_function(o.iters, o.seed, o.repeats);
  const BenchComparison b = compare_block_encrypt(o.mb, o.rounds, o.seed, std::max(1, o.repeats / 2));
  auto section = [](const BenchComparison& c) {
    return json{{"original", to_json(c.original)},
                {"modified", to_json(c.modified)},
                {"speedup_modified_vs_original", c.speedup}};
  };
  emit(dump(json{{"experiment", "bench"},
                 {"reference_improvement_percent", kReferenceImprovementPercent},
                 {"measured_improvement_percent", 100.0 * (1.0 - 1.0 / f.speedup)},
                 {"round_function", section(f)},
                 {"block_encrypt", section(b)}}),
       o.out, out);
  return kExitOk;
}

struct PlotOptions {
  std::string kind = "histogram";
  ImageSource source;
  PreEncrypt pre;
  std::size_t pairs = kDefaultCorrelationPairs;
  std::string direction = "horizontal";
  std::uint64_t seed = 0;
  std::string out;
};

int do_plot(const PlotOptions& o, std::ostream& out) {
  const GrayImage img = o.pre.apply(o.source.load());
  if (o.kind == "histogram") {
    plot_histogram_svg(histogram(img), o.out);
  } else {
    plot_scatter_svg(sample_adjacent_pairs(img, o.pairs, o.seed, parse_direction(o.direction)), o.out);
  }
  out << "wrote " << o.out << "\n";
  return kExitOk;
}

int do_selftest(bool quick, std::ostream& out) {
  bool all = true;
  for (const CheckResult& c : run_selftest(!quick)) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name;
    if (!c.passed && !c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
    all = all && c.passed;
  }
  out << (all ? "selftest: all checks passed\n" : "selftest: FAILED\n");
  return all ? kExitOk : kExitFailure;
}

bool is_usage_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidHex:
    case ErrorKind::InvalidKeyLength:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidRounds:
    case ErrorKind::InvalidBitIndex:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"CAST-128 and modified-F analysis toolkit", "castlab"};
  app.require_subcommand(1, 1);

  CryptOptions enc_o, dec_o;
  auto setup_crypt = [&](const char* name, const char* help, CryptOptions& o) {
    auto* sub = app.add_subcommand(name, help);
    o.cipher.add_to(sub, true);
    sub->add_option("--in", o.in, "Input file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output file")->required();
    sub->add_option("--mode", o.mode, "auto | image | bytes")->check(CLI::IsMember({"auto", "image", "bytes"}));
    return sub;
  };
  auto* enc = setup_crypt("encrypt", "ECB-encrypt an image or a file", enc_o);
  auto* dec = setup_crypt("decrypt", "ECB-decrypt an image or a file", dec_o);

  AvalancheOptions av_o;
  auto* av = app.add_subcommand("avalanche", "Original vs modified avalanche comparison");
  av->add_option("--mode", av_o.mode, "plaintext | key")->check(CLI::IsMember({"plaintext", "key"}));
  av->add_option("--samples", av_o.samples, "Trials per round count")->check(CLI::PositiveNumber);
  av->add_option("--rounds", av_o.rounds, "Round counts, e.g. 2,4,8 or 2..16:2");
  add_seed(av, av_o.seed);
  av->add_option("--comparator", av_o.comparator, "closer32 | greater")
      ->check(CLI::IsMember({"closer32", "greater"}));
  av->add_option("--key", av_o.key, "Master key (hex)");
  av->add_option("--fixed-key-bit", av_o.fixed_key_bit, "Key mode: always flip this bit");
  av->add_option("--workers", av_o.workers, "Worker threads")->check(CLI::PositiveNumber);
  add_format(av, av_o.format);
  av->add_option("--out", av_o.out, "Output path (default stdout)");

  QualityOptions q_o;
  auto* q = app.add_subcommand("quality", "Encryption quality, single pair or rounds sweep");
  q->add_option("--plain", q_o.plain, "Plain image")->check(CLI::ExistingFile);
  q->add_option("--cipher", q_o.cipher, "Cipher image")->check(CLI::ExistingFile);
  q->add_flag("--sweep", q_o.sweep, "Encrypt the input at each round count and tabulate");
  q_o.source.add_to(q);
  q->add_option("--key", q_o.key, "Master key (hex)");
  q->add_option("--variant", q_o.variant, "original | modified | both")
      ->check(CLI::IsMember({"original", "modified", "both"}));
  q->add_option("--rounds", q_o.rounds, "Round counts for --sweep");
  add_format(q, q_o.format);
  q->add_option("--out", q_o.out, "Output path (default stdout)");

  KeySensOptions ks_o;
  auto* ks = app.add_subcommand("keysens", "Key sensitivity with one-bit-different keys");
  ks_o.source.add_to(ks);
  ks->add_option("--key1", ks_o.key1, "First key (hex)");
  ks->add_option("--key2", ks_o.key2, "Second key (hex)");
  ks->add_option("--variant", ks_o.variant, "original | modified")->check(CLI::IsMember(kVariantNames));
  ks->add_option("--rounds", ks_o.rounds, "Rounds 1..16")->check(CLI::Range(1, kMaxRounds));
  ks->add_option("--diff", ks_o.diff, "abs | xor")->check(CLI::IsMember({"abs", "xor"}));
  ks->add_option("--out-dir", ks_o.out_dir, "Write cipher, difference and wrong-key images here");
  ks->add_option("--image-format", ks_o.image_format, "pgm | bmp")->check(CLI::IsMember({"pgm", "bmp"}));
  ks->add_option("--out", ks_o.out, "Report path (default stdout)");

  HistogramOptions h_o;
  auto* hs = app.add_subcommand("histogram", "Grey-level histogram and uniformity test");
  h_o.source.add_to(hs);
  h_o.pre.add_to(hs);
  hs->add_option("--svg", h_o.svg, "Write a bar chart");
  add_format(hs, h_o.format);
  hs->add_option("--out", h_o.out, "Output path (default stdout)");

  CorrelateOptions c_o;
  auto* cr = app.add_subcommand("correlate", "Adjacent-pixel correlation coefficient");
  c_o.source.add_to(cr);
  c_o.pre.add_to(cr);
  cr->add_option("--pairs", c_o.pairs, "Number of pixel pairs")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  cr->add_option("--direction", c_o.direction, "horizontal | vertical")
      ->check(CLI::IsMember({"horizontal", "vertical"}));
  add_seed(cr, c_o.seed);
  cr->add_option("--svg", c_o.svg, "Write a scatter plot");
  cr->add_option("--out", c_o.out, "Output path (default stdout)");

  BenchOptions b_o;
  auto* bn = app.add_subcommand("bench", "Time original vs modified F and block encryption");
  bn->add_option("--iters", b_o.iters, "F evaluations per run")->check(CLI::PositiveNumber);
  bn->add_option("--mb", b_o.mb, "MiB encrypted per block run")->check(CLI::PositiveNumber);
  bn->add_option("--rounds", b_o.rounds, "Rounds for block encryption")->check(CLI::Range(1, kMaxRounds));
  add_seed(bn, b_o.seed);
  bn->add_option("--repeats", b_o.repeats, "Runs per variant; fastest kept")->check(CLI::PositiveNumber);
  bn->add_option("--out", b_o.out, "Output path (default stdout)");

  PlotOptions p_o;
  auto* pl = app.add_subcommand("plot", "SVG histogram or adjacent-pixel scatter plot");
  pl->add_option("--kind", p_o.kind, "histogram | scatter")->check(CLI::IsMember({"histogram", "scatter"}));
  p_o.source.add_to(pl);
  p_o.pre.add_to(pl);
  pl->add_option("--pairs", p_o.pairs, "Scatter: number of pairs")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  pl->add_option("--direction", p_o.direction, "horizontal | vertical")
      ->check(CLI::IsMember({"horizontal", "vertical"}));
  add_seed(pl, p_o.seed);
  pl->add_option("--out", p_o.out, "SVG path")->required();

  bool quick = false;
  auto* st = app.add_subcommand("selftest", "Known-answer vectors and invariant checks");
  st->add_flag("--quick", quick, "Skip the million-iteration maintenance test");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*enc) return do_crypt(enc_o, true, out);
    if (*dec) return do_crypt(dec_o, false, out);
    if (*av) return do_avalanche(av_o, out);
    if (*q) return do_quality(q_o, out);
    if (*ks) return do_keysens(ks_o, out);
    if (*hs) return do_histogram(h_o, out);
    if (*cr) return do_correlate(c_o, out);
    if (*bn) return do_bench(b_o, out);
    if (*pl) return do_plot(p_o, out);
    if (*st) return do_selftest(quick, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_usage_kind(e.kind()) ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace castlab::cli
