#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "castlab/analysis.hpp"
#include "castlab/bench.hpp"
#include "castlab/cast128.hpp"
#include "castlab/ecb.hpp"
#include "castlab/error.hpp"
#include "castlab/image.hpp"
#include "castlab/rng.hpp"
#include "castlab/selftest.hpp"
#include "castlab/stats.hpp"

namespace py = pybind11;
using namespace castlab;

namespace {

using ImageArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

GrayImage to_image(const ImageArray& a) {
  if (a.ndim() != 2) throw py::value_error("image must be a 2-D uint8 array");
  const auto h = static_cast<std::size_t>(a.shape(0));
  const auto w = static_cast<std::size_t>(a.shape(1));
  std::vector<std::uint8_t> px(a.data(), a.data() + w * h);
  return GrayImage(w, h, std::move(px));
}

py::array_t<std::uint8_t> to_array(const GrayImage& img) {
  py::array_t<std::uint8_t> out({img.height, img.width});
  std::memcpy(out.mutable_data(), img.pixels.data(), img.pixels.size());
  return out;
}

py::bytes to_bytes(const std::vector<std::uint8_t>& v) {
  return {reinterpret_cast<const char*>(v.data()), v.size()};
}

std::vector<std::uint8_t> from_bytes(const py::bytes& b) {
  const std::string s = b;
  return {s.begin(), s.end()};
}

EcbConfig ecb_config(const std::string& key, const std::string& variant, int rounds) {
  return {MasterKey::from_hex(key), parse_variant(variant), rounds};
}

py::dict table_dict(const AvalancheTable& t) {
  py::dict d;
  d["rounds"] = t.rounds;
  d["samples"] = t.samples;
  d["wins_original"] = t.wins_original;
  d["wins_modified"] = t.wins_modified;
  d["ties"] = t.ties;
  d["mean_distance_original"] = t.mean_distance_original;
  d["mean_distance_modified"] = t.mean_distance_modified;
  d["sd_distance_original"] = t.sd_distance_original;
  d["sd_distance_modified"] = t.sd_distance_modified;
  return d;
}

py::dict uniformity_dict(const Uniformity& u) {
  py::dict d;
  d["chi_square"] = u.chi_square;
  d["p_value"] = u.p_value;
  d["max_bin_percent"] = u.max_bin_percent;
  d["min_bin_percent"] = u.min_bin_percent;
  return d;
}

py::dict bench_dict(const BenchReport& r) {
  py::dict d;
  d["variant"] = std::string(to_string(r.variant));
  d["op_kind"] = std::string(to_string(r.op_kind));
  d["iterations"] = r.iterations;
  d["total_time_ns"] = r.total_time_ns;
  d["ns_per_op"] = r.ns_per_op;
  d["throughput_mb_s"] = r.throughput_mb_s;
  d["speedup_modified_vs_original"] = r.speedup_modified_vs_original;
  d["checksum"] = r.checksum;
  return d;
}

Histogram histogram_from(const py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1 || a.shape(0) != kGreyLevels) throw py::value_error("histogram must have 256 bins");
  Histogram h;
  for (int i = 0; i < kGreyLevels; ++i) {
    h.bins[i] = a.at(i);
    h.total += h.bins[i];
  }
  return h;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "CAST-128 with the original and regrouped round function, plus image-cipher analysis";

  py::register_exception<Error>(m, "CastlabError", PyExc_ValueError);

  m.def(
      "encrypt_block",
      [](const std::string& key, std::uint64_t block, const std::string& variant, int rounds) {
        return Cast128(MasterKey::from_hex(key), parse_variant(variant), rounds).encrypt(Block64::from_u64(block)).to_u64();
      },
      py::arg("key"), py::arg("block"), py::arg("variant") = "original", py::arg("rounds") = kMaxRounds);
  m.def(
      "decrypt_block",
      [](const std::string& key, std::uint64_t block, const std::string& variant, int rounds) {
        return Cast128(MasterKey::from_hex(key), parse_variant(variant), rounds).decrypt(Block64::from_u64(block)).to_u64();
      },
      py::arg("key"), py::arg("block"), py::arg("variant") = "original", py::arg("rounds") = kMaxRounds);
  m.def(
      "key_schedule",
      [](const std::string& key) {
        const RoundKeys k = key_schedule(MasterKey::from_hex(key));
        return py::make_tuple(std::vector<Word32>(k.km.begin(), k.km.end()),
                              std::vector<int>(k.kr.begin(), k.kr.end()));
      },
      py::arg("key"), "(km, kr) lists of 16 subkeys each");
  m.def(
      "round_function",
      [](int round, const std::string& variant, Word32 km, int kr, Word32 r) {
        if (round < 1 || round > kMaxRounds) throw Error(ErrorKind::InvalidRounds, "round must be 1..16");
        if (kr < 0 || kr > 31) throw Error(ErrorKind::InvalidArgument, "kr must be 0..31");
        return round_function(round, parse_variant(variant), km, kr, r);
      },
      py::arg("round"), py::arg("variant"), py::arg("km"), py::arg("kr"), py::arg("r"));

  m.def(
      "encrypt_image",
      [](const ImageArray& img, const std::string& key, const std::string& variant, int rounds) {
        return to_array(encrypt_image_ecb(to_image(img), ecb_config(key, variant, rounds)));
      },
      py::arg("image"), py::arg("key"), py::arg("variant") = "original", py::arg("rounds") = kMaxRounds);
  m.def(
      "decrypt_image",
      [](const ImageArray& img, const std::string& key, const std::string& variant, int rounds) {
        return to_array(decrypt_image_ecb(to_image(img), ecb_config(key, variant, rounds)));
      },
      py::arg("image"), py::arg("key"), py::arg("variant") = "original", py::arg("rounds") = kMaxRounds);
  m.def(
      "encrypt_bytes",
      [](const py::bytes& data, const std::string& key, const std::string& variant, int rounds) {
        return to_bytes(encrypt_bytes_ecb(from_bytes(data), ecb_config(key, variant, rounds)));
      },
      py::arg("data"), py::arg("key"), py::arg("variant") = "original", py::arg("rounds") = kMaxRounds);
  m.def(
      "decrypt_bytes",
      [](const py::bytes& data, const std::string& key, const std::string& variant, int rounds) {
        return to_bytes(decrypt_bytes_ecb(from_bytes(data), ecb_config(key, variant, rounds)));
      },
      py::arg("data"), py::arg("key"), py::arg("variant") = "original", py::arg("rounds") = kMaxRounds);

  m.def(
      "synth_image",
      [](const std::string& kind, std::size_t width, std::size_t height, std::uint64_t seed) {
        return to_array(synth_image(parse_synth_kind(kind), width, height, seed));
      },
      py::arg("kind"), py::arg("width") = 512, py::arg("height") = 512, py::arg("seed") = 1);
  m.def("load_image", [](const std::string& path) { return to_array(load_image(path)); }, py::arg("path"));
  m.def(
      "save_image", [](const ImageArray& img, const std::string& path) { save_image(to_image(img), path); },
      py::arg("image"), py::arg("path"));

  m.def(
      "avalanche",
      [](const std::string& mode, std::uint64_t samples, int rounds, std::uint64_t seed,
         const std::string& comparator, const std::string& key, std::optional<std::size_t> fixed_key_bit,
         unsigned workers) {
        AvalancheConfig cfg;
        cfg.mode = parse_avalanche_mode(mode);
        cfg.samples = samples;
        cfg.rounds = rounds;
        cfg.seed = seed;
        cfg.comparator = parse_comparator(comparator);
        cfg.master_key = MasterKey::from_hex(key);
        cfg.fixed_key_bit = fixed_key_bit;
        cfg.workers = workers;
        AvalancheTable t;
        {
          py::gil_scoped_release release;
          t = avalanche_experiment(cfg);
        }
        return table_dict(t);
      },
      py::arg("mode") = "plaintext", py::arg("samples") = kDefaultAvalancheSamples, py::arg("rounds") = kMaxRounds,
      py::arg("seed") = 0, py::arg("comparator") = "closer32", py::arg("key") = std::string(kDefaultKey1Hex),
      py::arg("fixed_key_bit") = py::none(), py::arg("workers") = 1);

  m.def(
      "encryption_quality",
      [](const ImageArray& plain, const ImageArray& cipher) {
        return encryption_quality(to_image(plain), to_image(cipher));
      },
      py::arg("plain"), py::arg("cipher"));
  m.def(
      "eq_vs_rounds",
      [](const ImageArray& img, const std::string& key, const std::string& variant, const std::vector<int>& rounds) {
        std::vector<std::pair<int, double>> out;
        for (const EqRow& r : eq_vs_rounds(to_image(img), MasterKey::from_hex(key), parse_variant(variant), rounds)) {
          out.emplace_back(r.rounds, r.eq);
        }
        return out;
      },
      py::arg("image"), py::arg("key"), py::arg("variant"), py::arg("rounds"));

  m.def(
      "key_sensitivity",
      [](const ImageArray& img, const std::string& key1, const std::string& key2, const std::string& variant,
         int rounds, const std::string& diff) {
        const KeySensitivityReport r = key_sensitivity(to_image(img), MasterKey::from_hex(key1),
                                                       MasterKey::from_hex(key2), parse_variant(variant), rounds,
                                                       parse_diff_mode(diff));
        py::dict d;
        d["percent_differing"] = r.percent_differing;
        d["wrong_key_decrypt_percent"] = r.wrong_key_decrypt_percent;
        d["wrong_key_decrypt_reverse_percent"] = r.wrong_key_decrypt_reverse_percent;
        d["cipher_k1"] = to_array(r.cipher_k1);
        d["cipher_k2"] = to_array(r.cipher_k2);
        d["difference_image"] = to_array(r.difference_image);
        d["wrong_key_decrypt"] = to_array(r.wrong_key_decrypt);
        d["wrong_key_decrypt_reverse"] = to_array(r.wrong_key_decrypt_reverse);
        return d;
      },
      py::arg("image"), py::arg("key1") = std::string(kDefaultKey1Hex),
      py::arg("key2") = std::string(kDefaultKey2Hex), py::arg("variant") = "original",
      py::arg("rounds") = kMaxRounds, py::arg("diff") = "abs");

  m.def(
      "histogram",
      [](const ImageArray& img) {
        const Histogram h = histogram(to_image(img));
        py::array_t<std::uint64_t> out(kGreyLevels);
        std::memcpy(out.mutable_data(), h.bins.data(), sizeof h.bins);
        return out;
      },
      py::arg("image"));
  m.def(
      "histogram_uniformity",
      [](const py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>& bins) {
        return uniformity_dict(histogram_uniformity(histogram_from(bins)));
      },
      py::arg("bins"));
  m.def("chi_square_sf", &stats::chi_square_sf, py::arg("statistic"), py::arg("dof"));

  m.def(
      "sample_adjacent_pairs",
      [](const ImageArray& img, std::size_t n, std::uint64_t seed, const std::string& direction) {
        const CorrelationSample s = sample_adjacent_pairs(to_image(img), n, seed, parse_direction(direction));
        py::array_t<std::uint8_t> out({s.pairs.size(), std::size_t{2}});
        auto v = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < s.pairs.size(); ++i) {
          v(i, 0) = s.pairs[i].x;
          v(i, 1) = s.pairs[i].y;
        }
        return out;
      },
      py::arg("image"), py::arg("n") = kDefaultCorrelationPairs, py::arg("seed") = 0,
      py::arg("direction") = "horizontal");
  m.def(
      "correlation",
      [](const ImageArray& img, std::size_t n, std::uint64_t seed, const std::string& direction) {
        return correlation_coefficient(sample_adjacent_pairs(to_image(img), n, seed, parse_direction(direction)));
      },
      py::arg("image"), py::arg("n") = kDefaultCorrelationPairs, py::arg("seed") = 0,
      py::arg("direction") = "horizontal");
  m.def(
      "correlation_coefficient",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        if (x.size() != y.size()) throw py::value_error("x and y differ in length");
        return correlation_coefficient(x, y);
      },
      py::arg("x"), py::arg("y"));

  m.def(
      "bench_round_function",
      [](const std::string& variant, std::uint64_t iterations, std::uint64_t seed) {
        BenchReport r;
        {
          py::gil_scoped_release release;
          r = bench_round_function(parse_variant(variant), iterations, seed);
        }
        return bench_dict(r);
      },
      py::arg("variant"), py::arg("iterations") = 1'000'000, py::arg("seed") = 0);
  m.def(
      "compare_round_function",
      [](std::uint64_t iterations, std::uint64_t seed, int repeats) {
        BenchComparison c;
        {
          py::gil_scoped_release release;
          c = compare_round_function(iterations, seed, repeats);
        }
        py::dict d;
        d["original"] = bench_dict(c.original);
        d["modified"] = bench_dict(c.modified);
        d["speedup"] = c.speedup;
        return d;
      },
      py::arg("iterations") = 1'000'000, py::arg("seed") = 0, py::arg("repeats") = 5);
  m.def("round_function_chain", [](const std::string& variant, std::uint64_t iterations, std::uint64_t seed) {
    return round_function_chain(parse_variant(variant), iterations, seed);
  }, py::arg("variant"), py::arg("iterations"), py::arg("seed") = 0);

  m.def(
      "selftest",
      [](bool quick) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const CheckResult& c : run_selftest(!quick)) out.emplace_back(c.name, c.passed, c.detail);
        return out;
      },
      py::arg("quick") = false);

  m.attr("DEFAULT_KEY1") = std::string(kDefaultKey1Hex);
  m.attr("DEFAULT_KEY2") = std::string(kDefaultKey2Hex);
}
