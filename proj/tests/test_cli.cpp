#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "castlab/analysis.hpp"
#include "castlab/cli.hpp"
#include "castlab/ecb.hpp"
#include "castlab/image.hpp"
#include "test_util.hpp"

using namespace castlab;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("castlab_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("encrypt and decrypt an image") {
  TempDir dir;
  const GrayImage img = synth_image(SynthKind::SmoothNoise, 64, 32, 1);
  save_image(img, dir / "a.pgm");

  const Result enc = run({"encrypt", "--key", "ADF278565E262AD1F5DEC94A0BF25B27", "--variant", "original",
                          "--in", dir / "a.pgm", "--out", dir / "c.pgm"});
  CHECK(enc.code == 0);
  const GrayImage c = load_image(dir / "c.pgm");
  CHECK(c == encrypt_image_ecb(img, {MasterKey::from_hex(kDefaultKey1Hex), Variant::Original, 16}));

  const Result dec = run({"decrypt", "--key", "ADF278565E262AD1F5DEC94A0BF25B27", "--in", dir / "c.pgm",
                          "--out", dir / "p.bmp"});
  CHECK(dec.code == 0);
  CHECK(load_image(dir / "p.bmp") == img);
}

TEST_CASE("byte mode uses PKCS#7") {
  TempDir dir;
  {
    std::ofstream f(dir / "msg.txt", std::ios::binary);
    f << "attack at dawn";
  }
  CHECK(run({"encrypt", "--key", "0123456712", "--variant", "modified", "--rounds", "12", "--in",
             dir / "msg.txt", "--out", dir / "msg.bin"}).code == 0);
  CHECK(fs::file_size(dir / "msg.bin") == 16);
  CHECK(run({"decrypt", "--key", "0123456712", "--variant", "modified", "--rounds", "12", "--in",
             dir / "msg.bin", "--out", dir / "back.txt"}).code == 0);
  CHECK(slurp(dir / "back.txt") == "attack at dawn");

  const Result wrong = run({"decrypt", "--key", "0123456713", "--in", dir / "msg.bin", "--out", dir / "x"});
  CHECK(wrong.code == 1);
  CHECK(wrong.err.find("BadPadding") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  TempDir dir;
  save_image(GrayImage(8, 8), dir / "a.pgm");
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"encrypt", "--key", "ZZZ", "--in", dir / "a.pgm", "--out", dir / "c.pgm"}).code == 2);
  CHECK(run({"encrypt", "--key", "0123", "--in", dir / "a.pgm", "--out", dir / "c.pgm"}).code == 2);
  CHECK(run({"encrypt", "--key", "0123456712", "--in", dir / "missing.pgm", "--out", dir / "c.pgm"}).code == 2);
  CHECK(run({"encrypt", "--key", "0123456712", "--bogus", "--in", dir / "a.pgm", "--out", dir / "c.pgm"}).code == 2);
  CHECK(run({"encrypt", "--key", "0123456712", "--rounds", "17", "--in", dir / "a.pgm", "--out", dir / "c.pgm"}).code == 2);
  CHECK(run({"avalanche", "--rounds", "0..4"}).code == 2);
  CHECK(run({"avalanche", "--comparator", "bigger"}).code == 2);
  CHECK(run({"avalanche", "--mode", "plaintext", "--fixed-key-bit", "3", "--samples", "10"}).code == 2);
  CHECK(run({"avalanche", "--mode", "key", "--fixed-key-bit", "128", "--samples", "10"}).code == 2);
  CHECK(run({"histogram"}).code == 2);
  CHECK(run({"quality"}).code == 2);
  CHECK(run({"correlate", "--synth", "smooth_noise", "--pairs", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("runtime errors exit 1 with the error name") {
  TempDir dir;
  save_image(GrayImage(3, 3, 5), dir / "odd.pgm");
  const Result aligned = run({"encrypt", "--key", "0123456712", "--in", dir / "odd.pgm", "--out", dir / "c.pgm"});
  CHECK(aligned.code == 1);
  CHECK(aligned.err.find("NotBlockAligned") != std::string::npos);

  const Result flat = run({"correlate", "--synth", "constant", "--width", "16", "--height", "16"});
  CHECK(flat.code == 1);
  CHECK(flat.err.find("DegenerateVariance") != std::string::npos);

  {
    std::ofstream f(dir / "junk.pgm", std::ios::binary);
    f << "P5\n4 4\n255\nxx";
  }
  const Result junk = run({"histogram", "--in", dir / "junk.pgm"});
  CHECK(junk.code == 1);
  CHECK(junk.err.find("SizeMismatch") != std::string::npos);

  save_image(GrayImage(8, 8), dir / "b.pgm");
  const Result sizes = run({"quality", "--plain", dir / "a_missing.pgm", "--cipher", dir / "b.pgm"});
  CHECK(sizes.code == 2);
  save_image(GrayImage(16, 8), dir / "c.pgm");
  const Result mismatch = run({"quality", "--plain", dir / "b.pgm", "--cipher", dir / "c.pgm"});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.err.find("SizeMismatch") != std::string::npos);
}

TEST_CASE("selftest") {
  const Result r = run({"selftest", "--quick"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("rfc2144 128-bit key") != std::string::npos);
}

TEST_CASE("avalanche report is reproducible and worker independent") {
  const std::vector<std::string> base{"avalanche", "--samples", "2000", "--rounds", "2..16:7", "--seed", "5"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  const Result a = with({"--workers", "1"});
  const Result b = with({"--workers", "7"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["seed"] == 5);
  REQUIRE(j["tables"].size() == 3);
  CHECK(j["tables"][2]["rounds"] == 16);
  CHECK(j["tables"][0]["samples"] == 2000);
  CHECK(j["tables"][0].contains("wins_original"));

  CHECK(run({"avalanche", "--samples", "2000", "--rounds", "2..16:7", "--seed", "6"}).out != a.out);

  const Result csv = with({"--format", "csv", "--mode", "key", "--fixed-key-bit", "17"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("rounds,samples,", 0) == 0);
}

TEST_CASE("seed falls back to the environment") {
  ::setenv("CASTLAB_SEED", "5", 1);
  const Result env = run({"avalanche", "--samples", "500", "--rounds", "16"});
  ::unsetenv("CASTLAB_SEED");
  const Result flag = run({"avalanche", "--samples", "500", "--rounds", "16", "--seed", "5"});
  const Result none = run({"avalanche", "--samples", "500", "--rounds", "16"});
  CHECK(env.code == 0);
  CHECK(env.out == flag.out);
  CHECK(none.out != flag.out);
}

TEST_CASE("quality sweep and single pair") {
  TempDir dir;
  const Result sweep = run({"quality", "--sweep", "--synth", "smooth_noise", "--width", "64", "--height", "64",
                            "--rounds", "2..16:2"});
  REQUIRE(sweep.code == 0);
  const auto j = nlohmann::json::parse(sweep.out);
  CHECK(j["rows"].size() == 16);
  CHECK(j["rows"][0]["eq"].get<double>() > 0);

  const Result csv = run({"quality", "--sweep", "--synth", "gradient", "--width", "32", "--height", "8",
                          "--variant", "modified", "--rounds", "4,16", "--format", "csv"});
  CHECK(csv.out.rfind("rounds,eq_modified\n4,", 0) == 0);

  const GrayImage img = synth_image(SynthKind::Gradient, 16, 16, 0);
  save_image(img, dir / "p.pgm");
  save_image(img, dir / "q.pgm");
  const Result same = run({"quality", "--plain", dir / "p.pgm", "--cipher", dir / "q.pgm"});
  CHECK(same.code == 0);
  CHECK(nlohmann::json::parse(same.out)["eq"] == 0.0);
}

TEST_CASE("keysens writes the figure images") {
  TempDir dir;
  const Result r = run({"keysens", "--synth", "smooth_noise", "--width", "64", "--height", "64", "--out-dir",
                        dir / "ks"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["key1"] == std::string(kDefaultKey1Hex));
  CHECK(j["key2"] == std::string(kDefaultKey2Hex));
  CHECK(j["percent_differing"].get<double>() > 98.0);
  for (const char* name : {"plain.pgm", "cipher_k1.pgm", "cipher_k2.pgm", "difference.pgm",
                           "k1_cipher_decrypted_with_k2.pgm", "k2_cipher_decrypted_with_k1.pgm"}) {
    CHECK(fs::exists(dir.path / "ks" / name));
  }
}

TEST_CASE("histogram, correlate and plot") {
  TempDir dir;
  const std::vector<std::string> src{"--synth", "smooth_noise", "--width", "128", "--height", "128"};
  auto cmd = [&](std::string sub, std::vector<std::string> extra) {
    std::vector<std::string> args{std::move(sub)};
    args.insert(args.end(), src.begin(), src.end());
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };

  const Result h = cmd("histogram", {"--encrypt", "--svg", dir / "h.svg"});
  REQUIRE(h.code == 0);
  const auto hj = nlohmann::json::parse(h.out);
  CHECK(hj.contains("chi_square"));
  CHECK(hj.contains("p_value"));
  CHECK(hj["bins"].size() == 256);
  CHECK(slurp(dir / "h.svg").rfind("<svg", 0) == 0);

  const Result hc = cmd("histogram", {"--format", "csv"});
  CHECK(hc.out.rfind("level,count,percent\n", 0) == 0);

  const Result plain = cmd("correlate", {"--seed", "3", "--svg", dir / "s.svg"});
  REQUIRE(plain.code == 0);
  CHECK(nlohmann::json::parse(plain.out)["correlation"].get<double>() > 0.8);
  CHECK(cmd("correlate", {"--seed", "3"}).out == plain.out);
  const Result cipher = cmd("correlate", {"--encrypt", "--seed", "3", "--direction", "vertical"});
  CHECK(std::abs(nlohmann::json::parse(cipher.out)["correlation"].get<double>()) < 0.2);

  CHECK(cmd("plot", {"--kind", "scatter", "--pairs", "100", "--out", dir / "p.svg"}).code == 0);
  CHECK(cmd("plot", {"--encrypt", "--out", dir / "q.svg"}).code == 0);
  CHECK(slurp(dir / "p.svg").find("<circle") != std::string::npos);
  CHECK(cmd("plot", {"--out", (dir.path / "nodir" / "x.svg").string()}).code == 1);
}

TEST_CASE("bench report") {
  const Result r = run({"bench", "--iters", "20000", "--mb", "1", "--repeats", "2"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["reference_improvement_percent"] == 20.0);
  CHECK(j["round_function"]["speedup_modified_vs_original"].get<double>() > 0);
  CHECK(j["block_encrypt"]["original"]["throughput_mb_s"].get<double>() > 0);
}
