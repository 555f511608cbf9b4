#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "castlab/image.hpp"
#include "test_util.hpp"

using namespace castlab;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

GrayImage sample_image(std::size_t w, std::size_t h) {
  GrayImage img(w, h);
  for (std::size_t i = 0; i < img.size(); ++i) img.pixels[i] = static_cast<std::uint8_t>(i * 37 + 5);
  return img;
}

std::int32_t read_i32(const std::vector<std::uint8_t>& b, std::size_t off) {
  std::int32_t v = 0;
  std::memcpy(&v, b.data() + off, 4);
  return v;
}

void write_i32(std::vector<std::uint8_t>& b, std::size_t off, std::int32_t v) {
  std::memcpy(b.data() + off, &v, 4);
}

}  // namespace

TEST_CASE("GrayImage construction") {
  const GrayImage img(3, 2, 9);
  CHECK(img.size() == 6);
  CHECK(img.at(2, 1) == 9);
  CHECK_THROWS_KIND(GrayImage(3, 2, std::vector<std::uint8_t>(5)), ErrorKind::SizeMismatch);
}

TEST_CASE("histogram counts every pixel") {
  const GrayImage img(4, 2, std::vector<std::uint8_t>{0, 0, 1, 255, 255, 255, 7, 0});
  const Histogram h = histogram(img);
  CHECK(h.total == 8);
  CHECK(h.bins[0] == 3);
  CHECK(h.bins[1] == 1);
  CHECK(h.bins[7] == 1);
  CHECK(h.bins[255] == 3);
}

TEST_CASE("PGM encode matches the P5 layout and roundtrips") {
  const GrayImage img(2, 2, std::vector<std::uint8_t>{1, 2, 3, 4});
  const auto enc = encode_image(img, ImageFormat::Pgm);
  const std::string expected = std::string("P5\n2 2\n255\n") + "\x01\x02\x03\x04";
  CHECK(enc == bytes_of(expected));
  CHECK(decode_image(enc) == img);

  const GrayImage big = sample_image(17, 9);
  CHECK(decode_image(encode_image(big, ImageFormat::Pgm)) == big);
}

TEST_CASE("PGM header comments and whitespace") {
  const auto data = bytes_of(std::string("P5 # comment\n3\t# w\n1\n255\n") + "abc");
  const GrayImage img = decode_image(data);
  CHECK(img.width == 3);
  CHECK(img.height == 1);
  CHECK(img.pixels == std::vector<std::uint8_t>{'a', 'b', 'c'});
}

TEST_CASE("malformed PGM") {
  CHECK_THROWS_KIND(decode_image(bytes_of("P2\n1 1\n255\n0\n")), ErrorKind::UnsupportedFormat);
  CHECK_THROWS_KIND(decode_image(bytes_of("P5\n1 1\n65535\n\x01\x02")), ErrorKind::UnsupportedFormat);
  CHECK_THROWS_KIND(decode_image(bytes_of("P5\n2 2\n255\nab")), ErrorKind::SizeMismatch);
  CHECK_THROWS_KIND(decode_image(bytes_of("P5\nx 2\n255\n")), ErrorKind::CorruptHeader);
  CHECK_THROWS_KIND(decode_image(bytes_of("GIF89a")), ErrorKind::UnsupportedFormat);
  CHECK_THROWS_AS(decode_image(std::vector<std::uint8_t>{}), Error);
}

TEST_CASE("BMP encode layout and roundtrip") {
  const GrayImage img = sample_image(5, 3);
  const auto enc = encode_image(img, ImageFormat::Bmp);
  REQUIRE(enc.size() >= 1078);
  CHECK(enc[0] == 'B');
  CHECK(enc[1] == 'M');
  CHECK(read_i32(enc, 2) == static_cast<std::int32_t>(enc.size()));
  CHECK(read_i32(enc, 10) == 1078);
  CHECK(read_i32(enc, 18) == 5);
  CHECK(read_i32(enc, 22) == 3);
  CHECK(enc.size() == 1078 + 8 * 3);  // rows padded to 4 bytes
  // Bottom-up: the first stored row is the image's last row.
  CHECK(enc[1078] == img.at(0, 2));
  CHECK(decode_image(enc) == img);

  for (std::size_t w : {1, 2, 3, 4, 8, 13}) {
    const GrayImage im = sample_image(w, 4);
    CHECK(decode_image(encode_image(im, ImageFormat::Bmp)) == im);
  }
}

TEST_CASE("BMP top-down rows") {
  const GrayImage img = sample_image(4, 3);
  auto enc = encode_image(img, ImageFormat::Bmp);
  write_i32(enc, 22, -3);
  std::vector<std::uint8_t> rows(enc.begin() + 1078, enc.end());
  for (std::size_t r = 0; r < 3; ++r) {
    std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>((2 - r) * 4), 4,
                enc.begin() + static_cast<std::ptrdiff_t>(1078 + r * 4));
  }
  CHECK(decode_image(enc) == img);
}

TEST_CASE("BMP rejects colour palettes and other depths") {
  const GrayImage img = sample_image(4, 2);
  auto colour = encode_image(img, ImageFormat::Bmp);
  colour[54 + 4 * 10] = 0;  // blue of palette entry 10
  CHECK_THROWS_KIND(decode_image(colour), ErrorKind::UnsupportedFormat);

  auto deep = encode_image(img, ImageFormat::Bmp);
  deep[28] = 24;
  CHECK_THROWS_KIND(decode_image(deep), ErrorKind::UnsupportedFormat);

  auto truncated = encode_image(img, ImageFormat::Bmp);
  truncated.resize(truncated.size() - 3);
  CHECK_THROWS_KIND(decode_image(truncated), ErrorKind::SizeMismatch);
}

TEST_CASE("format from path") {
  CHECK(format_for_path("a.bmp") == ImageFormat::Bmp);
  CHECK(format_for_path("a.pgm") == ImageFormat::Pgm);
  CHECK(format_for_path("noext") == ImageFormat::Pgm);
}

TEST_CASE("file roundtrip and I/O errors") {
  const auto dir = std::filesystem::temp_directory_path() / "castlab_test_image";
  std::filesystem::create_directories(dir);
  const GrayImage img = sample_image(6, 7);
  for (const char* name : {"x.pgm", "x.bmp"}) {
    save_image(img, dir / name);
    CHECK(load_image(dir / name) == img);
  }
  CHECK_THROWS_KIND(load_image(dir / "missing.pgm"), ErrorKind::IoError);
  CHECK_THROWS_KIND(save_image(img, dir / "no_such_dir" / "x.pgm"), ErrorKind::IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("synthetic images") {
  const GrayImage g = synth_image(SynthKind::Gradient, 300, 2, 0);
  CHECK(g.at(0, 0) == 0);
  CHECK(g.at(10, 1) == 11);
  CHECK(g.at(299, 1) == (299 + 1) % 256);

  CHECK(synth_image(SynthKind::Gradient, 4, 1, 0).pixels == std::vector<std::uint8_t>{0, 1, 2, 3});
  const Histogram flat = histogram(synth_image(SynthKind::Gradient, 256, 1, 0));
  CHECK(std::all_of(flat.bins.begin(), flat.bins.end(), [](auto b) { return b == 1; }));
  const Histogram seven = histogram(synth_image(SynthKind::Constant, 10, 1, 7));
  CHECK(seven.bins[7] == 10);

  const GrayImage c = synth_image(SynthKind::Constant, 4, 4, 300);
  CHECK(std::all_of(c.pixels.begin(), c.pixels.end(), [](auto p) { return p == 300 % 256; }));

  const GrayImage n1 = synth_image(SynthKind::SmoothNoise, 64, 48, 7);
  const GrayImage n2 = synth_image(SynthKind::SmoothNoise, 64, 48, 7);
  const GrayImage n3 = synth_image(SynthKind::SmoothNoise, 64, 48, 8);
  CHECK(n1 == n2);
  CHECK(n1 != n3);
  CHECK(n1.width == 64);
  CHECK(n1.height == 48);
  const auto [lo, hi] = std::minmax_element(n1.pixels.begin(), n1.pixels.end());
  CHECK(*lo == 0);
  CHECK(*hi == 255);

  CHECK(parse_synth_kind("smooth_noise") == SynthKind::SmoothNoise);
  CHECK_THROWS_AS(parse_synth_kind("plasma"), Error);
  CHECK_THROWS_KIND(synth_image(SynthKind::Gradient, 0, 4, 0), ErrorKind::InvalidArgument);
}
