#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace castlab {

inline constexpr int kGreyLevels = 256;

// Row-major 8-bit grayscale image.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(std::size_t w, std::size_t h, std::uint8_t fill = 0)
      : width(w), height(h), pixels(w * h, fill) {}
  // Throws Error(SizeMismatch) when pixels.size() != w * h.
  GrayImage(std::size_t w, std::size_t h, std::vector<std::uint8_t> px);

  std::size_t size() const noexcept { return pixels.size(); }
  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

struct Histogram {
  std::array<std::uint64_t, kGreyLevels> bins{};
  std::uint64_t total = 0;
};

Histogram histogram(const GrayImage& img);

enum class ImageFormat { Pgm, Bmp };

// .bmp -> Bmp, anything else -> Pgm.
ImageFormat format_for_path(const std::filesystem::path& path);

// Accepts binary PGM (P5, maxval 255) and 8-bit BI_RGB BMP with a grey
// palette. Throws UnsupportedFormat, CorruptHeader or SizeMismatch.
GrayImage decode_image(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> encode_image(const GrayImage& img, ImageFormat format);

GrayImage load_image(const std::filesystem::path& path);
void save_image(const GrayImage& img, const std::filesystem::path& path, ImageFormat format);
void save_image(const GrayImage& img, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);

enum class SynthKind { Gradient, SmoothNoise, Constant };

SynthKind parse_synth_kind(std::string_view name);

// gradient: (x + y) mod 256. smooth_noise: seeded random bytes, 9x9 mean
// filter (edge-clamped), min/max stretched to [0, 255]. constant: seed mod 256.
GrayImage synth_image(SynthKind kind, std::size_t width, std::size_t height, std::uint64_t seed);

}  // namespace castlab
