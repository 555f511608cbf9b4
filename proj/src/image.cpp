#include "castlab/image.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "castlab/error.hpp"
#include "castlab/rng.hpp"

namespace castlab {

GrayImage::GrayImage(std::size_t w, std::size_t h, std::vector<std::uint8_t> px)
    : width(w), height(h), pixels(std::move(px)) {
  if (pixels.size() != w * h) {
    throw Error(ErrorKind::SizeMismatch, "pixel buffer holds " + std::to_string(pixels.size()) +
                                             " values for a " + std::to_string(w) + "x" +
                                             std::to_string(h) + " image");
  }
}

Histogram histogram(const GrayImage& img) {
  Histogram h;
  for (std::uint8_t p : img.pixels) ++h.bins[p];
  h.total = img.pixels.size();
  return h;
}

ImageFormat format_for_path(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".bmp" ? ImageFormat::Bmp : ImageFormat::Pgm;
}

namespace {

constexpr std::size_t kBmpFileHeader = 14;
constexpr std::size_t kBmpInfoHeader = 40;

std::uint32_t le32(std::span<const std::uint8_t> d, std::size_t o) {
  return std::uint32_t{d[o]} | (std::uint32_t{d[o + 1]} << 8) | (std::uint32_t{d[o + 2]} << 16) |
         (std::uint32_t{d[o + 3]} << 24);
}

std::uint16_t le16(std::span<const std::uint8_t> d, std::size_t o) {
  return static_cast<std::uint16_t>(d[o] | (d[o + 1] << 8));
}

void put_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_le16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

std::size_t bmp_stride(std::size_t width) { return (width + 3) & ~std::size_t{3}; }

GrayImage decode_bmp(std::span<const std::uint8_t> d) {
  if (d.size() < kBmpFileHeader + kBmpInfoHeader) {
    throw Error(ErrorKind::CorruptHeader, "BMP shorter than its headers");
  }
  const std::uint32_t data_offset = le32(d, 10);
  const std::uint32_t info_size = le32(d, 14);
  const auto width = static_cast<std::int32_t>(le32(d, 18));
  const auto height = static_cast<std::int32_t>(le32(d, 22));
  const std::uint16_t planes = le16(d, 26);
  const std::uint16_t bpp = le16(d, 28);
  const std::uint32_t compression = le32(d, 30);
  std::uint32_t colors = le32(d, 46);

  if (info_size < kBmpInfoHeader || planes != 1 || width <= 0 || height == 0) {
    throw Error(ErrorKind::CorruptHeader, "invalid BMP info header");
  }
  if (bpp != 8) {
    throw Error(ErrorKind::UnsupportedFormat,
                "only 8-bit BMP is supported, got " + std::to_string(bpp) + " bpp");
  }
  if (compression != 0) {
    throw Error(ErrorKind::UnsupportedFormat, "compressed BMP is not supported");
  }
  if (colors == 0) colors = 256;
  if (colors > 256) throw Error(ErrorKind::CorruptHeader, "palette larger than 256 entries");

  const std::size_t palette_offset = kBmpFileHeader + info_size;
  if (palette_offset + 4 * std::size_t{colors} > d.size() || data_offset > d.size()) {
    throw Error(ErrorKind::CorruptHeader, "BMP palette or pixel offset out of range");
  }
  std::array<std::uint8_t, 256> grey{};
  for (std::uint32_t i = 0; i < colors; ++i) {
    const std::size_t o = palette_offset + 4 * i;
    const std::uint8_t b = d[o], g = d[o + 1], r = d[o + 2];
    if (r != g || g != b) {
      throw Error(ErrorKind::UnsupportedFormat, "BMP palette is not greyscale");
    }
    grey[i] = r;
  }

  const bool top_down = height < 0;
  const std::size_t w = static_cast<std::size_t>(width);
  const std::size_t h = static_cast<std::size_t>(top_down ? -std::int64_t{height} : height);
  const std::size_t stride = bmp_stride(w);
  if (d.size() - data_offset < stride * h) {
    throw Error(ErrorKind::SizeMismatch, "BMP pixel data is truncated");
  }

  GrayImage img(w, h);
  for (std::size_t row = 0; row < h; ++row) {
    const std::size_t y = top_down ? row : h - 1 - row;
    const std::uint8_t* src = d.data() + data_offset + row * stride;
    for (std::size_t x = 0; x < w; ++x) {
      if (src[x] >= colors) throw Error(ErrorKind::CorruptHeader, "pixel index beyond palette");
      img.at(x, y) = grey[src[x]];
    }
  }
  return img;
}

// Next whitespace-delimited header token; '#' starts a comment to end of line.
std::string pgm_token(std::span<const std::uint8_t> d, std::size_t& pos) {
  while (pos < d.size()) {
    if (d[pos] == '#') {
      while (pos < d.size() && d[pos] != '\n') ++pos;
    } else if (std::isspace(d[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  std::string tok;
  while (pos < d.size() && !std::isspace(d[pos]) && d[pos] != '#') {
    tok.push_back(static_cast<char>(d[pos++]));
  }
  return tok;
}

std::size_t pgm_number(std::span<const std::uint8_t> d, std::size_t& pos) {
  const std::string tok = pgm_token(d, pos);
  if (tok.empty() || tok.size() > 9 ||
      !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw Error(ErrorKind::CorruptHeader, "bad PGM header field '" + tok + "'");
  }
  return std::stoul(tok);
}

GrayImage decode_pgm(std::span<const std::uint8_t> d) {
  std::size_t pos = 2;
  const std::size_t w = pgm_number(d, pos);
  const std::size_t h = pgm_number(d, pos);
  const std::size_t maxval = pgm_number(d, pos);
  if (w == 0 || h == 0) throw Error(ErrorKind::CorruptHeader, "PGM with zero dimension");
  if (maxval != 255) {
    throw Error(ErrorKind::UnsupportedFormat, "PGM maxval must be 255, got " + std::to_string(maxval));
  }
  if (pos >= d.size() || !std::isspace(d[pos])) {
    throw Error(ErrorKind::CorruptHeader, "PGM header not terminated by whitespace");
  }
  ++pos;
  if (d.size() - pos < w * h) throw Error(ErrorKind::SizeMismatch, "PGM pixel data is truncated");
  return GrayImage(w, h, std::vector<std::uint8_t>(d.begin() + pos, d.begin() + pos + w * h));
}

}  // namespace

GrayImage decode_image(std::span<const std::uint8_t> data) {
  if (data.size() >= 2 && data[0] == 'B' && data[1] == 'M') return decode_bmp(data);
  if (data.size() >= 2 && data[0] == 'P') {
    if (data[1] == '5') return decode_pgm(data);
    throw Error(ErrorKind::UnsupportedFormat, "only binary greyscale PGM (P5) is supported");
  }
  throw Error(ErrorKind::UnsupportedFormat, "neither PGM nor BMP");
}

std::vector<std::uint8_t> encode_image(const GrayImage& img, ImageFormat format) {
  std::vector<std::uint8_t> out;
  if (format == ImageFormat::Pgm) {
    const std::string header =
        "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    out.assign(header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
  }

  const std::size_t stride = bmp_stride(img.width);
  const std::uint32_t data_offset = kBmpFileHeader + kBmpInfoHeader + 4 * 256;
  const auto image_bytes = static_cast<std::uint32_t>(stride * img.height);
  out.reserve(data_offset + image_bytes);

  out.push_back('B');
  out.push_back('M');
  put_le32(out, data_offset + image_bytes);
  put_le32(out, 0);
  put_le32(out, data_offset);

  put_le32(out, kBmpInfoHeader);
  put_le32(out, static_cast<std::uint32_t>(img.width));
  put_le32(out, static_cast<std::uint32_t>(img.height));
  put_le16(out, 1);
  put_le16(out, 8);
  put_le32(out, 0);  // BI_RGB
  put_le32(out, image_bytes);
  put_le32(out, 2835);  // 72 dpi
  put_le32(out, 2835);
  put_le32(out, 256);
  put_le32(out, 0);

  for (int i = 0; i < 256; ++i) {
    const auto g = static_cast<std::uint8_t>(i);
    out.insert(out.end(), {g, g, g, 0});
  }
  for (std::size_t row = 0; row < img.height; ++row) {
    const std::size_t y = img.height - 1 - row;
    const auto begin = img.pixels.begin() + static_cast<std::ptrdiff_t>(y * img.width);
    out.insert(out.end(), begin, begin + static_cast<std::ptrdiff_t>(img.width));
    out.insert(out.end(), stride - img.width, 0);
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

GrayImage load_image(const std::filesystem::path& path) { return decode_image(read_file(path)); }

void save_image(const GrayImage& img, const std::filesystem::path& path, ImageFormat format) {
  write_file(path, encode_image(img, format));
}

void save_image(const GrayImage& img, const std::filesystem::path& path) {
  save_image(img, path, format_for_path(path));
}

SynthKind parse_synth_kind(std::string_view name) {
  if (name == "gradient") return SynthKind::Gradient;
  if (name == "smooth_noise") return SynthKind::SmoothNoise;
  if (name == "constant") return SynthKind::Constant;
  throw Error(ErrorKind::InvalidArgument, "unknown synthetic image kind '" + std::string(name) + "'");
}

namespace {

constexpr std::ptrdiff_t kBlurRadius = 4;  // 9x9 window

GrayImage smooth_noise(std::size_t w, std::size_t h, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::uint32_t> noise(w * h);
  for (std::size_t i = 0; i < noise.size(); i += 8) {
    std::uint64_t bits = rng.next_u64();
    for (std::size_t j = i; j < std::min(i + 8, noise.size()); ++j, bits >>= 8) {
      noise[j] = static_cast<std::uint32_t>(bits & 0xFF);
    }
  }

  const auto sw = static_cast<std::ptrdiff_t>(w);
  const auto sh = static_cast<std::ptrdiff_t>(h);
  auto clamp = [](std::ptrdiff_t v, std::ptrdiff_t hi) { return std::clamp<std::ptrdiff_t>(v, 0, hi - 1); };

  // Separable box sum; window sums stay integral so the stretch below is exact.
  std::vector<std::uint32_t> rows(w * h);
  for (std::ptrdiff_t y = 0; y < sh; ++y) {
    for (std::ptrdiff_t x = 0; x < sw; ++x) {
      std::uint32_t s = 0;
      for (std::ptrdiff_t k = -kBlurRadius; k <= kBlurRadius; ++k) s += noise[y * sw + clamp(x + k, sw)];
      rows[y * sw + x] = s;
    }
  }
  std::vector<std::uint32_t> sums(w * h);
  for (std::ptrdiff_t y = 0; y < sh; ++y) {
    for (std::ptrdiff_t x = 0; x < sw; ++x) {
      std::uint32_t s = 0;
      for (std::ptrdiff_t k = -kBlurRadius; k <= kBlurRadius; ++k) s += rows[clamp(y + k, sh) * sw + x];
      sums[y * sw + x] = s;
    }
  }

  const auto [lo_it, hi_it] = std::minmax_element(sums.begin(), sums.end());
  const std::uint64_t lo = *lo_it;
  const std::uint64_t span = *hi_it - lo;
  GrayImage img(w, h);
  if (span == 0) return img;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    img.pixels[i] = static_cast<std::uint8_t>(((sums[i] - lo) * 255 + span / 2) / span);
  }
  return img;
}

}  // namespace

GrayImage synth_image(SynthKind kind, std::size_t width, std::size_t height, std::uint64_t seed) {
  if (width == 0 || height == 0) {
    throw Error(ErrorKind::InvalidArgument, "synthetic image needs width, height >= 1");
  }
  switch (kind) {
    case SynthKind::Gradient: {
      GrayImage img(width, height);
      for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x) img.at(x, y) = static_cast<std::uint8_t>((x + y) % 256);
      return img;
    }
    case SynthKind::SmoothNoise:
      return smooth_noise(width, height, seed);
    case SynthKind::Constant:
      return GrayImage(width, height, static_cast<std::uint8_t>(seed % 256));
  }
  return {};
}

}  // namespace castlab
