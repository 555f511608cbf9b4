#include "castlab/ecb.hpp"

#include "castlab/error.hpp"

namespace castlab {

namespace {

template <bool Encrypt>
void transform(std::span<std::uint8_t> data, const Cast128& cipher) {
  if (data.size() % kBlockBytes != 0) {
    throw Error(ErrorKind::NotBlockAligned,
                std::to_string(data.size()) + " bytes is not a multiple of the 8-byte block");
  }
  for (std::size_t off = 0; off < data.size(); off += kBlockBytes) {
    const auto chunk = data.subspan(off).first<kBlockBytes>();
    const Block64 in = Block64::from_bytes(chunk);
    const Block64 out = Encrypt ? cipher.encrypt(in) : cipher.decrypt(in);
    out.to_bytes(chunk);
  }
}

GrayImage transform_image(const GrayImage& img, const EcbConfig& cfg, bool encrypt) {
  if (img.size() % kBlockBytes != 0) {
    throw Error(ErrorKind::NotBlockAligned, "image has " + std::to_string(img.size()) +
                                                " pixels, not a multiple of 8");
  }
  const Cast128 cipher(cfg.key, cfg.variant, cfg.rounds);
  GrayImage out = img;
  if (encrypt) {
    transform<true>(out.pixels, cipher);
  } else {
    transform<false>(out.pixels, cipher);
  }
  return out;
}

}  // namespace

void ecb_encrypt_in_place(std::span<std::uint8_t> data, const Cast128& cipher) {
  transform<true>(data, cipher);
}

void ecb_decrypt_in_place(std::span<std::uint8_t> data, const Cast128& cipher) {
  transform<false>(data, cipher);
}

GrayImage encrypt_image_ecb(const GrayImage& img, const EcbConfig& cfg) {
  return transform_image(img, cfg, true);
}

GrayImage decrypt_image_ecb(const GrayImage& img, const EcbConfig& cfg) {
  return transform_image(img, cfg, false);
}

std::vector<std::uint8_t> encrypt_bytes_ecb(std::span<const std::uint8_t> data, const EcbConfig& cfg) {
  const Cast128 cipher(cfg.key, cfg.variant, cfg.rounds);
  const std::size_t pad = kBlockBytes - data.size() % kBlockBytes;
  std::vector<std::uint8_t> out(data.begin(), data.end());
  out.insert(out.end(), pad, static_cast<std::uint8_t>(pad));
  transform<true>(out, cipher);
  return out;
}

std::vector<std::uint8_t> decrypt_bytes_ecb(std::span<const std::uint8_t> data, const EcbConfig& cfg) {
  if (data.empty() || data.size() % kBlockBytes != 0) {
    throw Error(ErrorKind::BadPadding, "ciphertext length " + std::to_string(data.size()) +
                                           " is not a positive multiple of 8");
  }
  const Cast128 cipher(cfg.key, cfg.variant, cfg.rounds);
  std::vector<std::uint8_t> out(data.begin(), data.end());
  transform<false>(out, cipher);
  const std::uint8_t pad = out.back();
  if (pad == 0 || pad > kBlockBytes) throw Error(ErrorKind::BadPadding, "invalid PKCS#7 pad byte");
  for (std::size_t i = out.size() - pad; i < out.size(); ++i) {
    if (out[i] != pad) throw Error(ErrorKind::BadPadding, "inconsistent PKCS#7 padding");
  }
  out.resize(out.size() - pad);
  return out;
}

}  // namespace castlab
