#include "castlab/error.hpp"

namespace castlab {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidKeyLength: return "InvalidKeyLength";
    case ErrorKind::InvalidHex: return "InvalidHex";
    case ErrorKind::InvalidRounds: return "InvalidRounds";
    case ErrorKind::InvalidBitIndex: return "InvalidBitIndex";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorKind::CorruptHeader: return "CorruptHeader";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::NotBlockAligned: return "NotBlockAligned";
    case ErrorKind::BadPadding: return "BadPadding";
    case ErrorKind::ZeroBound: return "ZeroBound";
    case ErrorKind::EmptyHistogram: return "EmptyHistogram";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_name(kind)) + ": " + message), kind_(kind) {}

}  // namespace castlab
