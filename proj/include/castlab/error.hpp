#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace castlab {

enum class ErrorKind {
  InvalidKeyLength,
  InvalidHex,
  InvalidRounds,
  InvalidBitIndex,
  InvalidArgument,
  UnsupportedFormat,
  CorruptHeader,
  SizeMismatch,
  IoError,
  NotBlockAligned,
  BadPadding,
  ZeroBound,
  EmptyHistogram,
  DegenerateVariance,
};

std::string_view error_name(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit code and report it by name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace castlab
