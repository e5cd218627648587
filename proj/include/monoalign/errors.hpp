#pragma once

#include <stdexcept>
#include <string>

namespace monoalign {

enum class Errc {
  // input validation
  ZeroDim,
  InfeasibleLengths,
  LengthsOutOfRange,
  NonFinite,
  SpeechTooLong,
  ShapeMismatch,
  InvalidPath,
  InvalidMatrix,
  InvalidConfig,
  // oracle guard
  TooLarge,
  // report handling
  EmptyReport,
  InsufficientPoints,
  // tensor files
  IoFailure,
  BadMagic,
  UnsupportedVersion,
  TruncatedFile,
  DimensionOverflow,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Rejected inputs or arguments. The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// File and filesystem failures. The CLI maps these to exit code 1.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace monoalign
