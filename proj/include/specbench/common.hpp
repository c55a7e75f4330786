#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace specbench {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Every failure mode surfaced by the library carries one of these tags, so
// callers (and tests) can react to the condition rather than parse messages.
enum class ErrorKind {
  BadInput,
  BadCurve,
  BadDimension,
  ContourThroughSpectrum,
  GridMismatch,
  NearPole,
  NoConvergence,
  NotContraction,
  NotHermitian,
  NotPositiveDefinite,
  OverlapError,
  PoleOnSpectrum,
  RegionViolation,
  Singular,
  TooCloseToBoundary,
  Validation,
  ZeroFunction,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

inline void require(bool ok, ErrorKind k, const std::string& msg) {
  if (!ok) fail(k, msg);
}

}  // namespace specbench
