#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace estermann {

enum class Errc {
  InvalidArgument,
  Parse,
  MuSumNotOne,
  IntegerExponent,
  ExponentTooSmall,
  WindowTooWide,
  EmptyRange,
  MemoryBudgetExceeded,
  OracleLimitExceeded,
  ToleranceNotMet,
  Overflow,
  Io,
};

const char* errc_name(Errc code) noexcept;

// All failures in the core surface as this exception. The C API maps the
// code onto est_status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Error(Errc code, const std::string& what, double achieved)
      : std::runtime_error(what), code_(code), achieved_(achieved) {}

  Errc code() const noexcept { return code_; }
  // Only meaningful for ToleranceNotMet: the error estimate that was reached.
  double achieved() const noexcept { return achieved_; }

 private:
  Errc code_;
  double achieved_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace estermann
