#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace ptosc {

using Complex = std::complex<double>;

constexpr Complex kImaginary{0.0, 1.0};

// Rejected input: a documented precondition does not hold.
// The command line tool maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation that cannot deliver a certified result. Carries a short
// machine-readable code ("degenerate-point", "no-valid-window", ...).
// The command line tool maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace ptosc
