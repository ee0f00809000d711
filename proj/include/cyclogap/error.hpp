#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclogap {

enum class ErrorKind {
  kUnitInput,         // n = 1 (or n < 3)
  kEvenInput,
  kNotSquareFree,
  kNotDivisor,
  kInvalidArgument,
  kSearchCeiling,     // next_prime_in_class gave up
  kOverflow,          // checked 64-bit arithmetic failed
  kDegreeCeiling,     // polynomial would exceed the configured size
  kZeroPolynomial,
  kInfeasibleEnumeration,
  kMismatchedModulus,
  kIo,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cyclogap
