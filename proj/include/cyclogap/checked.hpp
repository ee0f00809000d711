#pragma once

#include <cstdint>
#include <string>

#include "cyclogap/error.hpp"

namespace cyclogap {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::kOverflow,
                "integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
  }
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw Error(ErrorKind::kOverflow,
                "integer overflow in " + std::to_string(a) + " - " + std::to_string(b));
  }
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorKind::kOverflow,
                "integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

}  // namespace cyclogap
