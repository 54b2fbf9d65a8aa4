#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace nilcov {

// All group exponents and matrix entries are exact; collection and SNF can
// grow entries combinatorially.
using Int = boost::multiprecision::cpp_int;

// Thrown when a configurable size guard trips (CLI maps this to exit code 3).
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline long long to_longlong(const Int& v) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min())
    throw std::overflow_error("integer does not fit in 64 bits");
  return static_cast<long long>(v);
}

}  // namespace nilcov
