/**
 * @file integer.hpp
 * @brief Arbitrary-precision integer type shared by every module.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace foliation {

using Int = boost::multiprecision::cpp_int;

/// base^exp for exp >= 0; 0^0 is 1.
inline Int ipow(const Int& base, int exp) {
  if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
  Int result = 1;
  Int b = base;
  unsigned e = static_cast<unsigned>(exp);
  while (e != 0) {
    if (e & 1u) result *= b;
    e >>= 1u;
    if (e != 0) b *= b;
  }
  return result;
}

/// (-1)^e
inline int sign_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

inline std::string to_string(const Int& v) { return v.str(); }

}  // namespace foliation
