#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace conetype {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial_big(size_t n) {
  BigInt r = 1;
  for (size_t k = 2; k <= n; ++k) r *= static_cast<unsigned>(k);
  return r;
}

inline BigInt pow_big(BigInt base, BigInt exp) {
  BigInt r = 1;
  while (exp > 0) {
    if ((exp & 1) != 0) r *= base;
    exp >>= 1;
    if (exp > 0) base *= base;
  }
  return r;
}

}  // namespace conetype
