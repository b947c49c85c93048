#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tsrkit {

/// Arbitrary-precision nonnegative integers (group orders 2^d - 1, exponents).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 2^d - 1.
inline BigInt mersenne(unsigned d) {
    BigInt one = 1;
    return (one << d) - 1;
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

}  // namespace tsrkit
