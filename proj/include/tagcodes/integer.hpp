#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace tagcodes {

using Rational = boost::rational<std::int64_t>;

bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;
};

/// Decomposes n = p^k with k >= 1, or nothing if n is not a prime power.
std::optional<PrimePower> prime_power(std::uint64_t n);

/// Distinct prime factors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// base^exp, throwing validation_error on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp);

std::uint64_t isqrt(std::uint64_t n);

inline bool is_square(std::uint64_t n) {
  const auto r = isqrt(n);
  return r * r == n;
}

inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

/// Exact ceiling of a rational (den > 0 after normalisation).
std::int64_t ceil(const Rational& x);
std::int64_t floor(const Rational& x);

std::string to_string(const Rational& x);

}  // namespace tagcodes
