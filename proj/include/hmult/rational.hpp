#pragma once

// Exact scalars. Everything numeric in the library is built on these two
// GMP-backed types; expression templates are off so that Eigen sees plain
// value types.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hmult {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

inline Integer numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline Integer denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}
inline bool is_integral(const Rational& r) { return denominator(r) == 1; }

/// "num/den" in lowest terms, or a bare integer when den == 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Inverse of to_string; accepts optional sign and "num" or "num/den".
Rational parse_rational(std::string_view text);

// Small-integer number theory shared across modules.
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t mod(std::int64_t a, std::int64_t m);
bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

struct PrimePower {
  std::int64_t prime;
  int exponent;
};
std::vector<PrimePower> factor(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
bool is_squarefree(std::int64_t n);

/// p-adic valuation of a nonzero integer.
int valuation(const Integer& z, std::int64_t p);

/// Index of Gamma0(N) in SL2(Z): N * prod_{p | N} (1 + 1/p).
std::int64_t gamma0_index(std::int64_t level);

}  // namespace hmult
