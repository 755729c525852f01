#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hmult/matrix.hpp"
#include "hmult/rational.hpp"

namespace hmult {

/// Dense univariate polynomial over Z, coefficient i multiplies x^i.
/// The zero polynomial has no coefficients.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  static IntPolynomial x();

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Integer>& coefficients() const { return coeffs_; }
  Integer coefficient(int i) const;
  const Integer& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;
  /// Sign of f(x), computed in integers via homogenisation.
  int sign_at(const Rational& x) const;

  IntPolynomial derivative() const;
  /// Divide out the gcd of the coefficients, keeping the sign of the leading one.
  IntPolynomial primitive_part() const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  /// "x^2 - 5*x"
  std::string to_string() const;

 private:
  void trim();
  std::vector<Integer> coeffs_;
};

/// Characteristic polynomial det(x I - m). Hessenberg reduction modulo
/// enough word-size primes to cover a Hadamard bound, then CRT.
/// Throws NonSquare, and NonIntegral when a coefficient is not an integer
/// (the caller is expected to scale such matrices first).
IntPolynomial charpoly(const RationalMatrix& m);

namespace detail {
/// Same polynomial by Hessenberg reduction directly over Q; slow on large
/// matrices, kept as a cross-check.
IntPolynomial charpoly_rational(const RationalMatrix& m);
}  // namespace detail

/// One Newton-polygon slope, i.e. the p-adic valuation of one root.
/// A root equal to zero has infinite valuation.
struct Slope {
  bool infinite = false;
  Rational value;

  std::string to_string() const;
  friend bool operator==(const Slope& a, const Slope& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend bool operator<(const Slope& a, const Slope& b) {
    if (a.infinite != b.infinite) return b.infinite;
    return !a.infinite && a.value < b.value;
  }
};

/// Multiset of root valuations at p, finite slopes ascending, then the
/// infinite ones.
std::vector<Slope> newton_slopes(const IntPolynomial& f, std::int64_t p);

/// Sturm chain of f (f, f', then negated primitive pseudo-remainders).
/// Works for non-squarefree f: the chain ends at gcd(f, f') up to scaling.
std::vector<IntPolynomial> sturm_chain(const IntPolynomial& f);

struct RealRootCount {
  int distinct_roots = 0;       // number of distinct complex roots
  int distinct_real = 0;        // distinct real roots
  int distinct_in_interval = 0; // distinct real roots in [lo, hi]
};

/// Exact root counting with a Sturm chain.
RealRootCount count_real_roots(const IntPolynomial& f, const Rational& lo,
                               const Rational& hi);

}  // namespace hmult
