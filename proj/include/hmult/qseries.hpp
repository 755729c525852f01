#pragma once

// Truncated q-expansions of cusp forms, a_1 .. a_B (a_0 is not stored).

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hmult/characters.hpp"
#include "hmult/rational.hpp"

namespace hmult {

class QSeries {
 public:
  QSeries() = default;
  /// coefficients[i] is a_{i+1}.
  QSeries(std::vector<Rational> coefficients, int weight = 0, std::int64_t level = 1,
          std::string character = "trivial");
  static QSeries zero(std::size_t precision, int weight = 0, std::int64_t level = 1,
                      std::string character = "trivial");

  std::size_t precision() const { return coeffs_.size(); }
  /// a_n for 1 <= n <= precision; throws InsufficientPrecision beyond that.
  const Rational& operator[](std::size_t n) const;
  Rational& operator[](std::size_t n);
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  int weight() const { return weight_; }
  std::int64_t level() const { return level_; }
  const std::string& character() const { return character_; }

  /// First `precision` coefficients; throws if fewer are available.
  QSeries truncated(std::size_t precision) const;
  bool is_zero() const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const Rational& c, const QSeries& f);
  /// Equal coefficients on the common precision; tags are ignored.
  friend bool operator==(const QSeries& a, const QSeries& b);

  /// "q - 24*q^2 + 252*q^3"
  std::string to_string() const;

 private:
  std::vector<Rational> coeffs_;
  int weight_ = 0;
  std::int64_t level_ = 1;
  std::string character_ = "trivial";
};

/// b_n = a_{np} + p^(k-1) chi(p) a_{n/p}, n = 1 .. out_precision.
/// Throws InsufficientPrecision when p * out_precision > f.precision().
QSeries hecke_qexp(const QSeries& f, std::int64_t p, int k, const DirichletCharacter& chi,
                   std::size_t out_precision);
/// Same with the largest output precision f allows, floor(B / p).
QSeries hecke_qexp(const QSeries& f, std::int64_t p, int k, const DirichletCharacter& chi);

/// Echelon basis of S_k(1) to precision B from Delta^i * E4^a * E6^b.
std::vector<QSeries> victor_miller_basis(int k, std::size_t precision);

/// Power series with constant term, c[0] + c[1] q + ... (used for E4, E6).
std::vector<Integer> eisenstein_series(int k, std::size_t precision);

struct EtaFactor {
  std::int64_t d;
  int r;
};

/// q^(sum d r / 24) prod (1 - q^(d n))^r to precision B.
QSeries eta_quotient(const std::vector<EtaFactor>& spec, std::int64_t level, std::size_t precision);

/// floor(k * mu(N) / 12).
std::int64_t sturm_bound(int k, std::int64_t level);

}  // namespace hmult
