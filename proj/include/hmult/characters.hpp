#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hmult {

/// Kronecker symbol (D | n), fully multiplicative in n.
int kronecker(std::int64_t d, std::int64_t n);

bool is_fundamental_discriminant(std::int64_t d);

/// Negative fundamental discriminant of an imaginary quadratic field.
class FundamentalDiscriminant {
 public:
  /// Accepts a fundamental discriminant D < 0 as is.
  explicit FundamentalDiscriminant(std::int64_t d);
  /// Normalises a negative squarefree D to disc(Q(sqrt D)).
  static FundamentalDiscriminant from_squarefree(std::int64_t d);

  std::int64_t value() const { return d_; }
  friend bool operator==(FundamentalDiscriminant a, FundamentalDiscriminant b) { return a.d_ == b.d_; }

 private:
  std::int64_t d_;
};

/// q inert in Q(sqrt D). Throws RamifiedPrime when q | D.
bool is_inert(FundamentalDiscriminant d, std::int64_t q);

/// Trivial or quadratic (Kronecker) Dirichlet character, as a value table on
/// Z/modulus.
class DirichletCharacter {
 public:
  static DirichletCharacter trivial(std::int64_t modulus = 1);
  /// chi_D = (D | .) for a fundamental discriminant D (either sign). The
  /// modulus defaults to |D| and must be a multiple of it.
  static DirichletCharacter kronecker(std::int64_t d, std::optional<std::int64_t> modulus = {});
  /// "trivial", "kronecker:-3", optionally followed by ",mod:N".
  static DirichletCharacter parse(std::string_view spec);

  std::int64_t modulus() const { return modulus_; }
  std::int64_t conductor() const;
  /// D for a Kronecker character, nothing for the trivial one.
  std::optional<std::int64_t> discriminant() const { return discriminant_; }
  bool is_trivial() const { return !discriminant_.has_value(); }

  int operator()(std::int64_t n) const;
  int parity() const { return parity_; }

  /// Same character induced to a multiple of the modulus.
  DirichletCharacter lift(std::int64_t modulus) const;
  /// Canonical spec string; ",mod:N" only when N differs from the default.
  std::string spec() const;
  /// Spec string without the modulus, e.g. for cache keys across levels.
  std::string base_spec() const;

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus_ == b.modulus_ && a.discriminant_ == b.discriminant_;
  }

 private:
  DirichletCharacter(std::int64_t modulus, std::optional<std::int64_t> d);

  std::int64_t modulus_;
  std::optional<std::int64_t> discriminant_;
  std::vector<std::int8_t> table_;
  int parity_;
};

/// chi(-1) = (-1)^k is required for a nonzero space.
inline bool parity_matches(const DirichletCharacter& chi, int k) {
  return chi.parity() == (k % 2 == 0 ? 1 : -1);
}

}  // namespace hmult
