#pragma once

// CM forms: q-expansions from Hecke characters of imaginary quadratic
// fields of class number one, and CM counts in ker T_p via joint kernels of
// T_q at inert primes q.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hmult/characters.hpp"
#include "hmult/mult.hpp"
#include "hmult/qseries.hpp"

namespace hmult {

/// x + y * omega in the maximal order Z[omega] of Q(sqrt D), where
/// omega = (1 + sqrt D) / 2 for D = 1 mod 4 and sqrt(D / 4) otherwise.
struct OElement {
  Integer x{0};
  Integer y{0};
  friend bool operator==(const OElement& a, const OElement& b) { return a.x == b.x && a.y == b.y; }
};

class QuadraticOrder {
 public:
  explicit QuadraticOrder(std::int64_t d);

  std::int64_t discriminant() const { return d_; }
  OElement mul(const OElement& a, const OElement& b) const;
  OElement pow(OElement a, int e) const;
  OElement conj(const OElement& a) const;
  Integer norm(const OElement& a) const;
  OElement sqrt_d() const;
  /// Roots of unity in the order.
  const std::vector<OElement>& units() const { return units_; }

 private:
  std::int64_t d_;
  std::int64_t trace_;  // omega^2 = trace * omega - norm
  std::int64_t norm_;
  std::vector<OElement> units_;
};

/// xi((alpha)) = alpha^w eps(alpha) on ideals prime to m.
struct HeckeCharacterSpec {
  std::int64_t discriminant = -3;
  OElement conductor{Integer(1), Integer(0)};
  int weight = 1;
  /// Values of eps on generators of (O/m)^*, each a root of unity of O.
  /// Empty means eps is forced by unit consistency eps(u) = u^(-w).
  std::vector<std::pair<OElement, OElement>> epsilon;
  /// The conductor must be prime to D unless this is set.
  bool allow_conductor_dividing_discriminant = false;
};

/// D with h(D) = 1: -3, -4, -7, -8, -11, -19, -43, -67, -163.
bool has_class_number_one(std::int64_t d);

/// a_n = sum over alpha prime to m with Nr(alpha) = n of alpha^w eps(alpha),
/// divided by the number of units. Throws ClassNumberNotOne,
/// UnitInconsistency, NonRationalCoefficient, InvalidArgument.
QSeries cm_qexp(const HeckeCharacterSpec& xi, std::size_t precision);

/// Fundamental D < 0 with |D| dividing N, sorted by |D|.
std::vector<FundamentalDiscriminant> cm_discriminants(std::int64_t level);

/// Rows span the intersection of ker T_q over primes q <= sturm_bound(k,
/// M D^2) inert in Q(sqrt D), q not dividing p N, on the cuspidal-plus
/// space of level M; reduced echelon form.
RationalMatrix cm_joint_kernel(HeckeStore& store, FundamentalDiscriminant d, std::int64_t p, int k,
                               const DirichletCharacter& chi, std::int64_t level_m, std::int64_t level_n);

struct CMCountReport {
  std::int64_t p = 0;
  int k = 0;
  std::int64_t level = 0;
  std::string character;
  std::vector<std::pair<std::int64_t, Index>> per_discriminant;  // D -> newform count
  Index total = 0;
  Index m_new_zero = 0;
};

/// Newform counts of CM forms with a_p = 0, per discriminant with p inert.
/// Asserts total <= m_new(0) and that kernels for distinct D are disjoint.
CMCountReport multiplicity_cm(HeckeStore& store, std::int64_t p, int k, const DirichletCharacter& chi,
                              std::int64_t level);

struct ConjectureRow {
  int k = 0;
  Index m_new_zero = 0;
  Index m_cm = 0;
  bool equal = false;
};

std::vector<ConjectureRow> verify_conjecture(HeckeStore& store, std::int64_t p, const DirichletCharacter& chi,
                                             std::int64_t level, const std::vector<int>& weights);

}  // namespace hmult
