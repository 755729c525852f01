#pragma once

// Weight-k modular symbols for Gamma0(N) with a trivial or quadratic
// character, presented by Manin symbols [X^j Y^(k-2-j), (c:d)].
//
// Conventions: matrices act on the right, [P, (c,d)] h = [P(aX+bY, cX+dY),
// (c,d) h] for h = (a b; c d); [P, (lc, ld)] = chi(l) [P, (c,d)]. Hecke and
// star matrices act on row vectors written in the echelon basis of the
// cuspidal subspace.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hmult/characters.hpp"
#include "hmult/matrix.hpp"

namespace hmult {

/// Which eigenspace of the star involution the space models.
enum class Sign : int { Minus = -1, Full = 0, Plus = 1 };

std::string to_string(Sign s);

/// P^1(Z/N): primitive pairs modulo units, representatives sorted
/// lexicographically.
class P1List {
 public:
  explicit P1List(std::int64_t n);

  struct Normalized {
    int index = -1;            // -1 when (u, v) is not primitive mod N
    std::int64_t scalar = 1;   // unit l with (u, v) = l * rep mod N
  };

  std::int64_t level() const { return n_; }
  std::size_t size() const { return reps_.size(); }
  const std::pair<std::int64_t, std::int64_t>& rep(std::size_t i) const { return reps_[i]; }
  Normalized normalize(std::int64_t u, std::int64_t v) const;
  /// Units l != 1 with l * rep(i) = rep(i).
  const std::vector<std::int64_t>& stabilizer(std::size_t i) const { return stabilizers_[i]; }

 private:
  std::int64_t n_;
  std::vector<std::pair<std::int64_t, std::int64_t>> reps_;
  std::vector<std::vector<std::int64_t>> stabilizers_;
  std::vector<int> index_;            // N*N table
  std::vector<std::int64_t> scalar_;  // N*N table
};

struct Mat2 {
  std::int64_t a, b, c, d;
  std::int64_t det() const { return a * d - b * c; }
};

/// {(a b; c d) : ad - bc = n, a > b >= 0, d > c >= 0}.
std::vector<Mat2> heilbronn_merel(std::int64_t n);
/// Continued-fraction family for a prime p; smaller than Merel's.
std::vector<Mat2> heilbronn_cremona(std::int64_t p);

enum class HeilbronnFamily { Automatic, Merel, Cremona };

struct SpaceProvenance {
  std::int64_t level = 0;
  int weight = 0;
  std::string character;
  Sign sign = Sign::Plus;
  std::string basis_fingerprint;
};

struct HeckeMatrix {
  std::int64_t index = 0;
  RationalMatrix matrix;
  SpaceProvenance provenance;
};

class ManinSymbolSpace {
 public:
  std::int64_t level() const { return level_; }
  int weight() const { return weight_; }
  const DirichletCharacter& character() const { return chi_; }
  Sign sign() const { return sign_; }

  /// (k - 1) * #P^1(Z/N).
  std::size_t generator_count() const { return gen_free_.size(); }
  /// Generators left after the two-term (and star) relations.
  std::size_t free_generator_count() const { return free_gens_.size(); }
  /// Dimension of the full modular-symbol quotient of this sign.
  Index dimension() const { return static_cast<Index>(quotient_gens_.size()); }
  Index cuspidal_dimension() const { return cuspidal_.reduced.rows(); }

  /// Rows span the cuspidal subspace, in quotient coordinates (echelon form).
  const EchelonForm& cuspidal_basis() const { return cuspidal_; }
  /// Rows indexed by quotient basis, columns by cusp classes.
  const RationalMatrix& boundary_matrix() const { return boundary_; }
  std::size_t cusp_class_count() const { return static_cast<std::size_t>(boundary_.cols()); }

  const std::string& fingerprint() const { return fingerprint_; }
  SpaceProvenance provenance() const;
  const P1List& p1() const { return *p1_; }

  /// Quotient coordinates of the Manin symbol with generator index g.
  RationalRow symbol_coordinates(std::size_t g) const;
  /// Sum over `mats` of the images of the quotient basis vectors `which`,
  /// in quotient coordinates.
  RationalMatrix apply_matrices(const std::vector<Mat2>& mats, const std::vector<Index>& which) const;
  /// T_n on the whole quotient (rows are images of quotient basis vectors).
  RationalMatrix hecke_on_quotient(std::int64_t n, HeilbronnFamily family) const;
  /// Star involution on the whole quotient.
  RationalMatrix star_on_quotient() const;
  /// Restrict a quotient operator that preserves the cuspidal subspace.
  RationalMatrix restrict_to_cuspidal(const RationalMatrix& op_on_quotient) const;

  friend ManinSymbolSpace build_space(std::int64_t level, int weight,
                                      const DirichletCharacter& chi, Sign sign);

 private:
  ManinSymbolSpace() = default;

  std::int64_t level_ = 1;
  int weight_ = 2;
  DirichletCharacter chi_ = DirichletCharacter::trivial();
  Sign sign_ = Sign::Plus;
  std::shared_ptr<const P1List> p1_;

  std::vector<int> gen_free_;          // generator -> free index, -1 if zero
  std::vector<std::int8_t> gen_sign_;  // generator = sign * free generator
  std::vector<std::size_t> free_gens_; // free index -> generator

  // free generator -> quotient coordinates, as integer numerators over
  // quotient_denominator_.
  std::vector<std::vector<std::pair<int, Integer>>> free_to_quotient_;
  Integer quotient_denominator_{1};
  std::vector<std::size_t> quotient_gens_;  // quotient basis -> generator

  RationalMatrix boundary_;
  EchelonForm cuspidal_;
  std::string fingerprint_;
};

/// Throws ParityMismatch when chi(-1) != (-1)^k, UnsupportedWeight when
/// k < 2, CharacterLevelMismatch when cond(chi) does not divide N.
ManinSymbolSpace build_space(std::int64_t level, int weight, const DirichletCharacter& chi,
                             Sign sign = Sign::Plus);

/// T_n on the cuspidal subspace. Primes q | N are accepted (U_q-type action)
/// without further guarantees.
HeckeMatrix hecke_matrix(const ManinSymbolSpace& space, std::int64_t n,
                         HeilbronnFamily family = HeilbronnFamily::Automatic);

/// Star involution on the cuspidal subspace; +-identity on a signed space.
RationalMatrix star_matrix(const ManinSymbolSpace& space);

/// dim S_k(Gamma0(N), chi) from the closed-form (Cohen-Oesterle) formula,
/// independent of modular symbols. Throws ParityMismatch.
std::int64_t dim_cusp(std::int64_t level, int weight, const DirichletCharacter& chi);

}  // namespace hmult
