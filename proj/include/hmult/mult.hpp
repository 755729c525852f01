#pragma once

// Multiplicity of an eigenvalue of T_p on S_k(N, chi), full and new, with a
// shared store of Hecke matrices (memory plus optional disk cache).

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hmult/characters.hpp"
#include "hmult/modsym.hpp"
#include "hmult/polynomial.hpp"

namespace hmult {

/// Bumped whenever the cache file layout or the matrix conventions change.
inline constexpr int kCacheSchemaVersion = 1;

struct StoreCounters {
  std::uint64_t spaces_built = 0;
  std::uint64_t matrices_computed = 0;
  std::uint64_t memory_hits = 0;
  std::uint64_t disk_hits = 0;
  std::uint64_t disk_writes = 0;
};

/// Thread-safe. Each (N, k, chi, sign) space and each Hecke matrix is
/// computed at most once per store; with a cache directory, matrices are
/// also persisted and reused across runs.
class HeckeStore {
 public:
  explicit HeckeStore(std::optional<std::filesystem::path> cache_dir = std::nullopt);

  std::shared_ptr<const ManinSymbolSpace> space(std::int64_t level, int weight, const DirichletCharacter& chi,
                                                Sign sign = Sign::Plus);
  std::shared_ptr<const HeckeMatrix> hecke(std::int64_t level, int weight, const DirichletCharacter& chi,
                                           std::int64_t q, Sign sign = Sign::Plus);

  /// "v1_N9_k4_trivial_plus_q2"
  static std::string cache_key(std::int64_t level, int weight, const DirichletCharacter& chi, Sign sign,
                               std::int64_t q);

  StoreCounters counters() const;
  const std::optional<std::filesystem::path>& cache_dir() const { return cache_dir_; }

 private:
  std::optional<HeckeMatrix> load(const std::string& key) const;
  void save(const std::string& key, const HeckeMatrix& m);

  std::optional<std::filesystem::path> cache_dir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_future<std::shared_ptr<const ManinSymbolSpace>>> spaces_;
  std::map<std::string, std::shared_future<std::shared_ptr<const HeckeMatrix>>> matrices_;
  std::atomic<std::uint64_t> spaces_built_{0}, matrices_computed_{0}, memory_hits_{0}, disk_hits_{0},
      disk_writes_{0};
};

/// Throws NotPrime, UnsupportedWeight, PDividesLevel, ParityMismatch or
/// CharacterLevelMismatch.
void check_multiplicity_query(std::int64_t p, int k, const DirichletCharacter& chi, std::int64_t level);

/// Levels M with cond(chi) | M | N, ascending.
std::vector<std::int64_t> character_levels(std::int64_t level, const DirichletCharacter& chi);

/// Dirichlet inverse of the divisor-count function: beta(q) = -2,
/// beta(q^2) = 1, beta(q^e) = 0 for e >= 3.
std::int64_t divisor_count_inverse(std::int64_t n);

Index dimension_full(HeckeStore& store, std::int64_t p, int k, const DirichletCharacter& chi, std::int64_t level);
Index dimension_new(HeckeStore& store, std::int64_t p, int k, const DirichletCharacter& chi, std::int64_t level);

/// Nullity of T_p - lambda on the cuspidal-plus space.
Index multiplicity_full(HeckeStore& store, std::int64_t p, const Rational& lambda, int k,
                        const DirichletCharacter& chi, std::int64_t level);
/// sum over M of beta(N / M) * multiplicity_full(M).
Index multiplicity_new(HeckeStore& store, std::int64_t p, const Rational& lambda, int k,
                       const DirichletCharacter& chi, std::int64_t level);
/// Newton slopes at p of charpoly(T_p).
std::vector<Slope> slope_profile(HeckeStore& store, std::int64_t p, int k, const DirichletCharacter& chi,
                                 std::int64_t level);

struct MultiplicityReport {
  std::int64_t p = 0;
  Rational lambda;
  int k = 0;
  std::int64_t level = 0;
  std::string character;
  Index dim_full = 0;
  Index dim_new = 0;
  Index m_full = 0;
  Index m_new = 0;
  std::vector<Slope> slopes;
  std::vector<std::string> provenance;  // cache keys of the matrices used
};

MultiplicityReport multiplicity_report(HeckeStore& store, std::int64_t p, const Rational& lambda, int k,
                                       const DirichletCharacter& chi, std::int64_t level);

/// Every root of f (the charpoly of T_q, q not dividing N) has absolute
/// value at most 2 q^((k-1)/2), up to radius - 2 q^((k-1)/2) <= 1e-7.
/// When chi(q) = -1 the roots must lie on the imaginary axis instead.
struct DeligneCheck {
  std::int64_t q = 0;
  int degree = 0;
  int distinct_roots = 0;
  int roots_in_range = 0;
  Rational radius;
  bool holds = false;
};

DeligneCheck deligne_check(const IntPolynomial& f, std::int64_t q, int k, int chi_q);

}  // namespace hmult
