#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hmult/error.hpp"
#include "hmult/modsym.hpp"
#include "hmult/mult.hpp"
#include "hmult/polynomial.hpp"
#include "hmult/report.hpp"

using namespace hmult;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvariantViolation;
}

std::int64_t tau(std::int64_t n) { return static_cast<std::int64_t>(divisors(n).size()); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("query preconditions") {
  const auto triv = DirichletCharacter::trivial();
  CHECK(kind_of([&] { check_multiplicity_query(3, 4, triv, 9); }) == ErrorKind::PDividesLevel);
  CHECK(kind_of([&] { check_multiplicity_query(4, 4, triv, 9); }) == ErrorKind::NotPrime);
  CHECK(kind_of([&] { check_multiplicity_query(2, 3, triv, 9); }) == ErrorKind::ParityMismatch);
  CHECK(kind_of([&] { check_multiplicity_query(2, 1, triv, 9); }) == ErrorKind::UnsupportedWeight);
  CHECK(kind_of([&] { check_multiplicity_query(5, 3, DirichletCharacter::kronecker(-4), 6); }) ==
        ErrorKind::CharacterLevelMismatch);
  CHECK_NOTHROW(check_multiplicity_query(2, 4, triv, 9));
}

TEST_CASE("divisor-count inverse") {
  CHECK(divisor_count_inverse(1) == 1);
  CHECK(divisor_count_inverse(3) == -2);
  CHECK(divisor_count_inverse(9) == 1);
  CHECK(divisor_count_inverse(27) == 0);
  CHECK(divisor_count_inverse(6) == 4);
  // Dirichlet convolution with tau is the identity
  for (std::int64_t n = 1; n <= 200; ++n) {
    std::int64_t s = 0;
    for (std::int64_t d : divisors(n)) s += divisor_count_inverse(d) * tau(n / d);
    CHECK(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("character levels") {
  CHECK(character_levels(12, DirichletCharacter::trivial()) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(character_levels(12, DirichletCharacter::kronecker(-3)) == std::vector<std::int64_t>{3, 6, 12});
}

TEST_CASE("multiplicity examples") {
  HeckeStore store;
  const auto triv = DirichletCharacter::trivial();
  CHECK(multiplicity_full(store, 2, Rational(0), 4, triv, 9) == 1);
  CHECK(multiplicity_new(store, 2, Rational(0), 4, triv, 9) == 1);
  CHECK(multiplicity_full(store, 5, Rational(0), 12, triv, 1) == 0);
  CHECK(multiplicity_full(store, 5, Rational(4830), 12, triv, 1) == 1);
  CHECK(multiplicity_full(store, 2, Rational(-2), 2, triv, 11) == 1);
  CHECK(multiplicity_full(store, 5, Rational(0), 2, triv, 27) == 1);
  CHECK(multiplicity_new(store, 5, Rational(0), 2, triv, 27) == 1);
  CHECK(multiplicity_full(store, 3, Rational(1, 2), 2, triv, 11) == 0);
  // 11 has one newform; at level 22 and 33 it contributes two oldforms
  CHECK(dimension_full(store, 3, 2, triv, 22) == 2);
  CHECK(dimension_new(store, 3, 2, triv, 22) == 0);
  CHECK(multiplicity_full(store, 3, Rational(-1), 2, triv, 22) == 2);
  CHECK(multiplicity_new(store, 3, Rational(-1), 2, triv, 22) == 0);
}

TEST_CASE("slope profile") {
  HeckeStore store;
  const auto triv = DirichletCharacter::trivial();
  const auto slopes = slope_profile(store, 2, 4, triv, 9);
  REQUIRE(slopes.size() == 1);
  CHECK(slopes[0].infinite);
  // tau(2) = -24 = -2^3 * 3
  const auto s12 = slope_profile(store, 2, 12, triv, 1);
  REQUIRE(s12.size() == 1);
  CHECK(s12[0].to_string() == "3");
}

TEST_CASE("divisor consistency of dimensions and multiplicities") {
  HeckeStore store;
  for (std::int64_t n : {12, 18, 22, 27, 30})
    for (int k : {2, 4}) {
      for (std::int64_t d : {1, -3}) {
        const auto chi = d == 1 ? DirichletCharacter::trivial() : DirichletCharacter::kronecker(d);
        if (n % (d == 1 ? 1 : 3) != 0 || !parity_matches(chi, k)) continue;
        const std::int64_t p = n % 5 == 0 ? 7 : 5;
        CAPTURE(n);
        CAPTURE(k);
        Index dim_sum = 0, m_sum = 0;
        for (std::int64_t m : character_levels(n, chi)) {
          dim_sum += tau(n / m) * dimension_new(store, p, k, chi, m);
          m_sum += tau(n / m) * multiplicity_new(store, p, Rational(0), k, chi, m);
          CHECK(dimension_new(store, p, k, chi, m) >= 0);
        }
        CHECK(dim_sum == dimension_full(store, p, k, chi, n));
        CHECK(m_sum == multiplicity_full(store, p, Rational(0), k, chi, n));
        CHECK(dimension_full(store, p, k, chi, n) == dim_cusp(n, k, chi));
      }
    }
}

TEST_CASE("Deligne bound") {
  HeckeStore store;
  const auto triv = DirichletCharacter::trivial();
  for (std::int64_t q : {2, 3, 5, 7}) {
    const IntPolynomial f = charpoly(store.hecke(1, 24, triv, q)->matrix);
    const DeligneCheck d = deligne_check(f, q, 24, 1);
    CHECK(d.holds);
    CHECK(d.roots_in_range == d.distinct_roots);
  }
  // x - 100 violates the bound at q = 2, k = 2
  CHECK(!deligne_check(IntPolynomial{-100, 1}, 2, 2, 1).holds);
  // chi(q) = -1: roots on the imaginary axis
  CHECK(deligne_check(IntPolynomial{9, 0, 1}, 2, 3, -1).holds);
  CHECK(!deligne_check(IntPolynomial{-1, 0, 1}, 2, 3, -1).holds);
  const auto s = build_space(7, 3, DirichletCharacter::kronecker(-7));
  CHECK(deligne_check(charpoly(hecke_matrix(s, 3).matrix), 3, 3, -1).holds);
}

TEST_CASE("store memoizes and the disk cache round-trips") {
  const auto dir = std::filesystem::temp_directory_path() / "hmult_test_cache";
  std::filesystem::remove_all(dir);
  const auto triv = DirichletCharacter::trivial();
  std::string first_body;
  {
    HeckeStore store(dir);
    const auto a = store.hecke(27, 4, triv, 2);
    const auto b = store.hecke(27, 4, triv, 2);
    CHECK(a.get() == b.get());
    CHECK(store.counters().matrices_computed == 1);
    CHECK(store.counters().memory_hits >= 1);
    CHECK(store.counters().disk_writes == 1);
    first_body = mult_report(store, 5, Rational(0), 4, triv, 27).dump();
  }
  const std::string file = HeckeStore::cache_key(27, 4, triv, Sign::Plus, 2) + ".json";
  CHECK(file == "v1_N27_k4_trivial_plus_q2.json");
  REQUIRE(std::filesystem::exists(dir / file));
  const std::string bytes = slurp(dir / file);
  {
    HeckeStore store(dir);
    const auto a = store.hecke(27, 4, triv, 2);
    CHECK(store.counters().matrices_computed == 0);
    CHECK(store.counters().spaces_built == 0);
    CHECK(store.counters().disk_hits == 1);
    CHECK(a->matrix == hecke_matrix(build_space(27, 4, triv), 2).matrix);
    CHECK(mult_report(store, 5, Rational(0), 4, triv, 27).dump() == first_body);
    CHECK(store.counters().matrices_computed == 0);
  }
  CHECK(slurp(dir / file) == bytes);
  {
    HeckeStore store;
    CHECK(mult_report(store, 5, Rational(0), 4, triv, 27).dump() == first_body);
  }
  std::filesystem::remove_all(dir);
}
