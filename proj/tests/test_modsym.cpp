#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hmult/error.hpp"
#include "hmult/modsym.hpp"
#include "hmult/polynomial.hpp"
#include "hmult/qseries.hpp"

using namespace hmult;

namespace {

struct Case {
  std::int64_t level;
  int k;
  const char* chi;
};

const std::vector<Case> kSpaces{{11, 2, "trivial"},   {23, 2, "trivial"}, {27, 2, "trivial"},
                                {9, 4, "trivial"},    {13, 4, "trivial"}, {7, 3, "kronecker:-7"},
                                {12, 3, "kronecker:-3"}, {20, 2, "trivial"}, {8, 6, "kronecker:8"},
                                {1, 24, "trivial"},   {15, 4, "kronecker:5"}};

ManinSymbolSpace space(const Case& c, Sign s = Sign::Plus) {
  return build_space(c.level, c.k, DirichletCharacter::parse(c.chi), s);
}

std::vector<std::int64_t> good_primes(std::int64_t level, std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t q : primes_up_to(bound))
    if (level % q != 0) out.push_back(q);
  return out;
}

// A one-dimensional eigenform space: T_q is the scalar a_q of the given series.
void check_scalar_against(const ManinSymbolSpace& s, const QSeries& f, std::int64_t bound) {
  REQUIRE(s.cuspidal_dimension() == 1);
  for (std::int64_t q : primes_up_to(bound)) {
    if (s.level() % q == 0) continue;
    const HeckeMatrix t = hecke_matrix(s, q);
    CHECK(t.matrix(0, 0) == f[static_cast<std::size_t>(q)]);
  }
}

}  // namespace

TEST_CASE("P1 list") {
  for (std::int64_t n : {1, 2, 9, 12, 27, 30}) {
    const P1List p1(n);
    CHECK(static_cast<std::int64_t>(p1.size()) == gamma0_index(n));
    for (std::size_t i = 0; i < p1.size(); ++i) {
      const auto [u, v] = p1.rep(i);
      const auto norm = p1.normalize(u, v);
      CHECK(norm.index == static_cast<int>(i));
      CHECK(mod(norm.scalar, n) == 1 % n);
      // any unit multiple normalizes back with that unit as scalar
      for (std::int64_t l = 1; l < n; ++l) {
        if (gcd(l, n) != 1) continue;
        const auto m = p1.normalize(l * u % n, l * v % n);
        CHECK(m.index == static_cast<int>(i));
        CHECK(p1.rep(i).first * m.scalar % n == mod(l * u, n));
      }
    }
  }
  CHECK(P1List(12).normalize(2, 4).index == -1);
}

TEST_CASE("Heilbronn matrices") {
  for (std::int64_t n : {2, 3, 4, 6, 7, 12}) {
    const auto m = heilbronn_merel(n);
    CHECK(!m.empty());
    for (const auto& h : m) {
      CHECK(h.det() == n);
      CHECK(h.a > h.b);
      CHECK(h.b >= 0);
      CHECK(h.d > h.c);
      CHECK(h.c >= 0);
    }
  }
  for (std::int64_t p : {2, 3, 5, 7, 11})
    for (const auto& h : heilbronn_cremona(p)) CHECK(h.det() == p);
}

TEST_CASE("eigenvalues agree with eta-product q-expansions") {
  check_scalar_against(build_space(11, 2, DirichletCharacter::trivial()), eta_quotient({{1, 2}, {11, 2}}, 11, 40), 37);
  check_scalar_against(build_space(27, 2, DirichletCharacter::trivial()), eta_quotient({{3, 2}, {9, 2}}, 27, 40), 37);
  check_scalar_against(build_space(9, 4, DirichletCharacter::trivial()), eta_quotient({{3, 8}}, 9, 40), 37);
  check_scalar_against(build_space(7, 3, DirichletCharacter::kronecker(-7)), eta_quotient({{1, 3}, {7, 3}}, 7, 40),
                       37);
  check_scalar_against(build_space(1, 12, DirichletCharacter::trivial()), victor_miller_basis(12, 40)[0], 37);
}

TEST_CASE("known characteristic polynomials") {
  const auto s23 = build_space(23, 2, DirichletCharacter::trivial());
  CHECK(charpoly(hecke_matrix(s23, 2).matrix) == IntPolynomial{-1, 1, 1});
  const auto s1 = build_space(1, 24, DirichletCharacter::trivial());
  CHECK(charpoly(hecke_matrix(s1, 2).matrix) == IntPolynomial{-20468736L, -1080, 1});
  CHECK(build_space(3, 3, DirichletCharacter::kronecker(-3)).cuspidal_dimension() == 0);
}

TEST_CASE("Merel and Cremona Heilbronn sets give the same operator") {
  for (const auto& c : kSpaces) {
    const auto s = space(c);
    for (std::int64_t q : {2, 3, 5, 7}) {
      if (c.level % q == 0) continue;
      CHECK(hecke_matrix(s, q, HeilbronnFamily::Merel).matrix == hecke_matrix(s, q, HeilbronnFamily::Cremona).matrix);
    }
  }
}

TEST_CASE("Hecke algebra relations") {
  for (const auto& c : kSpaces) {
    CAPTURE(c.level);
    CAPTURE(c.k);
    const auto s = space(c);
    const auto chi = s.character();
    const auto qs = good_primes(c.level, 13);
    std::vector<RationalMatrix> t;
    for (std::int64_t q : qs) t.push_back(hecke_matrix(s, q).matrix);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j) CHECK(multiply(t[i], t[j]) == multiply(t[j], t[i]));
    for (std::size_t i = 0; i < t.size(); ++i) {
      // semisimple away from the level
      CHECK(rank(t[i]) == rank(multiply(t[i], t[i])));
    }
    // T_{q^2} = T_q^2 - chi(q) q^(k-1)
    const std::int64_t q = qs.front();
    const Rational scale = Rational(chi(q)) * Rational(boost::multiprecision::pow(Integer(q), static_cast<unsigned>(c.k - 1)));
    const RationalMatrix expected = multiply(t[0], t[0]) - scale * identity(t[0].rows());
    CHECK(hecke_matrix(s, q * q).matrix == expected);
    // multiplicativity for coprime indices
    if (qs.size() >= 2) CHECK(hecke_matrix(s, qs[0] * qs[1]).matrix == multiply(t[0], t[1]));
  }
}

TEST_CASE("star involution on the full space") {
  for (const auto& c : kSpaces) {
    CAPTURE(c.level);
    const auto full = space(c, Sign::Full);
    const auto plus = space(c, Sign::Plus);
    const auto minus = space(c, Sign::Minus);
    const RationalMatrix star = star_matrix(full);
    const Index n = star.rows();
    CHECK(multiply(star, star) == identity(n));
    CHECK(plus.cuspidal_dimension() + minus.cuspidal_dimension() == full.cuspidal_dimension());
    CHECK(plus.cuspidal_dimension() == minus.cuspidal_dimension());
    CHECK(nullity(star - identity(n)) == plus.cuspidal_dimension());
    for (std::int64_t q : good_primes(c.level, 7)) {
      const RationalMatrix t = hecke_matrix(full, q).matrix;
      CHECK(multiply(star, t) == multiply(t, star));
      // plus and minus quotients carry the same Hecke module
      const RationalMatrix tp = hecke_matrix(plus, q).matrix, tm = hecke_matrix(minus, q).matrix;
      CHECK(charpoly(tp) == charpoly(tm));
      CHECK(nullity(tp) == nullity(tm));
    }
    CHECK(star_matrix(plus) == identity(plus.cuspidal_dimension()));
    CHECK(star_matrix(minus) == RationalMatrix(-identity(minus.cuspidal_dimension())));
  }
}

TEST_CASE("dimension formula examples") {
  const auto triv = DirichletCharacter::trivial();
  CHECK(dim_cusp(1, 12, triv) == 1);
  CHECK(dim_cusp(1, 10, triv) == 0);
  CHECK(dim_cusp(1, 24, triv) == 2);
  CHECK(dim_cusp(11, 2, triv) == 1);
  CHECK(dim_cusp(23, 2, triv) == 2);
  CHECK(dim_cusp(9, 4, triv) == 1);
  CHECK(dim_cusp(27, 2, triv) == 1);
  CHECK(dim_cusp(30, 24, triv) == 134);
  CHECK(dim_cusp(7, 3, DirichletCharacter::kronecker(-7)) == 1);
  CHECK(dim_cusp(3, 3, DirichletCharacter::kronecker(-3)) == 0);
  CHECK_THROWS_AS(dim_cusp(5, 3, triv), Error);
}

TEST_CASE("dimension formula agrees with modular symbols on a small grid") {
  for (std::int64_t n = 1; n <= 16; ++n)
    for (int k = 2; k <= 8; ++k)
      for (std::int64_t d : {1, -3, -4, 5, -7, 8, -8, 12}) {
        if (n % std::abs(d) != 0) continue;
        const auto chi = d == 1 ? DirichletCharacter::trivial() : DirichletCharacter::kronecker(d);
        if (!parity_matches(chi, k)) continue;
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(d);
        CHECK(build_space(n, k, chi).cuspidal_dimension() == dim_cusp(n, k, chi));
      }
}

TEST_CASE("preconditions and provenance") {
  CHECK_THROWS_AS(build_space(11, 3, DirichletCharacter::trivial()), Error);
  CHECK_THROWS_AS(build_space(11, 1, DirichletCharacter::trivial()), Error);
  CHECK_THROWS_AS(build_space(6, 3, DirichletCharacter::kronecker(-4)), Error);
  const auto a = build_space(27, 4, DirichletCharacter::trivial());
  const auto b = build_space(27, 4, DirichletCharacter::trivial());
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != build_space(27, 4, DirichletCharacter::trivial(), Sign::Minus).fingerprint());
  const HeckeMatrix t = hecke_matrix(a, 2);
  CHECK(t.index == 2);
  CHECK(t.provenance.level == 27);
  CHECK(t.provenance.weight == 4);
  CHECK(t.provenance.basis_fingerprint == a.fingerprint());
}
