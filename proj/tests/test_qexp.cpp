#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hmult/error.hpp"
#include "hmult/qseries.hpp"

using namespace hmult;

namespace {

// prod_{n>=1} (1 - q^(d n))^r * q^shift, coefficients a_1 .. a_B, by direct
// power-series multiplication
std::vector<Integer> naive_eta_product(const std::vector<std::pair<int, int>>& factors, int shift, int precision) {
  const int len = precision + 1;
  std::vector<Integer> s(static_cast<std::size_t>(len), Integer(0));
  s[0] = 1;
  for (const auto& [d, r] : factors)
    for (int rep = 0; rep < r; ++rep)
      for (int n = 1; d * n < len; ++n)
        for (int i = len - 1; i >= d * n; --i) s[static_cast<std::size_t>(i)] -= s[static_cast<std::size_t>(i - d * n)];
  std::vector<Integer> out(static_cast<std::size_t>(precision), Integer(0));
  for (int n = 1; n <= precision; ++n)
    if (n - shift >= 0) out[static_cast<std::size_t>(n - 1)] = s[static_cast<std::size_t>(n - shift)];
  return out;
}

Integer sigma(int n, int e) {
  Integer s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) s += boost::multiprecision::pow(Integer(d), static_cast<unsigned>(e));
  return s;
}

}  // namespace

TEST_CASE("Delta from the Victor-Miller basis equals eta^24") {
  const auto vm = victor_miller_basis(12, 40);
  REQUIRE(vm.size() == 1);
  const auto eta = naive_eta_product({{1, 24}}, 1, 40);
  for (int n = 1; n <= 40; ++n) CHECK(vm[0][static_cast<std::size_t>(n)] == Rational(eta[static_cast<std::size_t>(n - 1)]));
  CHECK(vm[0][2] == -24);
  CHECK(vm[0][5] == 4830);
  CHECK(eta_quotient({{1, 24}}, 1, 40) == vm[0]);
}

TEST_CASE("Victor-Miller basis shape") {
  CHECK(victor_miller_basis(10, 10).empty());
  CHECK(victor_miller_basis(2, 10).empty());
  for (int k : {12, 16, 24, 36}) {
    const auto b = victor_miller_basis(k, 30);
    const std::size_t expected = static_cast<std::size_t>(k % 12 == 2 ? k / 12 - 1 : k / 12);
    REQUIRE(b.size() == expected);
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 1; j <= b.size(); ++j) CHECK(b[i][j] == (i + 1 == j ? 1 : 0));
  }
}

TEST_CASE("Eisenstein series coefficients") {
  const auto e4 = eisenstein_series(4, 15);
  const auto e6 = eisenstein_series(6, 15);
  CHECK(e4[0] == 1);
  CHECK(e6[0] == 1);
  for (int n = 1; n < 15; ++n) {
    CHECK(e4[static_cast<std::size_t>(n)] == 240 * sigma(n, 3));
    CHECK(e6[static_cast<std::size_t>(n)] == -504 * sigma(n, 5));
  }
}

TEST_CASE("Hecke operators on q-expansions of level 1 eigenforms") {
  const QSeries delta = victor_miller_basis(12, 60)[0];
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    const QSeries tf = hecke_qexp(delta, p, 12, DirichletCharacter::trivial());
    CHECK(tf.precision() == 60 / static_cast<std::size_t>(p));
    CHECK(tf == delta[static_cast<std::size_t>(p)] * delta.truncated(tf.precision()));
  }
  CHECK_THROWS_AS(hecke_qexp(delta, 7, 12, DirichletCharacter::trivial(), 10), Error);
  // k = 24: T_2 preserves the two-dimensional space
  const auto b = victor_miller_basis(24, 40);
  const QSeries t = hecke_qexp(b[0], 2, 24, DirichletCharacter::trivial());
  const QSeries comb = t[1] * b[0].truncated(t.precision()) + t[2] * b[1].truncated(t.precision());
  CHECK(t == comb);
}

TEST_CASE("eta quotients against direct products") {
  const QSeries f = eta_quotient({{3, 8}}, 9, 40);
  CHECK(f.weight() == 4);
  CHECK(f.level() == 9);
  const auto direct = naive_eta_product({{3, 8}}, 1, 40);
  for (int n = 1; n <= 40; ++n) CHECK(f[static_cast<std::size_t>(n)] == Rational(direct[static_cast<std::size_t>(n - 1)]));
  CHECK(f[7] == 20);
  CHECK(f[4] == -8);

  const QSeries g = eta_quotient({{3, 2}, {9, 2}}, 27, 30);
  CHECK(g.weight() == 2);
  const auto gd = naive_eta_product({{3, 2}, {9, 2}}, 1, 30);
  for (int n = 1; n <= 30; ++n) CHECK(g[static_cast<std::size_t>(n)] == Rational(gd[static_cast<std::size_t>(n - 1)]));

  const QSeries e11 = eta_quotient({{1, 2}, {11, 2}}, 11, 20);
  CHECK(e11[2] == -2);
  CHECK(e11[3] == -1);
  CHECK(e11[5] == 1);

  try {
    eta_quotient({{1, 1}}, 1, 10);
    FAIL("expected NonIntegralLeadingPower");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegralLeadingPower);
  }
}

TEST_CASE("QSeries basics") {
  const QSeries f({Rational(1), Rational(-24), Rational(252)}, 12);
  CHECK(f.to_string() == "q - 24*q^2 + 252*q^3");
  CHECK_THROWS_AS(f[4], Error);
  CHECK_THROWS_AS(f[0], Error);
  CHECK((f - f).is_zero());
  CHECK(f.truncated(2) == f);
  CHECK(QSeries::zero(5).is_zero());
}

TEST_CASE("Sturm bound") {
  CHECK(sturm_bound(12, 1) == 1);
  CHECK(sturm_bound(4, 9) == 4);
  CHECK(sturm_bound(2, 27) == 6);
  CHECK(sturm_bound(4, 81) == 36);
  CHECK(sturm_bound(24, 1) == 2);
}
