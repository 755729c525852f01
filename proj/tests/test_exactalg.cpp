#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hmult/error.hpp"
#include "hmult/matrix.hpp"
#include "hmult/polynomial.hpp"
#include "hmult/rational.hpp"

using namespace hmult;

namespace {

RationalMatrix mat(Index r, Index c, std::initializer_list<long> v) {
  RationalMatrix m(r, c);
  auto it = v.begin();
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = Rational(*it++);
  return m;
}

RationalMatrix random_matrix(std::mt19937& rng, Index n, bool fractions) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  RationalMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = fractions ? Rational(num(rng), den(rng)) : Rational(num(rng));
  return m;
}

// det by cofactor expansion, small sizes only
Rational det(const RationalMatrix& m) {
  const Index n = m.rows();
  if (n == 1) return m(0, 0);
  Rational out = 0;
  for (Index j = 0; j < n; ++j) {
    RationalMatrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    const Rational term = m(0, j) * det(minor);
    out += (j % 2 == 0) ? term : Rational(-term);
  }
  return out;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("17") == Rational(17));
  CHECK(to_string(Rational(Integer(4), Integer(-6))) == "-2/3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("rank and nullspace on hand examples") {
  const RationalMatrix a = mat(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(rank(a) == 2);
  const RationalMatrix ns = nullspace(a);
  REQUIRE(ns.rows() == 1);
  CHECK(ns(0, 0) == 1);
  CHECK(ns(0, 1) == -2);
  CHECK(ns(0, 2) == 1);
  CHECK(rank(identity(4)) == 4);
  CHECK(nullity(RationalMatrix::Zero(2, 5)) == 5);
  const RationalMatrix b = mat(2, 4, {0, 2, 4, 6, 0, 1, 2, 3});
  CHECK(rank(b) == 1);
  const RationalMatrix nb = nullspace(b);
  CHECK(nb.rows() == 3);
  CHECK(multiply(b, RationalMatrix(nb.transpose())).isZero());
}

TEST_CASE("rref is reduced and spans the row space") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix m = random_matrix(rng, 5, true);
    m.row(4) = m.row(0) + Rational(2, 3) * m.row(1);
    const EchelonForm e = rref(m);
    CHECK(e.pivots.size() == static_cast<std::size_t>(rank(m)));
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      for (std::size_t h = 0; h < e.pivots.size(); ++h)
        CHECK(e.reduced(static_cast<Index>(h), e.pivots[i]) == (h == i ? 1 : 0));
    // original rows are combinations of the echelon rows
    CHECK_NOTHROW(coordinates_in_echelon_basis(m, e));
  }
}

TEST_CASE("multiply agrees with Eigen's product") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const RationalMatrix a = random_matrix(rng, 4, true), b = random_matrix(rng, 4, true);
    const RationalMatrix c = a * b;
    CHECK(multiply(a, b) == c);
  }
}

TEST_CASE("charpoly: multimodular equals rational Hessenberg and cofactor det") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const Index n = 1 + trial % 5;
    const RationalMatrix m = random_matrix(rng, n, false);
    const IntPolynomial f = charpoly(m);
    CHECK(f == detail::charpoly_rational(m));
    CHECK(f.degree() == n);
    CHECK(f.leading() == 1);
    // constant term is (-1)^n det
    const Rational d = det(m);
    CHECK(Rational(f.coefficient(0)) == (n % 2 == 0 ? d : Rational(-d)));
  }
  CHECK(charpoly(mat(2, 2, {0, 1, 1, 0})) == IntPolynomial{-1, 0, 1});
  CHECK_THROWS_AS(charpoly(RationalMatrix(2, 3)), Error);
}

TEST_CASE("charpoly of a companion matrix returns the polynomial") {
  // x^4 - 3x^3 + 0x^2 + 5x - 1000000007
  const std::vector<long> c{-1000000007L, 5, 0, -3};
  RationalMatrix m = RationalMatrix::Zero(4, 4);
  for (Index i = 1; i < 4; ++i) m(i, i - 1) = 1;
  for (Index i = 0; i < 4; ++i) m(i, 3) = -c[static_cast<std::size_t>(i)];
  CHECK(charpoly(m) == IntPolynomial{-1000000007L, 5, 0, -3, 1});
}

TEST_CASE("newton slopes") {
  using S = std::vector<std::string>;
  auto strs = [](const std::vector<Slope>& v) {
    S out;
    for (const auto& s : v) out.push_back(s.to_string());
    return out;
  };
  CHECK(strs(newton_slopes(IntPolynomial{0, -5, 1}, 5)) == S{"1", "inf"});
  CHECK(strs(newton_slopes(IntPolynomial{25, 0, 1}, 5)) == S{"1", "1"});
  CHECK(strs(newton_slopes(IntPolynomial{-2, 0, 1}, 2)) == S{"1/2", "1/2"});
  CHECK(strs(newton_slopes(IntPolynomial{0, 0, 1}, 3)) == S{"inf", "inf"});
  // (x - 1)(x - 9)(x - 27) at 3: slopes 0, 2, 3
  const IntPolynomial f = (IntPolynomial{-1, 1} * IntPolynomial{-9, 1}) * IntPolynomial{-27, 1};
  CHECK(strs(newton_slopes(f, 3)) == S{"0", "2", "3"});
}

TEST_CASE("Sturm root counting") {
  const IntPolynomial f{-2, 0, 1};
  const RealRootCount c = count_real_roots(f, Rational(-2), Rational(2));
  CHECK(c.distinct_roots == 2);
  CHECK(c.distinct_real == 2);
  CHECK(c.distinct_in_interval == 2);
  CHECK(count_real_roots(f, Rational(0), Rational(1)).distinct_in_interval == 0);
  const IntPolynomial g{1, 0, 1};
  CHECK(count_real_roots(g, Rational(-10), Rational(10)).distinct_real == 0);
  // repeated root counted once
  const IntPolynomial h = IntPolynomial{-1, 1} * IntPolynomial{-1, 1} * IntPolynomial{3, 1};
  const RealRootCount hc = count_real_roots(h, Rational(-5), Rational(5));
  CHECK(hc.distinct_roots == 2);
  CHECK(hc.distinct_in_interval == 2);
}

TEST_CASE("elementary number theory") {
  CHECK(is_prime(2));
  CHECK(!is_prime(1));
  CHECK(is_prime(1000000007));
  CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(gamma0_index(9) == 12);
  CHECK(gamma0_index(27) == 36);
  CHECK(gamma0_index(1) == 1);
  CHECK(valuation(Integer(250), 5) == 3);
}
