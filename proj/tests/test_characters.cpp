#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hmult/characters.hpp"
#include "hmult/error.hpp"
#include "hmult/rational.hpp"

using namespace hmult;

namespace {

// Euler's criterion for an odd prime p not dividing d
int euler(std::int64_t d, std::int64_t p) {
  std::int64_t base = mod(d, p), e = (p - 1) / 2, r = 1;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("Kronecker symbol small tables") {
  const std::vector<int> m3{1, -1, 0, 1, -1, 0, 1, -1, 0};
  for (int n = 1; n <= 9; ++n) CHECK(kronecker(-3, n) == m3[static_cast<std::size_t>(n - 1)]);
  const std::vector<int> m4{1, 0, -1, 0, 1, 0, -1, 0};
  for (int n = 1; n <= 8; ++n) CHECK(kronecker(-4, n) == m4[static_cast<std::size_t>(n - 1)]);
  CHECK(kronecker(8, 3) == -1);
  CHECK(kronecker(8, 7) == 1);
  CHECK(kronecker(-7, 2) == 1);
  CHECK(kronecker(5, 2) == -1);
}

TEST_CASE("Kronecker agrees with Euler's criterion") {
  for (std::int64_t d : {-3, -4, -7, -8, -11, -19, -20, -43, 5, 8, 12, 13, -163})
    for (std::int64_t p : primes_up_to(200)) {
      if (p == 2 || d % p == 0) continue;
      CHECK(kronecker(d, p) == euler(d, p));
    }
}

TEST_CASE("Kronecker symbol is multiplicative in n") {
  for (std::int64_t d : {-3, -4, -8, -15, 12})
    for (int m = 1; m < 30; ++m)
      for (int n = 1; n < 30; ++n) CHECK(kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n));
}

TEST_CASE("fundamental discriminants") {
  CHECK(is_fundamental_discriminant(-3));
  CHECK(is_fundamental_discriminant(-4));
  CHECK(is_fundamental_discriminant(-8));
  CHECK(!is_fundamental_discriminant(-12));
  CHECK(!is_fundamental_discriminant(-36));
  CHECK(!is_fundamental_discriminant(-1));
  CHECK(FundamentalDiscriminant::from_squarefree(-1).value() == -4);
  CHECK(FundamentalDiscriminant::from_squarefree(-3).value() == -3);
  CHECK(FundamentalDiscriminant::from_squarefree(-5).value() == -20);
  CHECK_THROWS_AS(FundamentalDiscriminant(-12), Error);
  CHECK_THROWS_AS(FundamentalDiscriminant(5), Error);
}

TEST_CASE("inert primes") {
  const FundamentalDiscriminant d(-3);
  CHECK(is_inert(d, 2));
  CHECK(is_inert(d, 5));
  CHECK(!is_inert(d, 7));
  CHECK(is_inert(d, 11));
  CHECK(!is_inert(d, 13));
  CHECK_THROWS_AS(is_inert(d, 3), Error);
  const FundamentalDiscriminant d4(-4);
  CHECK(is_inert(d4, 3));
  CHECK(!is_inert(d4, 5));
  try {
    is_inert(d4, 2);
    FAIL("expected RamifiedPrime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RamifiedPrime);
  }
}

TEST_CASE("Dirichlet characters") {
  const DirichletCharacter t = DirichletCharacter::trivial(6);
  CHECK(t(5) == 1);
  CHECK(t(3) == 0);
  CHECK(t.parity() == 1);
  CHECK(t.conductor() == 1);

  const DirichletCharacter c = DirichletCharacter::kronecker(-3, 9);
  CHECK(c.modulus() == 9);
  CHECK(c.conductor() == 3);
  CHECK(c.parity() == -1);
  CHECK(c(2) == -1);
  CHECK(c(4) == 1);
  CHECK(c(3) == 0);
  CHECK(c.spec() == "kronecker:-3,mod:9");
  CHECK(c.base_spec() == "kronecker:-3");

  CHECK(DirichletCharacter::parse("kronecker:-4").parity() == -1);
  CHECK(DirichletCharacter::parse("kronecker:12").parity() == 1);
  CHECK(DirichletCharacter::parse("trivial,mod:5") == DirichletCharacter::trivial(5));
  CHECK(DirichletCharacter::parse("kronecker:-7").lift(14) == DirichletCharacter::kronecker(-7, 14));
  CHECK_THROWS_AS(DirichletCharacter::parse("banana"), Error);
  CHECK_THROWS_AS(DirichletCharacter::kronecker(-3, 10), Error);
  CHECK_THROWS_AS(DirichletCharacter::kronecker(-12), Error);

  CHECK(parity_matches(DirichletCharacter::trivial(), 12));
  CHECK(!parity_matches(DirichletCharacter::trivial(), 3));
  CHECK(parity_matches(DirichletCharacter::kronecker(-7), 3));
}
