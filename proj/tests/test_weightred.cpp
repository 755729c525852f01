#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <tuple>

#include "hmult/error.hpp"
#include "hmult/mult.hpp"
#include "hmult/weightred.hpp"

using namespace hmult;

namespace {

// every (a, b, form) with 0 <= a < b <= p-1 and k-1 = b+pa or a+bp mod p^2-1
std::vector<std::tuple<int, int, CongruenceForm>> brute_force(int p, int k) {
  std::vector<std::tuple<int, int, CongruenceForm>> out;
  const int m = p * p - 1;
  const int target = ((k - 1) % m + m) % m;
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b) {
      if ((b + p * a) % m == target) out.emplace_back(a, b, CongruenceForm::BPlusPA);
      if ((a + b * p) % m == target) out.emplace_back(a, b, CongruenceForm::APlusBP);
    }
  return out;
}

}  // namespace

TEST_CASE("exhaustive uniqueness, range and period") {
  for (int p : {5, 7, 11, 13})
    for (int k = 2; k <= 400; k += 2) {
      CAPTURE(p);
      CAPTURE(k);
      const auto all = brute_force(p, k);
      REQUIRE(all.size() == 1);
      const WeightReduction r = reduce_weight(p, k);
      const auto& [a, b, form] = all.front();
      CHECK(r.a == a);
      CHECK(r.b == b);
      CHECK(r.form == form);
      CHECK(r.matches == 1);
      CHECK(r.chosen.second >= 2);
      CHECK(2 * r.chosen.second <= p + 3);
      CHECK(r.chosen.second <= p - 1);
      if (b - a != 1) {
        REQUIRE(r.options.size() == 2);
        CHECK(r.options[0] == std::pair<int, int>{a, 1 + b - a});
        CHECK(r.options[1] == std::pair<int, int>{b - 1, p + 2 + a - b});
        CHECK(r.options[0].second + r.options[1].second == p + 3);
      } else {
        REQUIRE(r.options.size() == 1);
        CHECK(r.options[0] == std::pair<int, int>{a, 2});
      }
      const WeightReduction shifted = reduce_weight(p, k + p * p - 1);
      CHECK(shifted.a == r.a);
      CHECK(shifted.b == r.b);
      CHECK(shifted.form == r.form);
      CHECK(shifted.chosen == r.chosen);
    }
}

TEST_CASE("fixtures") {
  const WeightReduction a = reduce_weight(5, 12);
  CHECK(a.a == 1);
  CHECK(a.b == 2);
  CHECK(a.form == CongruenceForm::APlusBP);
  CHECK(a.chosen == std::pair<int, int>{1, 2});

  const WeightReduction b = reduce_weight(7, 22);
  CHECK(b.a == 0);
  CHECK(b.b == 3);
  CHECK(b.options == std::vector<std::pair<int, int>>{{0, 4}, {2, 6}});
  CHECK(b.chosen == std::pair<int, int>{0, 4});

  const WeightReduction c = reduce_weight(5, 2);
  CHECK(c.a == 0);
  CHECK(c.b == 1);
  CHECK(c.chosen == std::pair<int, int>{0, 2});

  CHECK(to_string(CongruenceForm::BPlusPA) == "b+pa");
  CHECK(to_string(CongruenceForm::APlusBP) == "a+bp");
}

TEST_CASE("p = 3 is accepted for exploration") {
  for (int k = 2; k <= 40; k += 2) {
    const WeightReduction r = reduce_weight(3, k);
    CHECK(r.chosen.second <= 3);
  }
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(reduce_weight(5, 13), Error);
  CHECK_THROWS_AS(reduce_weight(9, 12), Error);
  CHECK_THROWS_AS(reduce_weight(2, 12), Error);
  CHECK_THROWS_AS(reduce_weight(5, 0), Error);
}

TEST_CASE("weight bound examples") {
  HeckeStore store;
  const auto triv = DirichletCharacter::trivial();
  const BoundCheck a = verify_bound(store, 5, triv, 27, 2);
  CHECK(a.k_prime == 2);
  CHECK(a.m_k_new == 1);
  CHECK(a.m_kprime_new == 1);
  CHECK(a.holds);

  const BoundCheck b = verify_bound(store, 5, triv, 1, 12);
  CHECK(b.k_prime == 2);
  CHECK(b.m_k_new == 0);
  CHECK(b.m_kprime_new == 0);
  CHECK(b.holds);

  const BoundCheck c = verify_bound(store, 5, triv, 27, 12);
  CHECK(c.k_prime == 2);
  CHECK(c.m_kprime_new == 1);
  CHECK(c.holds);

  CHECK_THROWS_AS(verify_bound(store, 3, triv, 1, 12), Error);
  CHECK_THROWS_AS(verify_bound(store, 5, triv, 25, 12), Error);
}
