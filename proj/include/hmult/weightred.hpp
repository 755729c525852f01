#pragma once

// Weight reduction: k - 1 = b + p a or a + b p mod p^2 - 1 with
// 0 <= a < b <= p - 1, and the admissible (i, k') pairs it determines.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hmult/characters.hpp"
#include "hmult/mult.hpp"

namespace hmult {

enum class CongruenceForm { BPlusPA, APlusBP };

std::string to_string(CongruenceForm f);  // "b+pa" / "a+bp"

struct WeightReduction {
  std::int64_t p = 0;
  int k = 0;
  int a = 0;
  int b = 0;
  CongruenceForm form = CongruenceForm::BPlusPA;
  std::vector<std::pair<int, int>> options;  // (i, k')
  std::pair<int, int> chosen;
  int matches = 0;  // number of (a, b, form) triples found by the search
};

/// Exhaustive search over 0 <= a < b <= p - 1 and both forms. Throws
/// NotPrime, InvalidArgument (p = 2 or odd k), NoDecomposition, and
/// InvariantViolation if more than one triple matches.
WeightReduction reduce_weight(std::int64_t p, int k);

struct BoundCheck {
  int k = 0;
  int k_prime = 0;
  Index m_k_new = 0;
  Index m_kprime_new = 0;
  bool holds = false;
};

/// m_new(0, k) <= m_new(0, k') with k' from reduce_weight. Needs p >= 5.
BoundCheck verify_bound(HeckeStore& store, std::int64_t p, const DirichletCharacter& chi, std::int64_t level, int k);

}  // namespace hmult
