#include "hmult/weightred.hpp"

#include "hmult/error.hpp"

namespace hmult {

std::string to_string(CongruenceForm f) { return f == CongruenceForm::BPlusPA ? "b+pa" : "a+bp"; }

WeightReduction reduce_weight(std::int64_t p, int k) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorKind::InvalidArgument, "weight reduction needs an odd prime");
  if (k < 2 || k % 2 != 0) throw Error(ErrorKind::InvalidArgument, "weight must be even and at least 2");
  const std::int64_t modulus = p * p - 1;
  const std::int64_t target = mod(k - 1, modulus);

  WeightReduction r;
  r.p = p;
  r.k = k;
  for (std::int64_t a = 0; a < p; ++a) {
    for (std::int64_t b = a + 1; b < p; ++b) {
      for (CongruenceForm form : {CongruenceForm::BPlusPA, CongruenceForm::APlusBP}) {
        const std::int64_t value = form == CongruenceForm::BPlusPA ? b + p * a : a + b * p;
        if (mod(value, modulus) != target) continue;
        if (r.matches++ == 0) {
          r.a = static_cast<int>(a);
          r.b = static_cast<int>(b);
          r.form = form;
        }
      }
    }
  }
  if (r.matches == 0)
    throw Error(ErrorKind::NoDecomposition, "no (a, b) for p=" + std::to_string(p) + ", k=" + std::to_string(k));
  if (r.matches > 1)
    throw Error(ErrorKind::InvariantViolation,
                "several (a, b) for p=" + std::to_string(p) + ", k=" + std::to_string(k));

  const int pp = static_cast<int>(p);
  if (r.b - r.a != 1)
    r.options = {{r.a, 1 + r.b - r.a}, {r.b - 1, pp + 2 + r.a - r.b}};
  else
    r.options = {{r.a, 2}};
  r.chosen = r.options.front();
  for (const auto& opt : r.options)
    if (opt.second < r.chosen.second || (opt.second == r.chosen.second && opt.first < r.chosen.first))
      r.chosen = opt;
  return r;
}

BoundCheck verify_bound(HeckeStore& store, std::int64_t p, const DirichletCharacter& chi, std::int64_t level, int k) {
  if (p < 5) throw Error(ErrorKind::InvalidArgument, "the weight bound is stated for p >= 5");
  check_multiplicity_query(p, k, chi, level);
  const WeightReduction r = reduce_weight(p, k);
  BoundCheck out;
  out.k = k;
  out.k_prime = r.chosen.second;
  out.m_k_new = multiplicity_new(store, p, Rational(0), k, chi, level);
  out.m_kprime_new = multiplicity_new(store, p, Rational(0), out.k_prime, chi, level);
  out.holds = out.m_k_new <= out.m_kprime_new;
  return out;
}

}  // namespace hmult
