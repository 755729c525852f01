#include "hmult/characters.hpp"

#include <cstdlib>
#include <string>

#include "hmult/error.hpp"
#include "hmult/rational.hpp"

namespace hmult {

namespace {

// Jacobi symbol (a | n) for odd n > 0.
int jacobi(std::int64_t a, std::int64_t n) {
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace

int kronecker(std::int64_t d, std::int64_t n) {
  if (n == 0) return std::llabs(d) == 1 ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (d < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (d % 2 == 0) return 0;
    const std::int64_t r = mod(d, 8);
    if ((r == 3 || r == 5) && twos % 2 == 1) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(d, n);
}

bool is_fundamental_discriminant(std::int64_t d) {
  if (d == 0 || d == 1) return false;
  if (mod(d, 4) == 1) return is_squarefree(d);
  if (mod(d, 4) != 0) return false;
  const std::int64_t m = d / 4;
  return (mod(m, 4) == 2 || mod(m, 4) == 3) && is_squarefree(m);
}

FundamentalDiscriminant::FundamentalDiscriminant(std::int64_t d) : d_(d) {
  if (d >= 0 || !is_fundamental_discriminant(d))
    throw Error(ErrorKind::NotFundamental,
                std::to_string(d) + " is not a negative fundamental discriminant");
}

FundamentalDiscriminant FundamentalDiscriminant::from_squarefree(std::int64_t d) {
  if (d >= 0 || !is_squarefree(d))
    throw Error(ErrorKind::NotFundamental, std::to_string(d) + " is not a negative squarefree integer");
  return FundamentalDiscriminant(mod(d, 4) == 1 ? d : 4 * d);
}

bool is_inert(FundamentalDiscriminant d, std::int64_t q) {
  if (!is_prime(q)) throw Error(ErrorKind::NotPrime, std::to_string(q) + " is not prime");
  if (d.value() % q == 0)
    throw Error(ErrorKind::RamifiedPrime,
                std::to_string(q) + " ramifies in Q(sqrt " + std::to_string(d.value()) + ")");
  return kronecker(d.value(), q) == -1;
}

DirichletCharacter::DirichletCharacter(std::int64_t modulus, std::optional<std::int64_t> d)
    : modulus_(modulus), discriminant_(d) {
  table_.resize(static_cast<std::size_t>(modulus));
  for (std::int64_t n = 0; n < modulus; ++n) {
    std::int8_t v = 0;
    if (gcd(n, modulus) == 1) v = d ? static_cast<std::int8_t>(hmult::kronecker(*d, n)) : 1;
    table_[static_cast<std::size_t>(n)] = v;
  }
  parity_ = (*this)(-1);
}

DirichletCharacter DirichletCharacter::trivial(std::int64_t modulus) {
  if (modulus < 1) throw Error(ErrorKind::InvalidArgument, "character modulus must be positive");
  return DirichletCharacter(modulus, std::nullopt);
}

DirichletCharacter DirichletCharacter::kronecker(std::int64_t d, std::optional<std::int64_t> modulus) {
  if (!is_fundamental_discriminant(d))
    throw Error(ErrorKind::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
  const std::int64_t m = modulus.value_or(std::llabs(d));
  if (m < 1 || m % std::llabs(d) != 0)
    throw Error(ErrorKind::CharacterLevelMismatch,
                "modulus " + std::to_string(m) + " is not a multiple of |D| = " + std::to_string(std::llabs(d)));
  return DirichletCharacter(m, d);
}

DirichletCharacter DirichletCharacter::parse(std::string_view spec) {
  std::optional<std::int64_t> modulus;
  std::string_view kind = spec;
  if (const auto comma = spec.find(','); comma != std::string_view::npos) {
    kind = spec.substr(0, comma);
    std::string_view rest = spec.substr(comma + 1);
    if (rest.substr(0, 4) != "mod:")
      throw Error(ErrorKind::ParseError, "bad character spec '" + std::string(spec) + "'");
    try {
      modulus = std::stoll(std::string(rest.substr(4)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad modulus in '" + std::string(spec) + "'");
    }
  }
  if (kind == "trivial") return trivial(modulus.value_or(1));
  if (kind.substr(0, 10) == "kronecker:") {
    std::int64_t d = 0;
    try {
      std::size_t used = 0;
      const std::string text(kind.substr(10));
      d = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad discriminant in '" + std::string(spec) + "'");
    }
    return kronecker(d, modulus);
  }
  throw Error(ErrorKind::ParseError, "unknown character spec '" + std::string(spec) + "'");
}

std::int64_t DirichletCharacter::conductor() const {
  return discriminant_ ? std::llabs(*discriminant_) : 1;
}

int DirichletCharacter::operator()(std::int64_t n) const {
  return table_[static_cast<std::size_t>(mod(n, modulus_))];
}

DirichletCharacter DirichletCharacter::lift(std::int64_t modulus) const {
  if (modulus < 1 || modulus % conductor() != 0)
    throw Error(ErrorKind::CharacterLevelMismatch,
                "character of conductor " + std::to_string(conductor()) + " is not defined modulo " +
                    std::to_string(modulus));
  return DirichletCharacter(modulus, discriminant_);
}

std::string DirichletCharacter::base_spec() const {
  return discriminant_ ? "kronecker:" + std::to_string(*discriminant_) : std::string("trivial");
}

std::string DirichletCharacter::spec() const {
  std::string s = base_spec();
  if (modulus_ != conductor()) s += ",mod:" + std::to_string(modulus_);
  return s;
}

}  // namespace hmult
