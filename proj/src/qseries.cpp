#include "hmult/qseries.hpp"

#include <sstream>

#include "hmult/error.hpp"

namespace hmult {

QSeries::QSeries(std::vector<Rational> coefficients, int weight, std::int64_t level, std::string character)
    : coeffs_(std::move(coefficients)), weight_(weight), level_(level), character_(std::move(character)) {}

QSeries QSeries::zero(std::size_t precision, int weight, std::int64_t level, std::string character) {
  return QSeries(std::vector<Rational>(precision, Rational(0)), weight, level, std::move(character));
}

const Rational& QSeries::operator[](std::size_t n) const {
  if (n < 1 || n > coeffs_.size())
    throw Error(ErrorKind::InsufficientPrecision,
                "coefficient a_" + std::to_string(n) + " requested, precision " + std::to_string(coeffs_.size()));
  return coeffs_[n - 1];
}

Rational& QSeries::operator[](std::size_t n) {
  if (n < 1 || n > coeffs_.size())
    throw Error(ErrorKind::InsufficientPrecision,
                "coefficient a_" + std::to_string(n) + " requested, precision " + std::to_string(coeffs_.size()));
  return coeffs_[n - 1];
}

QSeries QSeries::truncated(std::size_t precision) const {
  if (precision > coeffs_.size())
    throw Error(ErrorKind::InsufficientPrecision, "cannot extend a series beyond its precision");
  return QSeries({coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(precision)}, weight_, level_,
                 character_);
}

bool QSeries::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  QSeries out = a.truncated(n);
  for (std::size_t i = 1; i <= n; ++i) out[i] += b[i];
  return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  QSeries out = a.truncated(n);
  for (std::size_t i = 1; i <= n; ++i) out[i] -= b[i];
  return out;
}

QSeries operator*(const Rational& c, const QSeries& f) {
  QSeries out = f;
  for (std::size_t i = 1; i <= f.precision(); ++i) out[i] *= c;
  return out;
}

bool operator==(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.precision(), b.precision());
  for (std::size_t i = 1; i <= n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::string QSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t n = 1; n <= coeffs_.size(); ++n) {
    const Rational& c = coeffs_[n - 1];
    if (c == 0) continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    if (mag != 1) os << hmult::to_string(mag) << "*";
    os << "q";
    if (n > 1) os << "^" << n;
  }
  if (first) os << "0";
  return os.str();
}

QSeries hecke_qexp(const QSeries& f, std::int64_t p, int k, const DirichletCharacter& chi,
                   std::size_t out_precision) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, "hecke_qexp needs a prime");
  if (static_cast<std::size_t>(p) * out_precision > f.precision())
    throw Error(ErrorKind::InsufficientPrecision,
                "T_" + std::to_string(p) + " to precision " + std::to_string(out_precision) + " needs " +
                    std::to_string(static_cast<std::size_t>(p) * out_precision) + " coefficients, have " +
                    std::to_string(f.precision()));
  Rational scale = Rational(chi(p));
  for (int i = 0; i < k - 1; ++i) scale *= p;
  QSeries out = QSeries::zero(out_precision, f.weight(), f.level(), f.character());
  const auto up = static_cast<std::size_t>(p);
  for (std::size_t n = 1; n <= out_precision; ++n) {
    out[n] = f[n * up];
    if (n % up == 0 && scale != 0) out[n] += scale * f[n / up];
  }
  return out;
}

QSeries hecke_qexp(const QSeries& f, std::int64_t p, int k, const DirichletCharacter& chi) {
  return hecke_qexp(f, p, k, chi, f.precision() / static_cast<std::size_t>(p));
}

namespace {

using Series = std::vector<Integer>;  // c[0] + c[1] q + ...

Series mul(const Series& a, const Series& b, std::size_t len) {
  Series out(len, Integer(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series power(const Series& a, int e, std::size_t len) {
  Series out(len, Integer(0));
  out[0] = 1;
  for (int i = 0; i < e; ++i) out = mul(out, a, len);
  return out;
}

// prod_{n >= 1} (1 - q^(d n))^r, r >= 0 or < 0, to length len.
Series eta_product_part(std::int64_t d, int r, std::size_t len) {
  Series out(len, Integer(0));
  out[0] = 1;
  const int reps = r < 0 ? -r : r;
  for (std::size_t n = 1; static_cast<std::size_t>(d) * n < len; ++n) {
    const std::size_t step = static_cast<std::size_t>(d) * n;
    for (int t = 0; t < reps; ++t) {
      if (r > 0) {
        // multiply by (1 - q^step)
        for (std::size_t i = len; i-- > step;) out[i] -= out[i - step];
      } else {
        // divide by (1 - q^step): multiply by 1 + q^step + q^(2 step) + ...
        for (std::size_t i = step; i < len; ++i) out[i] += out[i - step];
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Integer> eisenstein_series(int k, std::size_t precision) {
  if (k != 4 && k != 6) throw Error(ErrorKind::UnsupportedWeight, "only E4 and E6 are provided");
  const long factor = k == 4 ? 240 : -504;
  Series out(precision + 1, Integer(0));
  out[0] = 1;
  for (std::size_t n = 1; n <= precision; ++n) {
    Integer sigma(0);
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d != 0) continue;
      Integer t(1);
      for (int i = 0; i < k - 1; ++i) t *= static_cast<long>(d);
      sigma += t;
    }
    out[n] = sigma * factor;
  }
  return out;
}

std::vector<QSeries> victor_miller_basis(int k, std::size_t precision) {
  if (k % 2 != 0 || k < 2) throw Error(ErrorKind::UnsupportedWeight, "level 1 needs even weight");
  std::vector<QSeries> out;
  const std::size_t len = precision + 1;
  const Series e4 = eisenstein_series(4, precision), e6 = eisenstein_series(6, precision);
  Series delta = eta_product_part(1, 24, len);
  delta.insert(delta.begin(), Integer(0));
  delta.resize(len);
  // dim S_k(1) = number of j >= 1 with k - 12 j representable as 4a + 6b.
  std::vector<Series> rows;
  for (int j = 1; 12 * j <= k; ++j) {
    const int rest = k - 12 * j;
    if (rest == 2) continue;
    const int b = rest % 4 == 0 ? 0 : 1;
    const int a = (rest - 6 * b) / 4;
    Series f = mul(power(delta, j, len), mul(power(e4, a, len), power(e6, b, len), len), len);
    rows.push_back(std::move(f));
  }
  // f_j = q^j + O(q^(j+1)); reduce to echelon form.
  std::vector<std::vector<Rational>> ech;
  for (const auto& f : rows) ech.emplace_back(f.begin() + 1, f.end());
  for (std::size_t i = 0; i < ech.size(); ++i) {
    const std::size_t lead = i;
    if (lead >= precision) break;
    const Rational c = ech[i][lead];
    for (auto& x : ech[i]) x /= c;
    for (std::size_t r = 0; r < ech.size(); ++r) {
      if (r == i || ech[r][lead] == 0) continue;
      const Rational u = ech[r][lead];
      for (std::size_t t = 0; t < precision; ++t) ech[r][t] -= u * ech[i][t];
    }
  }
  for (auto& row : ech) out.emplace_back(std::move(row), k, 1, "trivial");
  return out;
}

QSeries eta_quotient(const std::vector<EtaFactor>& spec, std::int64_t level, std::size_t precision) {
  std::int64_t total = 0;
  int weight2 = 0;
  for (const auto& f : spec) {
    if (f.d < 1) throw Error(ErrorKind::InvalidArgument, "eta quotient divisor must be positive");
    total += f.d * f.r;
    weight2 += f.r;
  }
  if (total % 24 != 0 || total <= 0)
    throw Error(ErrorKind::NonIntegralLeadingPower,
                "sum d*r = " + std::to_string(total) + " is not a positive multiple of 24");
  const auto shift = static_cast<std::size_t>(total / 24);
  Series prod(precision + 1, Integer(0));
  prod[0] = 1;
  for (const auto& f : spec) prod = mul(prod, eta_product_part(f.d, f.r, precision + 1), precision + 1);
  std::vector<Rational> coeffs(precision, Rational(0));
  for (std::size_t n = shift; n <= precision; ++n) coeffs[n - 1] = Rational(prod[n - shift]);
  return QSeries(std::move(coeffs), weight2 / 2, level, "trivial");
}

std::int64_t sturm_bound(int k, std::int64_t level) {
  return static_cast<std::int64_t>(k) * gamma0_index(level) / 12;
}

}  // namespace hmult
