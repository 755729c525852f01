#include "hmult/polynomial.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "hmult/error.hpp"

namespace hmult {

IntPolynomial::IntPolynomial(std::vector<Integer> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::x() { return IntPolynomial{0, 1}; }

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer IntPolynomial::coefficient(int i) const {
  if (i < 0 || i > degree()) return Integer(0);
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational IntPolynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  return acc;
}

int IntPolynomial::sign_at(const Rational& x) const {
  if (is_zero()) return 0;
  const Integer u = numerator(x), v = denominator(x);
  Integer acc = coeffs_.back();
  Integer vp(1);
  for (int i = degree() - 1; i >= 0; --i) {
    vp *= v;
    acc = acc * u + coeffs_[static_cast<std::size_t>(i)] * vp;
  }
  return acc > 0 ? 1 : (acc < 0 ? -1 : 0);
}

IntPolynomial IntPolynomial::derivative() const {
  std::vector<Integer> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(coeffs_[static_cast<std::size_t>(i)] * i);
  return IntPolynomial(std::move(d));
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return *this;
  Integer g(0);
  for (const auto& c : coeffs_) {
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) return *this;
  }
  std::vector<Integer> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c / g);
  return IntPolynomial(std::move(out));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.coeffs_.size()) out[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) out[i] += b.coeffs_[i];
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.coeffs_.size()) out[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) out[i] -= b.coeffs_[i];
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(out));
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Integer& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

IntPolynomial detail::charpoly_rational(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NonSquare, "charpoly: matrix is not square");
  const Index n = m.rows();
  RationalMatrix h = m;

  // Similarity transform to upper Hessenberg form.
  for (Index col = 0; col + 2 < n; ++col) {
    const Index target = col + 1;
    Index i = target;
    while (i < n && h(i, col) == 0) ++i;
    if (i == n) continue;
    if (i != target) {
      h.row(i).swap(h.row(target));
      h.col(i).swap(h.col(target));
    }
    const Rational t = h(target, col);
    for (Index j = target + 1; j < n; ++j) {
      if (h(j, col) == 0) continue;
      const Rational u = h(j, col) / t;
      for (Index c = 0; c < n; ++c)
        if (h(target, c) != 0) h(j, c) -= u * h(target, c);
      for (Index r = 0; r < n; ++r)
        if (h(r, j) != 0) h(r, target) += u * h(r, j);
    }
  }

  // p_m = (x - h_mm) p_{m-1} - sum_i (prod of subdiagonal) h_{m-i, m} p_{m-i-1}
  std::vector<std::vector<Rational>> p(static_cast<std::size_t>(n) + 1);
  p[0] = {Rational(1)};
  for (Index mm = 1; mm <= n; ++mm) {
    std::vector<Rational> cur(static_cast<std::size_t>(mm) + 1, Rational(0));
    const auto& prev = p[static_cast<std::size_t>(mm - 1)];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      cur[d + 1] += prev[d];
      cur[d] -= h(mm - 1, mm - 1) * prev[d];
    }
    Rational t(1);
    for (Index i = 1; i < mm; ++i) {
      t *= h(mm - i, mm - i - 1);
      if (t == 0) break;
      const Rational f = t * h(mm - i - 1, mm - 1);
      if (f == 0) continue;
      const auto& q = p[static_cast<std::size_t>(mm - i - 1)];
      for (std::size_t d = 0; d < q.size(); ++d) cur[d] -= f * q[d];
    }
    p[static_cast<std::size_t>(mm)] = std::move(cur);
  }

  std::vector<Integer> coeffs;
  for (const auto& c : p[static_cast<std::size_t>(n)]) {
    if (!is_integral(c))
      throw Error(ErrorKind::NonIntegral,
                  "charpoly: coefficient " + hmult::to_string(c) + " is not integral; scale the matrix");
    coeffs.push_back(numerator(c));
  }
  return IntPolynomial(std::move(coeffs));
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

// Primes just above 2^61, generated once.
const std::vector<u64>& crt_primes(std::size_t count) {
  static std::vector<u64> primes;
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  if (primes.size() < count) {
    mpz_t z;
    mpz_init_set_ui(z, primes.empty() ? (u64{1} << 61) : primes.back());
    while (primes.size() < count) {
      mpz_nextprime(z, z);
      primes.push_back(mpz_get_ui(z));
    }
    mpz_clear(z);
  }
  return primes;
}

// Characteristic polynomial of an integer matrix mod p, low degree first.
std::vector<u64> charpoly_mod(std::vector<u64> h, std::size_t n, u64 p) {
  auto at = [&](std::size_t r, std::size_t c) -> u64& { return h[r * n + c]; };
  for (std::size_t col = 0; col + 2 < n; ++col) {
    const std::size_t target = col + 1;
    std::size_t i = target;
    while (i < n && at(i, col) == 0) ++i;
    if (i == n) continue;
    if (i != target) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(i, c), at(target, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(at(r, i), at(r, target));
    }
    const u64 tinv = invmod(at(target, col), p);
    for (std::size_t j = target + 1; j < n; ++j) {
      if (at(j, col) == 0) continue;
      const u64 u = mulmod(at(j, col), tinv, p);
      for (std::size_t c = 0; c < n; ++c)
        if (at(target, c)) at(j, c) = (at(j, c) + p - mulmod(u, at(target, c), p)) % p;
      for (std::size_t r = 0; r < n; ++r)
        if (at(r, j)) at(r, target) = (at(r, target) + mulmod(u, at(r, j), p)) % p;
    }
  }
  std::vector<std::vector<u64>> poly(n + 1);
  poly[0] = {1};
  for (std::size_t mm = 1; mm <= n; ++mm) {
    std::vector<u64> cur(mm + 1, 0);
    const auto& prev = poly[mm - 1];
    const u64 diag = at(mm - 1, mm - 1);
    for (std::size_t d = 0; d < prev.size(); ++d) {
      cur[d + 1] = (cur[d + 1] + prev[d]) % p;
      cur[d] = (cur[d] + p - mulmod(diag, prev[d], p)) % p;
    }
    u64 t = 1;
    for (std::size_t i = 1; i < mm; ++i) {
      t = mulmod(t, at(mm - i, mm - i - 1), p);
      if (t == 0) break;
      const u64 f = mulmod(t, at(mm - i - 1, mm - 1), p);
      if (f == 0) continue;
      const auto& q = poly[mm - i - 1];
      for (std::size_t d = 0; d < q.size(); ++d) cur[d] = (cur[d] + p - mulmod(f, q[d], p)) % p;
    }
    poly[mm] = std::move(cur);
  }
  return poly[n];
}

}  // namespace

IntPolynomial charpoly(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NonSquare, "charpoly: matrix is not square");
  const auto n = static_cast<std::size_t>(m.rows());
  if (n == 0) return IntPolynomial{1};

  // charpoly(m) is recovered from charpoly(den * m), which has integer
  // coefficients bounded by prod_j (1 + |row_j|_2) (Hadamard on minors).
  Integer den(1);
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      const Integer d = denominator(m(r, c));
      if (d != 1) den = den / boost::multiprecision::gcd(den, d) * d;
    }
  std::vector<Integer> a(n * n);
  double log2_bound = 1.0;
  for (std::size_t r = 0; r < n; ++r) {
    Integer norm2(0);
    for (std::size_t c = 0; c < n; ++c) {
      const Rational& x = m(static_cast<Index>(r), static_cast<Index>(c));
      a[r * n + c] = numerator(x) * (den / denominator(x));
      norm2 += a[r * n + c] * a[r * n + c];
    }
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, norm2.backend().data());
    log2_bound += std::log2(1.0 + std::sqrt(mant) * std::exp2(0.5 * static_cast<double>(exp2)) ) + 1e-9;
  }
  // about 61 bits per prime; one spare for the sign
  const auto count = static_cast<std::size_t>(log2_bound / 61.0) + 2;
  const auto& primes = crt_primes(count);

  std::vector<Integer> residue(n + 1, Integer(0));
  Integer modulus(1);
  std::vector<u64> h(n * n);
  for (std::size_t i = 0; i < count; ++i) {
    const u64 p = primes[i];
    for (std::size_t e = 0; e < n * n; ++e) {
      const u64 r = mpz_fdiv_ui(a[e].backend().data(), p);
      h[e] = r;
    }
    const std::vector<u64> cp = charpoly_mod(h, n, p);
    const u64 minv = invmod(mpz_fdiv_ui(modulus.backend().data(), p), p);
    for (std::size_t d = 0; d <= n; ++d) {
      const u64 cur = mpz_fdiv_ui(residue[d].backend().data(), p);
      const u64 t = mulmod((cp[d] + p - cur) % p, minv, p);
      if (t != 0) {
        Integer step = modulus * Integer(t);
        residue[d] += step;
      }
    }
    modulus *= Integer(primes[i]);
  }
  const Integer half = modulus / 2;
  std::vector<Integer> coeffs(n + 1);
  Integer scale(1);  // den^(n - d), built from the top
  for (std::size_t d = n + 1; d-- > 0;) {
    Integer c = residue[d] > half ? Integer(residue[d] - modulus) : residue[d];
    if (c % scale != 0)
      throw Error(ErrorKind::NonIntegral,
                  "charpoly: coefficient " + hmult::to_string(Rational(c, scale)) + " is not integral");
    coeffs[d] = c / scale;
    scale *= den;
  }
  return IntPolynomial(std::move(coeffs));
}

std::string Slope::to_string() const { return infinite ? "inf" : hmult::to_string(value); }

std::vector<Slope> newton_slopes(const IntPolynomial& f, std::int64_t p) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "newton_slopes of the zero polynomial");
  std::vector<Slope> out;
  const auto& c = f.coefficients();
  int low = 0;
  while (c[static_cast<std::size_t>(low)] == 0) ++low;
  for (int i = 0; i < low; ++i) out.push_back(Slope{true, Rational(0)});

  struct Point {
    long x;
    long y;
  };
  std::vector<Point> pts;
  for (int i = low; i <= f.degree(); ++i)
    if (c[static_cast<std::size_t>(i)] != 0) pts.push_back({i, valuation(c[static_cast<std::size_t>(i)], p)});

  // Lower convex hull, left to right.
  std::vector<Point> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const Point& a = hull[hull.size() - 2];
      const Point& b = hull.back();
      // Drop b unless it lies strictly below the segment a -> pt.
      const long cross = (b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  std::vector<Slope> finite;
  for (std::size_t s = 1; s < hull.size(); ++s) {
    const long dx = hull[s].x - hull[s - 1].x;
    const Rational root_valuation(Integer(hull[s - 1].y - hull[s].y), Integer(dx));
    for (long r = 0; r < dx; ++r) finite.push_back(Slope{false, root_valuation});
  }
  std::sort(finite.begin(), finite.end());
  finite.insert(finite.end(), out.begin(), out.end());
  return finite;
}

namespace {

// Remainder of a by b up to a positive scalar, i.e. c * rem(a, b) with c > 0.
IntPolynomial positive_pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<Integer> r = a.coefficients();
  const auto& bc = b.coefficients();
  const int db = b.degree();
  const Integer& lb = b.leading();
  int steps = 0;
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    const int dr = static_cast<int>(r.size()) - 1;
    const Integer lead = r.back();
    for (auto& x : r) x *= lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(dr - db + j)] -= lead * bc[static_cast<std::size_t>(j)];
    ++steps;
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  IntPolynomial rem(std::move(r));
  if (lb < 0 && steps % 2 == 1) rem = IntPolynomial{} - rem;
  return rem.primitive_part();
}

int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int variations_at(const std::vector<IntPolynomial>& chain, const Rational& x) {
  std::vector<int> s;
  s.reserve(chain.size());
  for (const auto& q : chain) s.push_back(q.sign_at(x));
  return variations(s);
}

int variations_at_infinity(const std::vector<IntPolynomial>& chain, bool positive) {
  std::vector<int> s;
  for (const auto& q : chain) {
    int sg = q.leading() > 0 ? 1 : -1;
    if (!positive && q.degree() % 2 == 1) sg = -sg;
    s.push_back(sg);
  }
  return variations(s);
}

IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  // a / b over Q, then primitive part; b must divide a.
  std::vector<Rational> r;
  for (const auto& c : a.coefficients()) r.emplace_back(c);
  const int db = b.degree();
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  for (int i = a.degree() - db; i >= 0; --i) {
    const Rational f = r[static_cast<std::size_t>(i + db)] / Rational(b.leading());
    q[static_cast<std::size_t>(i)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i + j)] -= f * Rational(b.coefficient(j));
  }
  Integer l(1);
  for (const auto& c : q) l = boost::multiprecision::lcm(l, denominator(c));
  std::vector<Integer> out;
  for (const auto& c : q) out.push_back(numerator(c * Rational(l)));
  return IntPolynomial(std::move(out)).primitive_part();
}

}  // namespace

std::vector<IntPolynomial> sturm_chain(const IntPolynomial& f) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "sturm_chain of the zero polynomial");
  std::vector<IntPolynomial> chain{f.primitive_part()};
  if (f.degree() == 0) return chain;
  chain.push_back(f.derivative().primitive_part());
  while (true) {
    IntPolynomial next =
        positive_pseudo_remainder(chain[chain.size() - 2], chain.back());
    if (next.is_zero()) break;
    chain.push_back(IntPolynomial{} - next);
  }
  return chain;
}

RealRootCount count_real_roots(const IntPolynomial& f, const Rational& lo, const Rational& hi) {
  std::vector<IntPolynomial> chain = sturm_chain(f);
  RealRootCount out;
  out.distinct_roots = f.degree() - chain.back().degree();
  if (f.sign_at(lo) == 0 || f.sign_at(hi) == 0) {
    // An endpoint is a root: switch to the squarefree part, where Sturm
    // counts on half-open intervals are valid at roots too.
    const IntPolynomial sf = exact_quotient(f, chain.back());
    chain = sturm_chain(sf);
  }
  out.distinct_real = variations_at_infinity(chain, false) - variations_at_infinity(chain, true);
  if (lo <= hi) {
    out.distinct_in_interval = variations_at(chain, lo) - variations_at(chain, hi);
    if (chain.front().sign_at(lo) == 0) ++out.distinct_in_interval;
  }
  return out;
}

}  // namespace hmult
