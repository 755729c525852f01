#include "hmult/modsym.hpp"

#include <gmp.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>

#include "hmult/error.hpp"

namespace hmult {

std::string to_string(Sign s) {
  switch (s) {
    case Sign::Minus: return "-1";
    case Sign::Full: return "0";
    case Sign::Plus: return "+1";
  }
  return "?";
}

// ---------------------------------------------------------------- P1List

P1List::P1List(std::int64_t n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  if (n > 100000) throw Error(ErrorKind::InvalidArgument, "level too large for P1 table");
  const auto cells = static_cast<std::size_t>(n * n);
  index_.assign(cells, -1);
  scalar_.assign(cells, 0);
  std::vector<std::int64_t> units;
  for (std::int64_t l = 0; l < n; ++l)
    if (gcd(l, n) == 1) units.push_back(l);
  for (std::int64_t u = 0; u < n; ++u) {
    for (std::int64_t v = 0; v < n; ++v) {
      const auto cell = static_cast<std::size_t>(u * n + v);
      if (index_[cell] >= 0) continue;
      if (gcd(gcd(u, v), n) != 1) continue;
      const int idx = static_cast<int>(reps_.size());
      reps_.emplace_back(u, v);
      stabilizers_.emplace_back();
      for (std::int64_t l : units) {
        const std::int64_t lu = l * u % n, lv = l * v % n;
        const auto c = static_cast<std::size_t>(lu * n + lv);
        if (lu == u && lv == v && l % n != 1 % n) stabilizers_.back().push_back(l);
        if (index_[c] < 0) {
          index_[c] = idx;
          scalar_[c] = l;
        }
      }
    }
  }
}

P1List::Normalized P1List::normalize(std::int64_t u, std::int64_t v) const {
  const auto cell = static_cast<std::size_t>(mod(u, n_) * n_ + mod(v, n_));
  return {index_[cell], scalar_[cell]};
}

// ------------------------------------------------------------ Heilbronn

std::vector<Mat2> heilbronn_merel(std::int64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Heilbronn index must be positive");
  std::vector<Mat2> out;
  for (std::int64_t a = 1; a <= n; ++a) {
    for (std::int64_t d = 1; d <= n; ++d) {
      const std::int64_t bc = a * d - n;
      if (bc < 0) continue;
      if (bc == 0) {
        for (std::int64_t b = 0; b < a; ++b) out.push_back({a, b, 0, d});
        for (std::int64_t c = 1; c < d; ++c) out.push_back({a, 0, c, d});
        continue;
      }
      for (std::int64_t c = 1; c < d; ++c) {
        if (bc % c != 0) continue;
        const std::int64_t b = bc / c;
        if (b < a) out.push_back({a, b, c, d});
      }
    }
  }
  return out;
}

namespace {

// round(a / b), halves away from zero
std::int64_t round_div(std::int64_t a, std::int64_t b) {
  if (b < 0) { a = -a; b = -b; }
  const std::int64_t two_a = 2 * a;
  if (a >= 0) return (two_a + b) / (2 * b);
  return -((-two_a + b) / (2 * b));
}

}  // namespace

std::vector<Mat2> heilbronn_cremona(std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, "Cremona Heilbronn matrices need a prime");
  if (p == 2) return {{1, 0, 0, 2}, {2, 0, 0, 1}, {2, 1, 0, 1}, {1, 0, 1, 2}};
  std::vector<Mat2> out{{1, 0, 0, p}};
  for (std::int64_t r = -(p - 1) / 2; r <= (p - 1) / 2; ++r) {
    std::int64_t x1 = p, x2 = -r, y1 = 0, y2 = 1, a = -p, b = r;
    out.push_back({x1, x2, y1, y2});
    while (b != 0) {
      const std::int64_t q = round_div(a, b);
      const std::int64_t c = a - b * q;
      a = -b;
      b = c;
      const std::int64_t x3 = q * x2 - x1;
      x1 = x2;
      x2 = x3;
      const std::int64_t y3 = q * y2 - y1;
      y1 = y2;
      y2 = y3;
      out.push_back({x1, x2, y1, y2});
    }
  }
  return out;
}

// ---------------------------------------------------------- helpers

namespace {

// Coefficients of (aX + bY)^j (cX + dY)^m indexed by the power of X.
class PolyPowers {
 public:
  PolyPowers(const Mat2& h, int top) : left_(power_table(h.a, h.b, top)), right_(power_table(h.c, h.d, top)) {}

  std::vector<Integer> product(int j, int m) const {
    const auto& l = left_[static_cast<std::size_t>(j)];
    const auto& r = right_[static_cast<std::size_t>(m)];
    std::vector<Integer> out(static_cast<std::size_t>(j + m + 1));
    for (std::size_t s = 0; s < l.size(); ++s) {
      if (l[s] == 0) continue;
      for (std::size_t t = 0; t < r.size(); ++t)
        if (r[t] != 0) mpz_addmul(out[s + t].backend().data(), l[s].backend().data(), r[t].backend().data());
    }
    return out;
  }

 private:
  static std::vector<std::vector<Integer>> power_table(std::int64_t x, std::int64_t y, int top) {
    std::vector<std::vector<Integer>> t(static_cast<std::size_t>(top + 1));
    t[0] = {Integer(1)};
    for (int e = 1; e <= top; ++e) {
      const auto& prev = t[static_cast<std::size_t>(e - 1)];
      auto& cur = t[static_cast<std::size_t>(e)];
      cur.assign(static_cast<std::size_t>(e + 1), Integer(0));
      for (std::size_t s = 0; s < prev.size(); ++s) {
        cur[s + 1] += prev[s] * x;
        cur[s] += prev[s] * y;
      }
    }
    return t;
  }

  std::vector<std::vector<Integer>> left_, right_;
};

// Union-find over generators with relations x = s * y, s = +-1.
class SignedUnionFind {
 public:
  explicit SignedUnionFind(std::size_t n) : parent_(n), rel_(n, 1), zero_(n, false) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    int s = 1;
    std::size_t r = x;
    while (parent_[r] != r) {
      s *= rel_[r];
      r = parent_[r];
    }
    // path compression
    int acc = s;
    std::size_t cur = x;
    while (parent_[cur] != r) {
      const std::size_t next = parent_[cur];
      const int here = rel_[cur];
      parent_[cur] = r;
      rel_[cur] = static_cast<std::int8_t>(acc);
      acc *= here;
      cur = next;
    }
    return {r, s};
  }

  void kill(std::size_t x) { zero_[find(x).first] = true; }

  void unite(std::size_t x, std::size_t y, int s) {
    auto [rx, sx] = find(x);
    auto [ry, sy] = find(y);
    const int t = sx * s * sy;  // rx = t * ry
    if (rx == ry) {
      if (t == -1) zero_[rx] = true;
      return;
    }
    parent_[rx] = ry;
    rel_[rx] = static_cast<std::int8_t>(t);
    if (zero_[rx]) zero_[ry] = true;
  }

  bool is_zero_root(std::size_t r) const { return zero_[r]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::int8_t> rel_;
  std::vector<bool> zero_;
};

using SparseRow = std::vector<std::pair<int, Rational>>;

// Incremental sparse row reduction over Q, finished into reduced form.
class SparseEchelon {
 public:
  explicit SparseEchelon(int cols) : pivot_row_(static_cast<std::size_t>(cols), -1) {}

  void add(std::map<int, Rational> row) {
    auto it = row.begin();
    while (it != row.end()) {
      const int col = it->first;
      const int pr = pivot_row_[static_cast<std::size_t>(col)];
      if (pr < 0) {
        ++it;
        continue;
      }
      const Rational v = it->second;
      const auto& prow = rows_[static_cast<std::size_t>(pr)];
      for (std::size_t e = 1; e < prow.size(); ++e) {
        auto [pos, inserted] = row.try_emplace(prow[e].first, 0);
        pos->second -= v * prow[e].second;
        if (pos->second == 0) row.erase(pos);
      }
      it = row.erase(it);
    }
    if (row.empty()) return;
    const Rational lead = row.begin()->second;
    SparseRow stored;
    stored.reserve(row.size());
    for (auto& [c, v] : row) stored.emplace_back(c, v / lead);
    pivot_row_[static_cast<std::size_t>(stored.front().first)] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(stored));
  }

  // Back substitution: afterwards each pivot row has zeros in every other
  // pivot column.
  void finish() {
    std::vector<int> order;
    for (std::size_t c = pivot_row_.size(); c-- > 0;)
      if (pivot_row_[c] >= 0) order.push_back(pivot_row_[c]);
    for (int r : order) {
      auto& row = rows_[static_cast<std::size_t>(r)];
      bool touched = false;
      for (std::size_t e = 1; e < row.size(); ++e)
        if (pivot_row_[static_cast<std::size_t>(row[e].first)] >= 0) touched = true;
      if (!touched) continue;
      std::map<int, Rational> acc;
      for (std::size_t e = 1; e < row.size(); ++e) {
        const int c = row[e].first;
        const int pr = pivot_row_[static_cast<std::size_t>(c)];
        if (pr < 0) {
          acc[c] += row[e].second;
          continue;
        }
        for (std::size_t f = 1; f < rows_[static_cast<std::size_t>(pr)].size(); ++f) {
          const auto& [c2, w] = rows_[static_cast<std::size_t>(pr)][f];
          acc[c2] -= row[e].second * w;
        }
      }
      SparseRow fresh{row.front()};
      for (auto& [c, v] : acc)
        if (v != 0) fresh.emplace_back(c, v);
      row = std::move(fresh);
    }
  }

  int pivot_row(int col) const { return pivot_row_[static_cast<std::size_t>(col)]; }
  const SparseRow& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }

 private:
  std::vector<int> pivot_row_;
  std::vector<SparseRow> rows_;
};

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Cusp classes e(u, v) for primitive (u, v) mod N, with the scalar relating
// each vector to its class representative (0 when the class vanishes).
struct CuspClasses {
  std::vector<int> cls;      // N*N, -1 if not primitive
  std::vector<int> scalar;   // e(u, v) = scalar * e(class)
  int count = 0;
};

CuspClasses cusp_classes(std::int64_t n, int k, const DirichletCharacter& chi, Sign sign) {
  CuspClasses out;
  const auto cells = static_cast<std::size_t>(n * n);
  out.cls.assign(cells, -1);
  out.scalar.assign(cells, 0);
  std::vector<std::int64_t> units;
  for (std::int64_t l = 0; l < n; ++l)
    if (gcd(l, n) == 1) units.push_back(l);
  const int star = static_cast<int>(sign) * ((k % 2 == 0) ? 1 : -1);
  std::vector<std::size_t> stack;
  std::vector<int> raw_class(cells, -1);
  std::vector<bool> dead;
  for (std::int64_t u0 = 0; u0 < n; ++u0) {
    for (std::int64_t v0 = 0; v0 < n; ++v0) {
      const auto start = static_cast<std::size_t>(u0 * n + v0);
      if (raw_class[start] >= 0 || gcd(gcd(u0, v0), n) != 1) continue;
      const int id = static_cast<int>(dead.size());
      dead.push_back(false);
      raw_class[start] = id;
      out.scalar[start] = 1;
      stack.assign(1, start);
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        const std::int64_t u = static_cast<std::int64_t>(cur) / n, v = static_cast<std::int64_t>(cur) % n;
        const int s = out.scalar[cur];
        auto visit = [&](std::int64_t a, std::int64_t b, int m) {
          const auto c = static_cast<std::size_t>(mod(a, n) * n + mod(b, n));
          const int want = m * s;
          if (raw_class[c] < 0) {
            raw_class[c] = id;
            out.scalar[c] = want;
            stack.push_back(c);
          } else if (out.scalar[c] != want) {
            dead[static_cast<std::size_t>(id)] = true;
          }
        };
        for (std::int64_t l : units) visit(l * u, l * v, chi(l));
        visit(u, v + u, 1);
        visit(u, v - u, 1);
        if (star != 0) visit(-u, v, star);
      }
    }
  }
  std::vector<int> renumber(dead.size(), -1);
  for (std::size_t i = 0; i < dead.size(); ++i)
    if (!dead[i]) renumber[i] = out.count++;
  for (std::size_t c = 0; c < cells; ++c) {
    if (raw_class[c] < 0) continue;
    out.cls[c] = renumber[static_cast<std::size_t>(raw_class[c])];
    if (out.cls[c] < 0) out.scalar[c] = 0;
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------ build

ManinSymbolSpace build_space(std::int64_t level, int weight, const DirichletCharacter& chi_in, Sign sign) {
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  if (weight < 2) throw Error(ErrorKind::UnsupportedWeight, "modular symbols need weight >= 2");
  const DirichletCharacter chi = chi_in.lift(level);
  if (!parity_matches(chi, weight))
    throw Error(ErrorKind::ParityMismatch, "chi(-1) must equal (-1)^k");

  ManinSymbolSpace s;
  s.level_ = level;
  s.weight_ = weight;
  s.chi_ = chi;
  s.sign_ = sign;
  s.p1_ = std::make_shared<const P1List>(level);
  const P1List& p1 = *s.p1_;
  const std::size_t np = p1.size();
  const int top = weight - 2;
  const std::size_t gens = static_cast<std::size_t>(top + 1) * np;
  auto gen = [np](int j, std::size_t i) { return static_cast<std::size_t>(j) * np + i; };

  // Two-term relations.
  SignedUnionFind uf(gens);
  for (std::size_t i = 0; i < np; ++i) {
    bool killed = false;
    for (std::int64_t l : p1.stabilizer(i))
      if (chi(l) == -1) killed = true;
    if (killed)
      for (int j = 0; j <= top; ++j) uf.kill(gen(j, i));
  }
  for (std::size_t i = 0; i < np; ++i) {
    const auto [c, d] = p1.rep(i);
    const auto sig = p1.normalize(d, -c);
    const auto eta = p1.normalize(-c, d);
    for (int j = 0; j <= top; ++j) {
      const int parity = (j % 2 == 0) ? 1 : -1;
      // x + x sigma = 0, x sigma = (-1)^j chi(l) [X^(k-2-j) Y^j, (d, -c)]
      uf.unite(gen(j, i), gen(top - j, static_cast<std::size_t>(sig.index)), -parity * chi(sig.scalar));
      // x = sign * x eta, x eta = (-1)^j chi(l) [X^j Y^(k-2-j), (-c, d)]
      if (sign != Sign::Full)
        uf.unite(gen(j, i), gen(j, static_cast<std::size_t>(eta.index)),
                 static_cast<int>(sign) * parity * chi(eta.scalar));
    }
  }
  s.gen_free_.assign(gens, -1);
  s.gen_sign_.assign(gens, 0);
  std::vector<int> root_free(gens, -1);
  for (std::size_t g = 0; g < gens; ++g) {
    const auto [r, sg] = uf.find(g);
    if (uf.is_zero_root(r)) continue;
    if (root_free[r] < 0) {
      root_free[r] = static_cast<int>(s.free_gens_.size());
      s.free_gens_.push_back(r);
    }
    s.gen_free_[g] = root_free[r];
    s.gen_sign_[g] = static_cast<std::int8_t>(sg);
  }
  // free_gens_ holds roots; express them as the generator itself (sign +1).
  const int nfree = static_cast<int>(s.free_gens_.size());

  // Three-term relations x + x tau + x tau^2 = 0, one tau-orbit at a time.
  SparseEchelon ech(nfree);
  std::vector<bool> seen(np, false);
  const Mat2 tau{0, -1, 1, -1}, tau2{-1, 1, -1, 0};
  const PolyPowers tau_pow(tau, top), tau2_pow(tau2, top);
  for (std::size_t i = 0; i < np; ++i) {
    if (seen[i]) continue;
    const auto [c, d] = p1.rep(i);
    const auto t1 = p1.normalize(d, -c - d);
    const auto t2 = p1.normalize(-c - d, c);
    seen[i] = seen[static_cast<std::size_t>(t1.index)] = seen[static_cast<std::size_t>(t2.index)] = true;
    for (int j = 0; j <= top; ++j) {
      std::map<int, Rational> row;
      auto add = [&](std::size_t g, const Integer& coeff) {
        const int f = s.gen_free_[g];
        if (f < 0 || coeff == 0) return;
        auto [pos, inserted] = row.try_emplace(f, 0);
        pos->second += Rational(coeff * s.gen_sign_[g]);
        if (pos->second == 0) row.erase(pos);
      };
      add(gen(j, i), Integer(1));
      const auto p1c = tau_pow.product(j, top - j);
      const auto p2c = tau2_pow.product(j, top - j);
      for (int t = 0; t <= top; ++t) {
        add(gen(t, static_cast<std::size_t>(t1.index)), p1c[static_cast<std::size_t>(t)] * chi(t1.scalar));
        add(gen(t, static_cast<std::size_t>(t2.index)), p2c[static_cast<std::size_t>(t)] * chi(t2.scalar));
      }
      if (!row.empty()) ech.add(std::move(row));
    }
  }
  ech.finish();

  // Quotient basis: free generators that are not pivots.
  std::vector<int> qindex(static_cast<std::size_t>(nfree), -1);
  for (int f = 0; f < nfree; ++f) {
    if (ech.pivot_row(f) >= 0) continue;
    qindex[static_cast<std::size_t>(f)] = static_cast<int>(s.quotient_gens_.size());
    s.quotient_gens_.push_back(s.free_gens_[static_cast<std::size_t>(f)]);
  }
  Integer lcm_den(1);
  for (int f = 0; f < nfree; ++f) {
    const int pr = ech.pivot_row(f);
    if (pr < 0) continue;
    for (const auto& [c, v] : ech.row(pr)) {
      const Integer den = denominator(v);
      lcm_den = lcm_den / boost::multiprecision::gcd(lcm_den, den) * den;
    }
  }
  s.quotient_denominator_ = lcm_den;
  s.free_to_quotient_.resize(static_cast<std::size_t>(nfree));
  for (int f = 0; f < nfree; ++f) {
    auto& out = s.free_to_quotient_[static_cast<std::size_t>(f)];
    const int pr = ech.pivot_row(f);
    if (pr < 0) {
      out.emplace_back(qindex[static_cast<std::size_t>(f)], lcm_den);
      continue;
    }
    const auto& row = ech.row(pr);
    for (std::size_t e = 1; e < row.size(); ++e) {
      const Rational scaled = -row[e].second * Rational(lcm_den);
      out.emplace_back(qindex[static_cast<std::size_t>(row[e].first)], numerator(scaled));
    }
  }

  // Boundary map and cuspidal subspace.
  const CuspClasses cusps = cusp_classes(level, weight, chi, sign);
  const Index dim = s.dimension();
  s.boundary_ = RationalMatrix::Zero(dim, cusps.count);
  for (Index q = 0; q < dim; ++q) {
    const std::size_t g = s.quotient_gens_[static_cast<std::size_t>(q)];
    const int j = static_cast<int>(g / np);
    const auto [c, d] = p1.rep(g % np);
    auto hit = [&](std::int64_t u, std::int64_t v, int m) {
      const auto cell = static_cast<std::size_t>(mod(u, level) * level + mod(v, level));
      const int cl = cusps.cls[cell];
      if (cl >= 0) s.boundary_(q, cl) += m * cusps.scalar[cell];
    };
    if (j == top) hit(c, d, 1);
    if (j == 0) hit(d, -c, -1);
  }
  const RationalMatrix cusp_space = left_nullspace(s.boundary_);
  s.cuspidal_ = rref(cusp_space);

  std::string text = std::to_string(level) + "|" + std::to_string(weight) + "|" + chi.spec() + "|" +
                     to_string(sign) + "|";
  for (Index r = 0; r < s.cuspidal_.reduced.rows(); ++r) {
    for (Index c = 0; c < s.cuspidal_.reduced.cols(); ++c) text += to_string(s.cuspidal_.reduced(r, c)) + ",";
    text += ";";
  }
  s.fingerprint_ = fnv1a_hex(text);
  return s;
}

SpaceProvenance ManinSymbolSpace::provenance() const {
  return {level_, weight_, chi_.spec(), sign_, fingerprint_};
}

RationalRow ManinSymbolSpace::symbol_coordinates(std::size_t g) const {
  RationalRow out = RationalRow::Zero(dimension());
  const int f = gen_free_.at(g);
  if (f < 0) return out;
  for (const auto& [q, v] : free_to_quotient_[static_cast<std::size_t>(f)])
    out(q) = Rational(v * gen_sign_[g], quotient_denominator_);
  return out;
}

RationalMatrix ManinSymbolSpace::apply_matrices(const std::vector<Mat2>& mats,
                                                const std::vector<Index>& which) const {
  const std::size_t np = p1_->size();
  const int top = weight_ - 2;
  const std::size_t nfree = free_gens_.size();
  std::vector<std::vector<Integer>> acc(which.size(), std::vector<Integer>(nfree));

  // Rows grouped by the X-degree of their generator.
  std::vector<std::vector<std::size_t>> by_degree(static_cast<std::size_t>(top + 1));
  for (std::size_t r = 0; r < which.size(); ++r) {
    const std::size_t g = quotient_gens_[static_cast<std::size_t>(which[r])];
    by_degree[g / np].push_back(r);
  }
  for (const Mat2& h : mats) {
    const PolyPowers pw(h, top);
    for (int j = 0; j <= top; ++j) {
      const auto& rows = by_degree[static_cast<std::size_t>(j)];
      if (rows.empty()) continue;
      const std::vector<Integer> poly = pw.product(j, top - j);
      for (std::size_t r : rows) {
        const std::size_t g = quotient_gens_[static_cast<std::size_t>(which[r])];
        const auto [c, d] = p1_->rep(g % np);
        const auto nm = p1_->normalize(c * h.a + d * h.c, c * h.b + d * h.d);
        if (nm.index < 0) continue;
        const int ch = chi_(nm.scalar);
        if (ch == 0) continue;
        auto& row = acc[r];
        for (int t = 0; t <= top; ++t) {
          const Integer& coeff = poly[static_cast<std::size_t>(t)];
          if (coeff == 0) continue;
          const std::size_t g2 = static_cast<std::size_t>(t) * np + static_cast<std::size_t>(nm.index);
          const int f = gen_free_[g2];
          if (f < 0) continue;
          mpz_ptr target = row[static_cast<std::size_t>(f)].backend().data();
          if (ch * gen_sign_[g2] > 0)
            mpz_add(target, target, coeff.backend().data());
          else
            mpz_sub(target, target, coeff.backend().data());
        }
      }
    }
  }

  const Index dim = dimension();
  RationalMatrix out(static_cast<Index>(which.size()), dim);
  std::vector<Integer> numer(static_cast<std::size_t>(dim));
  for (std::size_t r = 0; r < which.size(); ++r) {
    for (auto& z : numer) z = 0;
    for (std::size_t f = 0; f < nfree; ++f) {
      const Integer& a = acc[r][f];
      if (a == 0) continue;
      for (const auto& [q, v] : free_to_quotient_[f])
        mpz_addmul(numer[static_cast<std::size_t>(q)].backend().data(), a.backend().data(), v.backend().data());
    }
    for (Index q = 0; q < dim; ++q)
      out(static_cast<Index>(r), q) = Rational(numer[static_cast<std::size_t>(q)], quotient_denominator_);
  }
  return out;
}

RationalMatrix ManinSymbolSpace::hecke_on_quotient(std::int64_t n, HeilbronnFamily family) const {
  std::vector<Index> all(static_cast<std::size_t>(dimension()));
  std::iota(all.begin(), all.end(), Index{0});
  const bool cremona = family == HeilbronnFamily::Cremona ||
                       (family == HeilbronnFamily::Automatic && is_prime(n));
  return apply_matrices(cremona ? heilbronn_cremona(n) : heilbronn_merel(n), all);
}

RationalMatrix ManinSymbolSpace::star_on_quotient() const {
  std::vector<Index> all(static_cast<std::size_t>(dimension()));
  std::iota(all.begin(), all.end(), Index{0});
  return apply_matrices({Mat2{-1, 0, 0, 1}}, all);
}

RationalMatrix ManinSymbolSpace::restrict_to_cuspidal(const RationalMatrix& op) const {
  if (cuspidal_dimension() == 0) return RationalMatrix(0, 0);
  return coordinates_in_echelon_basis(multiply(cuspidal_.reduced, op), cuspidal_);
}

HeckeMatrix hecke_matrix(const ManinSymbolSpace& space, std::int64_t n, HeilbronnFamily family) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Hecke index must be positive");
  HeckeMatrix out;
  out.index = n;
  out.provenance = space.provenance();
  const EchelonForm& basis = space.cuspidal_basis();
  const Index cdim = space.cuspidal_dimension();
  if (cdim == 0) {
    out.matrix = RationalMatrix(0, 0);
    return out;
  }
  // Only rows in the support of the cuspidal basis are needed.
  std::vector<Index> support;
  for (Index c = 0; c < basis.reduced.cols(); ++c) {
    for (Index r = 0; r < cdim; ++r)
      if (basis.reduced(r, c) != 0) {
        support.push_back(c);
        break;
      }
  }
  const bool cremona = family == HeilbronnFamily::Cremona ||
                       (family == HeilbronnFamily::Automatic && is_prime(n));
  const std::vector<Mat2> mats = cremona ? heilbronn_cremona(n) : heilbronn_merel(n);
  RationalMatrix coeff(cdim, static_cast<Index>(support.size()));
  for (std::size_t s = 0; s < support.size(); ++s) coeff.col(static_cast<Index>(s)) = basis.reduced.col(support[s]);
  const RationalMatrix images = multiply(coeff, space.apply_matrices(mats, support));
  out.matrix = coordinates_in_echelon_basis(images, basis);
  return out;
}

RationalMatrix star_matrix(const ManinSymbolSpace& space) {
  const Index cdim = space.cuspidal_dimension();
  if (space.sign() != Sign::Full) return identity(cdim) * Rational(static_cast<int>(space.sign()));
  return space.restrict_to_cuspidal(space.star_on_quotient());
}

// ------------------------------------------------------- dimension formula

std::int64_t dim_cusp(std::int64_t level, int weight, const DirichletCharacter& chi_in) {
  if (weight < 2) throw Error(ErrorKind::UnsupportedWeight, "dimension formula needs weight >= 2");
  const DirichletCharacter chi = chi_in.lift(level);
  if (!parity_matches(chi, weight)) throw Error(ErrorKind::ParityMismatch, "chi(-1) must equal (-1)^k");
  const std::int64_t cond = chi.conductor();

  Rational total = Rational(static_cast<long>(weight - 1) * gamma0_index(level), 12);
  Integer prod(1);
  for (const auto& pp : factor(level)) {
    const int r = pp.exponent;
    int s = 0;
    for (std::int64_t c = cond; c % pp.prime == 0; c /= pp.prime) ++s;
    auto pw = [&](int e) {
      Integer z(1);
      for (int i = 0; i < e; ++i) z *= pp.prime;
      return z;
    };
    if (2 * s <= r) {
      if (r % 2 == 0)
        prod *= pw(r / 2) + pw(r / 2 - 1);
      else
        prod *= 2 * pw((r - 1) / 2);
    } else {
      prod *= 2 * pw(r - s);
    }
  }
  total -= Rational(prod, 2);

  Rational g4(0), g3(0);
  if (weight % 4 == 2) g4 = Rational(-1, 4);
  if (weight % 4 == 0) g4 = Rational(1, 4);
  if (weight % 3 == 2) g3 = Rational(-1, 3);
  if (weight % 3 == 0) g3 = Rational(1, 3);
  long s4 = 0, s3 = 0;
  for (std::int64_t x = 0; x < level; ++x) {
    if ((x * x + 1) % level == 0) s4 += chi(x);
    if ((x * x + x + 1) % level == 0) s3 += chi(x);
  }
  total += g4 * s4 + g3 * s3;
  if (weight == 2 && chi.is_trivial()) total += 1;
  if (!is_integral(total) || total < 0)
    throw Error(ErrorKind::InvariantViolation, "dimension formula produced " + to_string(total));
  return static_cast<std::int64_t>(numerator(total));
}

}  // namespace hmult
