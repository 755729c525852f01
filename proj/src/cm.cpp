#include "hmult/cm.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>

#include "hmult/error.hpp"

namespace hmult {

QuadraticOrder::QuadraticOrder(std::int64_t d) : d_(d) {
  if (d >= 0 || !is_fundamental_discriminant(d))
    throw Error(ErrorKind::NotFundamental, std::to_string(d) + " is not a negative fundamental discriminant");
  if (mod(d, 4) == 1) {
    trace_ = 1;
    norm_ = (1 - d) / 4;
  } else {
    trace_ = 0;
    norm_ = -d / 4;
  }
  // norm(x + y omega) = 1 forces |y| <= 1 and |x| <= 1
  for (long y = -1; y <= 1; ++y)
    for (long x = -1; x <= 1; ++x) {
      OElement u{Integer(x), Integer(y)};
      if (norm(u) == 1) units_.push_back(u);
    }
}

OElement QuadraticOrder::mul(const OElement& a, const OElement& b) const {
  return {a.x * b.x - norm_ * a.y * b.y, a.x * b.y + a.y * b.x + trace_ * a.y * b.y};
}

OElement QuadraticOrder::pow(OElement a, int e) const {
  OElement r{Integer(1), Integer(0)};
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

OElement QuadraticOrder::conj(const OElement& a) const { return {a.x + trace_ * a.y, -a.y}; }

Integer QuadraticOrder::norm(const OElement& a) const {
  return a.x * a.x + trace_ * a.x * a.y + norm_ * a.y * a.y;
}

OElement QuadraticOrder::sqrt_d() const {
  return trace_ == 1 ? OElement{Integer(-1), Integer(2)} : OElement{Integer(0), Integer(2)};
}

bool has_class_number_one(std::int64_t d) {
  static const std::int64_t list[] = {-3, -4, -7, -8, -11, -19, -43, -67, -163};
  return std::find(std::begin(list), std::end(list), d) != std::end(list);
}

namespace {

std::int64_t small(const Integer& z) { return z.convert_to<std::int64_t>(); }

// Residues of O modulo m O, canonical via the Hermite form of the lattice
// spanned by m and m * omega: {(A, 0), (B, C)}.
class ResidueRing {
 public:
  ResidueRing(const QuadraticOrder& o, const OElement& m) : o_(o) {
    const OElement mw = o.mul(m, OElement{Integer(0), Integer(1)});
    std::int64_t x1 = small(m.x), y1 = small(m.y), x2 = small(mw.x), y2 = small(mw.y);
    // extended gcd on the y coordinates
    std::int64_t s0 = 1, t0 = 0, s1 = 0, t1 = 1, a = y1, b = y2;
    while (b != 0) {
      const std::int64_t q = a / b;
      std::swap(a, b);
      b -= q * a;
      std::swap(s0, s1);
      s1 -= q * s0;
      std::swap(t0, t1);
      t1 -= q * t0;
    }
    if (a < 0) {
      a = -a;
      s0 = -s0;
      t0 = -t0;
    }
    c_ = a;
    b_ = s0 * x1 + t0 * x2;
    a_ = std::llabs((y2 / c_) * x1 - (y1 / c_) * x2);
    if (a_ == 0 || c_ == 0) throw Error(ErrorKind::InvalidArgument, "conductor must be nonzero");
    b_ = mod(b_, a_);
    for (std::int64_t y = 0; y < c_; ++y)
      for (std::int64_t x = 0; x < a_; ++x) all_.push_back({x, y});
    const Residue one = reduce(OElement{Integer(1), Integer(0)});
    for (const auto& r : all_)
      for (const auto& s : all_)
        if (reduce(o_.mul(lift(r), lift(s))) == one) {
          units_.insert(r);
          break;
        }
  }

  using Residue = std::pair<std::int64_t, std::int64_t>;

  Residue reduce(const OElement& e) const {
    Integer x = e.x, y = e.y;
    Integer q = y / c_;
    if (y - q * c_ < 0) q -= 1;  // floor division
    y -= q * c_;
    x -= q * b_;
    Integer r = x % a_;
    if (r < 0) r += a_;
    return {small(r), small(y)};
  }

  OElement lift(const Residue& r) const { return {Integer(r.first), Integer(r.second)}; }
  bool is_unit(const Residue& r) const { return units_.count(r) > 0; }
  const std::set<Residue>& units() const { return units_; }
  std::int64_t size() const { return a_ * c_; }

 private:
  const QuadraticOrder& o_;
  std::int64_t a_ = 1, b_ = 0, c_ = 1;
  std::vector<Residue> all_;
  std::set<Residue> units_;
};

std::string cm_character_tag(const QuadraticOrder& o, const ResidueRing& ring,
                             const std::map<ResidueRing::Residue, OElement>& eps, std::int64_t level) {
  // psi(n) = chi_D(n) eps(n) on integers prime to the level
  std::vector<int> values(static_cast<std::size_t>(level), 0);
  for (std::int64_t n = 1; n < level + 1; ++n) {
    if (gcd(n, level) != 1) continue;
    const auto it = eps.find(ring.reduce(OElement{Integer(n), Integer(0)}));
    if (it == eps.end() || it->second.y != 0) return "unknown";
    values[static_cast<std::size_t>(n % level)] = kronecker(o.discriminant(), n) * small(it->second.x);
  }
  auto matches = [&](const DirichletCharacter& c) {
    for (std::int64_t n = 0; n < level; ++n)
      if (gcd(n, level) == 1 && c(n) != values[static_cast<std::size_t>(n)]) return false;
    return true;
  };
  if (matches(DirichletCharacter::trivial(level))) return "trivial";
  for (std::int64_t d = -level; d <= level; ++d) {
    if (d == 0 || d == 1 || !is_fundamental_discriminant(d) || level % std::llabs(d) != 0) continue;
    const DirichletCharacter c = DirichletCharacter::kronecker(d, level);
    if (matches(c)) return c.base_spec();
  }
  return "unknown";
}

}  // namespace

QSeries cm_qexp(const HeckeCharacterSpec& xi, std::size_t precision) {
  if (!is_fundamental_discriminant(xi.discriminant) || xi.discriminant >= 0)
    throw Error(ErrorKind::NotFundamental, std::to_string(xi.discriminant) + " is not a negative fundamental discriminant");
  if (!has_class_number_one(xi.discriminant))
    throw Error(ErrorKind::ClassNumberNotOne, "class number of " + std::to_string(xi.discriminant) + " is not 1");
  if (xi.weight < 1) throw Error(ErrorKind::InvalidArgument, "Hecke character weight must be positive");
  const QuadraticOrder o(xi.discriminant);
  const Integer nm = o.norm(xi.conductor);
  if (nm == 0) throw Error(ErrorKind::InvalidArgument, "conductor must be nonzero");
  const std::int64_t abs_d = -xi.discriminant;
  if (gcd(small(nm), abs_d) != 1 && !xi.allow_conductor_dividing_discriminant)
    throw Error(ErrorKind::InvalidArgument, "conductor is not prime to D (set the override to allow this)");
  const ResidueRing ring(o, xi.conductor);

  // eps as a table on (O/m)^*
  std::map<ResidueRing::Residue, OElement> eps;
  if (xi.epsilon.empty()) {
    for (const auto& u : o.units()) {
      const OElement value = o.pow(o.conj(u), xi.weight);  // u^(-w)
      const auto r = ring.reduce(u);
      auto [it, inserted] = eps.emplace(r, value);
      if (!inserted && !(it->second == value))
        throw Error(ErrorKind::UnitInconsistency, "no eps with eps(u) u^w = 1 exists for this conductor");
    }
    if (eps.size() != ring.units().size())
      throw Error(ErrorKind::InvalidArgument, "eps is not determined by the units; give its values explicitly");
  } else {
    eps.emplace(ring.reduce(OElement{Integer(1), Integer(0)}), OElement{Integer(1), Integer(0)});
    std::vector<ResidueRing::Residue> frontier{eps.begin()->first};
    while (!frontier.empty()) {
      const auto r = frontier.back();
      frontier.pop_back();
      const OElement value = eps.at(r);
      for (const auto& [g, gv] : xi.epsilon) {
        if (!ring.is_unit(ring.reduce(g))) throw Error(ErrorKind::InvalidArgument, "eps generator is not a unit mod m");
        if (o.norm(gv) != 1) throw Error(ErrorKind::InvalidArgument, "eps values must be roots of unity in O");
        const auto next = ring.reduce(o.mul(ring.lift(r), g));
        const OElement next_value = o.mul(value, gv);
        auto [it, inserted] = eps.emplace(next, next_value);
        if (inserted) frontier.push_back(next);
        else if (!(it->second == next_value))
          throw Error(ErrorKind::InvalidArgument, "eps values are not multiplicative");
      }
    }
    if (eps.size() != ring.units().size())
      throw Error(ErrorKind::InvalidArgument, "eps generators do not generate (O/m)^*");
  }
  for (const auto& u : o.units()) {
    const OElement check = o.mul(eps.at(ring.reduce(u)), o.pow(u, xi.weight));
    if (!(check == OElement{Integer(1), Integer(0)}))
      throw Error(ErrorKind::UnitInconsistency, "eps(u) u^w != 1 for a unit u");
  }

  // sum alpha^w eps(alpha) over alpha with norm <= B
  std::vector<OElement> sums(precision + 1);
  const auto bound = static_cast<std::int64_t>(precision);
  const std::int64_t ymax = static_cast<std::int64_t>(std::sqrt(4.0 * static_cast<double>(bound) / static_cast<double>(abs_d))) + 1;
  const std::int64_t t = mod(xi.discriminant, 4) == 1 ? 1 : 0;
  for (std::int64_t y = -ymax; y <= ymax; ++y) {
    const std::int64_t rest = 4 * bound - abs_d * y * y;
    if (rest < 0) continue;
    const auto span = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rest))) + 1;
    // (2x + t y)^2 <= rest
    for (std::int64_t x = (-span - t * y) / 2 - 1; x <= (span - t * y) / 2 + 1; ++x) {
      const OElement alpha{Integer(x), Integer(y)};
      const Integer n = o.norm(alpha);
      if (n < 1 || n > bound) continue;
      const auto it = eps.find(ring.reduce(alpha));
      if (it == eps.end()) continue;  // not prime to m
      const OElement term = o.mul(o.pow(alpha, xi.weight), it->second);
      auto& s = sums[static_cast<std::size_t>(small(n))];
      s.x += term.x;
      s.y += term.y;
    }
  }
  const auto units = static_cast<long>(o.units().size());
  std::vector<Rational> coeffs(precision);
  for (std::size_t n = 1; n <= precision; ++n) {
    if (sums[n].y != 0)
      throw Error(ErrorKind::NonRationalCoefficient, "a_" + std::to_string(n) + " is not rational");
    coeffs[n - 1] = Rational(sums[n].x, Integer(units));
  }
  const std::int64_t level = abs_d * small(nm);
  return QSeries(std::move(coeffs), xi.weight + 1, level, cm_character_tag(o, ring, eps, level));
}

std::vector<FundamentalDiscriminant> cm_discriminants(std::int64_t level) {
  std::vector<FundamentalDiscriminant> out;
  for (std::int64_t d = -3; d >= -level; --d)
    if (level % (-d) == 0 && is_fundamental_discriminant(d)) out.emplace_back(d);
  return out;
}

RationalMatrix cm_joint_kernel(HeckeStore& store, FundamentalDiscriminant d, std::int64_t p, int k,
                               const DirichletCharacter& chi, std::int64_t level_m, std::int64_t level_n) {
  const Index dim = store.hecke(level_m, k, chi, p)->matrix.rows();
  RationalMatrix kernel = identity(dim);
  const std::int64_t bound = sturm_bound(k, level_m * d.value() * d.value());
  for (std::int64_t q : primes_up_to(bound)) {
    if (kernel.rows() == 0) break;
    if (q == p || level_n % q == 0 || kronecker(d.value(), q) != -1) continue;
    const auto t = store.hecke(level_m, k, chi, q);
    const RationalMatrix image = multiply(kernel, t->matrix);
    const RationalMatrix coeffs = left_nullspace(image);
    if (coeffs.rows() == kernel.rows()) continue;
    kernel = coeffs.rows() == 0 ? RationalMatrix(0, dim) : rref(multiply(coeffs, kernel)).reduced;
  }
  return kernel;
}

CMCountReport multiplicity_cm(HeckeStore& store, std::int64_t p, int k, const DirichletCharacter& chi,
                              std::int64_t level) {
  check_multiplicity_query(p, k, chi, level);
  CMCountReport r;
  r.p = p;
  r.k = k;
  r.level = level;
  r.character = chi.base_spec();
  struct PerD {
    Index count = 0;
    RationalMatrix top;
  };
  const auto discs = cm_discriminants(level);
  std::vector<std::future<PerD>> jobs;
  for (const auto& d : discs)
    jobs.push_back(std::async(std::launch::async, [&store, d, p, k, &chi, level] {
      PerD out;
      if (!is_inert(d, p)) return out;
      for (std::int64_t m : character_levels(level, chi)) {
        const std::int64_t beta = divisor_count_inverse(level / m);
        if (beta == 0 || m % (-d.value()) != 0) continue;
        RationalMatrix kernel = cm_joint_kernel(store, d, p, k, chi, m, level);
        out.count += beta * kernel.rows();
        if (m == level) out.top = std::move(kernel);
      }
      return out;
    }));
  std::vector<RationalMatrix> top_kernels;
  for (std::size_t i = 0; i < discs.size(); ++i) {
    PerD res = jobs[i].get();
    if (res.count < 0) throw Error(ErrorKind::InvariantViolation, "negative CM newform count");
    r.per_discriminant.emplace_back(discs[i].value(), res.count);
    r.total += res.count;
    top_kernels.push_back(std::move(res.top));
  }
  // a newform has CM by at most one field
  for (std::size_t i = 0; i < top_kernels.size(); ++i)
    for (std::size_t j = i + 1; j < top_kernels.size(); ++j) {
      if (top_kernels[i].rows() == 0 || top_kernels[j].rows() == 0) continue;
      RationalMatrix stacked(top_kernels[i].rows() + top_kernels[j].rows(), top_kernels[i].cols());
      stacked << top_kernels[i], top_kernels[j];
      if (rank(stacked) != stacked.rows())
        throw Error(ErrorKind::InvariantViolation, "CM kernels for distinct discriminants intersect");
    }
  r.m_new_zero = multiplicity_new(store, p, Rational(0), k, chi, level);
  if (r.total > r.m_new_zero) throw Error(ErrorKind::InvariantViolation, "m_cm exceeds m_new(0)");
  return r;
}

std::vector<ConjectureRow> verify_conjecture(HeckeStore& store, std::int64_t p, const DirichletCharacter& chi,
                                             std::int64_t level, const std::vector<int>& weights) {
  std::vector<ConjectureRow> rows;
  for (int k : weights) {
    const CMCountReport r = multiplicity_cm(store, p, k, chi, level);
    rows.push_back({k, r.m_new_zero, r.total, r.m_new_zero == r.total});
  }
  return rows;
}

}  // namespace hmult
