#include "hmult/mult.hpp"

#include <gmp.h>

#include <fstream>
#include <sstream>
#include <thread>

#include "hmult/error.hpp"
#include "hmult/serialize.hpp"

namespace hmult {

namespace fs = std::filesystem;

namespace {

std::string sign_word(Sign s) {
  switch (s) {
    case Sign::Plus: return "plus";
    case Sign::Minus: return "minus";
    case Sign::Full: return "full";
  }
  return "?";
}

std::string file_safe(std::string s) {
  for (char& c : s) {
    if (c == '-') c = 'm';
    else if (c == ':' || c == ',') c = '_';
  }
  return s;
}

std::string space_key(std::int64_t level, int weight, const DirichletCharacter& chi, Sign sign) {
  return std::to_string(level) + "/" + std::to_string(weight) + "/" + chi.base_spec() + "/" + sign_word(sign);
}

// Computes each key once; concurrent callers for the same key wait on the
// first one.
template <typename T, typename F>
std::shared_ptr<const T> memoize(std::mutex& mutex,
                                 std::map<std::string, std::shared_future<std::shared_ptr<const T>>>& table,
                                 const std::string& key, std::atomic<std::uint64_t>& hits, F compute) {
  std::promise<std::shared_ptr<const T>> promise;
  std::shared_future<std::shared_ptr<const T>> fut;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = table.find(key);
    if (it != table.end()) {
      fut = it->second;
    } else {
      fut = promise.get_future().share();
      table.emplace(key, fut);
      owner = true;
    }
  }
  if (!owner) {
    ++hits;
    return fut.get();
  }
  try {
    std::shared_ptr<const T> value = compute();
    promise.set_value(value);
    return value;
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard<std::mutex> lock(mutex);
    table.erase(key);
    throw;
  }
}

}  // namespace

HeckeStore::HeckeStore(std::optional<fs::path> cache_dir) : cache_dir_(std::move(cache_dir)) {
  if (cache_dir_) fs::create_directories(*cache_dir_);
}

std::string HeckeStore::cache_key(std::int64_t level, int weight, const DirichletCharacter& chi, Sign sign,
                                  std::int64_t q) {
  return "v" + std::to_string(kCacheSchemaVersion) + "_N" + std::to_string(level) + "_k" + std::to_string(weight) +
         "_" + file_safe(chi.base_spec()) + "_" + sign_word(sign) + "_q" + std::to_string(q);
}

std::shared_ptr<const ManinSymbolSpace> HeckeStore::space(std::int64_t level, int weight,
                                                          const DirichletCharacter& chi, Sign sign) {
  return memoize<ManinSymbolSpace>(mutex_, spaces_, space_key(level, weight, chi, sign), memory_hits_, [&] {
    auto s = std::make_shared<const ManinSymbolSpace>(build_space(level, weight, chi, sign));
    ++spaces_built_;
    return s;
  });
}

std::shared_ptr<const HeckeMatrix> HeckeStore::hecke(std::int64_t level, int weight, const DirichletCharacter& chi,
                                                     std::int64_t q, Sign sign) {
  const std::string key = cache_key(level, weight, chi, sign, q);
  return memoize<HeckeMatrix>(mutex_, matrices_, key, memory_hits_, [&]() -> std::shared_ptr<const HeckeMatrix> {
    if (auto cached = load(key)) {
      ++disk_hits_;
      return std::make_shared<const HeckeMatrix>(std::move(*cached));
    }
    auto s = space(level, weight, chi, sign);
    auto m = std::make_shared<const HeckeMatrix>(hecke_matrix(*s, q));
    ++matrices_computed_;
    save(key, *m);
    return m;
  });
}

std::optional<HeckeMatrix> HeckeStore::load(const std::string& key) const {
  if (!cache_dir_) return std::nullopt;
  const fs::path path = *cache_dir_ / (key + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const Json j = Json::parse(in);
    if (j.at("schema").get<int>() != kCacheSchemaVersion || j.at("key").get<std::string>() != key)
      return std::nullopt;
    HeckeMatrix m;
    m.index = j.at("index").get<std::int64_t>();
    const auto& prov = j.at("provenance");
    m.provenance.level = prov.at("level").get<std::int64_t>();
    m.provenance.weight = prov.at("weight").get<int>();
    m.provenance.character = prov.at("character").get<std::string>();
    m.provenance.sign = static_cast<Sign>(prov.at("sign").get<int>());
    m.provenance.basis_fingerprint = prov.at("fingerprint").get<std::string>();
    m.matrix = matrix_from_json(j.at("matrix"));
    return m;
  } catch (const std::exception&) {
    // unreadable entries are recomputed and overwritten
    return std::nullopt;
  }
}

void HeckeStore::save(const std::string& key, const HeckeMatrix& m) {
  if (!cache_dir_) return;
  Json j;
  j["schema"] = kCacheSchemaVersion;
  j["key"] = key;
  j["index"] = m.index;
  j["provenance"] = Json{{"level", m.provenance.level},
                         {"weight", m.provenance.weight},
                         {"character", m.provenance.character},
                         {"sign", static_cast<int>(m.provenance.sign)},
                         {"fingerprint", m.provenance.basis_fingerprint}};
  j["matrix"] = matrix_to_json(m.matrix);
  const fs::path final_path = *cache_dir_ / (key + ".json");
  std::ostringstream tmp_name;
  tmp_name << key << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id());
  const fs::path tmp = *cache_dir_ / tmp_name.str();
  {
    std::ofstream out(tmp);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write cache file " + tmp.string());
    out << j.dump() << '\n';
  }
  fs::rename(tmp, final_path);
  ++disk_writes_;
}

StoreCounters HeckeStore::counters() const {
  return {spaces_built_.load(), matrices_computed_.load(), memory_hits_.load(), disk_hits_.load(),
          disk_writes_.load()};
}

// ------------------------------------------------------------ multiplicity

void check_multiplicity_query(std::int64_t p, int k, const DirichletCharacter& chi, std::int64_t level) {
  if (level < 1) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (k < 2) throw Error(ErrorKind::UnsupportedWeight, "weight must be at least 2");
  if (level % p == 0) throw Error(ErrorKind::PDividesLevel, "p divides N");
  if (level % chi.conductor() != 0)
    throw Error(ErrorKind::CharacterLevelMismatch, "conductor of " + chi.base_spec() + " does not divide N");
  if (!parity_matches(chi, k)) throw Error(ErrorKind::ParityMismatch, "chi(-1) must equal (-1)^k");
}

std::vector<std::int64_t> character_levels(std::int64_t level, const DirichletCharacter& chi) {
  std::vector<std::int64_t> out;
  for (std::int64_t m : divisors(level))
    if (m % chi.conductor() == 0) out.push_back(m);
  return out;
}

std::int64_t divisor_count_inverse(std::int64_t n) {
  std::int64_t out = 1;
  for (const auto& pp : factor(n)) {
    if (pp.exponent == 1) out *= -2;
    else if (pp.exponent >= 3) return 0;
  }
  return out;
}

Index dimension_full(HeckeStore& store, std::int64_t p, int k, const DirichletCharacter& chi, std::int64_t level) {
  check_multiplicity_query(p, k, chi, level);
  return store.hecke(level, k, chi, p)->matrix.rows();
}

Index dimension_new(HeckeStore& store, std::int64_t p, int k, const DirichletCharacter& chi, std::int64_t level) {
  check_multiplicity_query(p, k, chi, level);
  Index total = 0;
  for (std::int64_t m : character_levels(level, chi)) {
    const std::int64_t beta = divisor_count_inverse(level / m);
    if (beta != 0) total += beta * dimension_full(store, p, k, chi, m);
  }
  return total;
}

Index multiplicity_full(HeckeStore& store, std::int64_t p, const Rational& lambda, int k,
                        const DirichletCharacter& chi, std::int64_t level) {
  check_multiplicity_query(p, k, chi, level);
  const auto t = store.hecke(level, k, chi, p);
  const Index n = t->matrix.rows();
  if (n == 0) return 0;
  if (lambda == 0) return nullity(t->matrix);
  return nullity(t->matrix - lambda * identity(n));
}

Index multiplicity_new(HeckeStore& store, std::int64_t p, const Rational& lambda, int k,
                       const DirichletCharacter& chi, std::int64_t level) {
  check_multiplicity_query(p, k, chi, level);
  Index total = 0;
  for (std::int64_t m : character_levels(level, chi)) {
    const std::int64_t beta = divisor_count_inverse(level / m);
    if (beta != 0) total += beta * multiplicity_full(store, p, lambda, k, chi, m);
  }
  return total;
}

std::vector<Slope> slope_profile(HeckeStore& store, std::int64_t p, int k, const DirichletCharacter& chi,
                                 std::int64_t level) {
  check_multiplicity_query(p, k, chi, level);
  const auto t = store.hecke(level, k, chi, p);
  if (t->matrix.rows() == 0) return {};
  return newton_slopes(charpoly(t->matrix), p);
}

MultiplicityReport multiplicity_report(HeckeStore& store, std::int64_t p, const Rational& lambda, int k,
                                       const DirichletCharacter& chi, std::int64_t level) {
  check_multiplicity_query(p, k, chi, level);
  MultiplicityReport r;
  r.p = p;
  r.lambda = lambda;
  r.k = k;
  r.level = level;
  r.character = chi.base_spec();
  r.dim_full = dimension_full(store, p, k, chi, level);
  r.dim_new = dimension_new(store, p, k, chi, level);
  r.m_full = multiplicity_full(store, p, lambda, k, chi, level);
  r.m_new = multiplicity_new(store, p, lambda, k, chi, level);
  r.slopes = slope_profile(store, p, k, chi, level);
  for (std::int64_t m : character_levels(level, chi))
    if (divisor_count_inverse(level / m) != 0) r.provenance.push_back(HeckeStore::cache_key(m, k, chi, Sign::Plus, p));
  if (r.m_new < 0 || r.dim_new < 0 || r.m_full > r.dim_full || r.m_new > r.dim_new)
    throw Error(ErrorKind::InvariantViolation, "multiplicity bookkeeping out of range");
  return r;
}

// ------------------------------------------------------------ Deligne

DeligneCheck deligne_check(const IntPolynomial& f, std::int64_t q, int k, int chi_q) {
  DeligneCheck out;
  out.q = q;
  out.degree = f.degree();
  // radius = ceil(sqrt(4 q^(k-1) 10^14)) / 10^7
  Integer sq(4);
  for (int i = 0; i < k - 1; ++i) sq *= q;
  for (int i = 0; i < 14; ++i) sq *= 10;
  Integer root;
  mpz_sqrt(root.backend().data(), sq.backend().data());
  if (root * root != sq) root += 1;
  out.radius = Rational(root, Integer(10000000));
  if (f.degree() <= 0) {
    out.holds = true;
    return out;
  }

  IntPolynomial g = f;
  if (chi_q == -1) {
    // roots must be i t with t real: f only has terms of the parity of its
    // degree, and g(t) = i^(-n) f(i t) is real.
    const int n = f.degree();
    std::vector<Integer> c(static_cast<std::size_t>(n + 1));
    bool on_axis = true;
    for (int j = 0; j <= n; ++j) {
      const Integer& cj = f.coefficient(j);
      if ((n - j) % 2 != 0) {
        if (cj != 0) on_axis = false;
        continue;
      }
      c[static_cast<std::size_t>(j)] = ((n - j) / 2) % 2 == 0 ? cj : Integer(-cj);
    }
    if (!on_axis) {
      out.distinct_roots = count_real_roots(f, Rational(0), Rational(0)).distinct_roots;
      out.holds = false;
      return out;
    }
    g = IntPolynomial(std::move(c));
  }
  const RealRootCount count = count_real_roots(g, -out.radius, out.radius);
  out.distinct_roots = count.distinct_roots;
  out.roots_in_range = count.distinct_in_interval;
  out.holds = count.distinct_in_interval == count.distinct_roots;
  return out;
}

}  // namespace hmult
