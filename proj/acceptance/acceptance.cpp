// Acceptance suite: one PASS/FAIL line per criterion.
// usage: acceptance [path-to-hmult-cli] [--only N]

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "hmult/cm.hpp"
#include "hmult/error.hpp"
#include "hmult/modsym.hpp"
#include "hmult/mult.hpp"
#include "hmult/polynomial.hpp"
#include "hmult/qseries.hpp"
#include "hmult/report.hpp"
#include "hmult/weightred.hpp"

using namespace hmult;

namespace {

std::string g_cli;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (failures.size() < 8) failures.push_back(what);
    }
  }
};

struct Proc {
  int code = -1;
  std::string out;
};

Proc run(const std::string& args) {
  Proc p;
  const std::string cmd = g_cli + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return p;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) p.out.append(buf, n);
  const int status = pclose(f);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

Proc run_stderr(const std::string& args) {
  Proc p;
  const std::string cmd = g_cli + " " + args + " 2>&1 >/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return p;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) p.out.append(buf, n);
  const int status = pclose(f);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

std::string without_timestamp(const std::string& text) {
  Json j = Json::parse(text);
  j.erase("timestamp");
  return j.dump(2);
}

std::vector<std::int64_t> primes_not_dividing(std::int64_t level, std::size_t count) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; out.size() < count; ++q)
    if (is_prime(q) && level % q != 0) out.push_back(q);
  return out;
}

std::string pt(std::int64_t n, int k, const DirichletCharacter& chi) {
  return "N=" + std::to_string(n) + " k=" + std::to_string(k) + " chi=" + chi.base_spec();
}

// The one-dimensional kernel vector v must satisfy v T_q = a_q(f) v for every
// prime q not dividing the level up to the bound.
void kernel_matches_series(Outcome& o, HeckeStore& store, const RationalMatrix& kernel, std::int64_t level, int k,
                           const QSeries& f, std::int64_t bound, const std::string& label) {
  const auto triv = DirichletCharacter::trivial();
  if (kernel.rows() != 1) {
    o.require(false, label + ": kernel dimension " + std::to_string(kernel.rows()));
    return;
  }
  for (std::int64_t q : primes_up_to(bound)) {
    if (level % q == 0) continue;
    const RationalMatrix image = multiply(kernel, store.hecke(level, k, triv, q)->matrix);
    o.require(image == f[static_cast<std::size_t>(q)] * kernel,
              label + ": T_" + std::to_string(q) + " eigenvalue differs from a_q = " +
                  to_string(f[static_cast<std::size_t>(q)]));
  }
}

Outcome criterion1() {
  Outcome o;
  HeckeStore store;
  const auto triv = DirichletCharacter::trivial();
  for (int k : {12, 16, 18, 20, 22, 26}) {
    const auto vm = victor_miller_basis(k, 64);
    o.require(vm.size() == 1, "k=" + std::to_string(k) + ": Victor-Miller basis is not one-dimensional");
    if (vm.size() != 1) continue;
    for (std::int64_t q : {2, 3, 5, 7}) {
      const QSeries tf = hecke_qexp(vm[0], q, k, triv);
      const Rational oracle = tf[1];
      o.require(tf == oracle * vm[0].truncated(tf.precision()),
                "k=" + std::to_string(k) + " q=" + std::to_string(q) + ": q-expansion is not an eigenform");
      const RationalMatrix& t = store.hecke(1, k, triv, q)->matrix;
      o.require(t.rows() == 1 && t.cols() == 1 && t(0, 0) == oracle,
                "k=" + std::to_string(k) + " q=" + std::to_string(q) + ": modular symbols give " +
                    (t.size() == 1 ? to_string(t(0, 0)) : std::string("non-scalar")) + ", oracle " +
                    to_string(oracle));
    }
  }
  o.require(store.hecke(1, 12, triv, 2)->matrix(0, 0) == -24, "tau(2) != -24");
  o.require(store.hecke(1, 12, triv, 5)->matrix(0, 0) == 4830, "tau(5) != 4830");
  o.notes.push_back("24 operators, tau(2) = -24, tau(5) = 4830");
  return o;
}

Outcome criterion2() {
  Outcome o;
  HeckeStore store;
  const auto triv = DirichletCharacter::trivial();
  const Index full = multiplicity_full(store, 2, Rational(0), 4, triv, 9);
  const Index neu = multiplicity_new(store, 2, Rational(0), 4, triv, 9);
  const CMCountReport cm = multiplicity_cm(store, 2, 4, triv, 9);
  o.require(full == 1 && neu == 1 && cm.total == 1,
            "m_full, m_new, m_cm = " + std::to_string(full) + ", " + std::to_string(neu) + ", " +
                std::to_string(cm.total));

  const std::int64_t b = sturm_bound(4, 81);
  const QSeries eta = eta_quotient({{3, 8}}, 9, static_cast<std::size_t>(b));
  const RationalMatrix kernel = cm_joint_kernel(store, FundamentalDiscriminant(-3), 2, 4, triv, 9, 9);
  kernel_matches_series(o, store, kernel, 9, 4, eta, b, "eta(3z)^8");

  HeckeCharacterSpec xi;
  xi.discriminant = -3;
  xi.conductor = QuadraticOrder(-3).sqrt_d();
  xi.weight = 3;
  xi.allow_conductor_dividing_discriminant = true;
  const QSeries f = cm_qexp(xi, static_cast<std::size_t>(b));
  o.require(f == eta, "cm_qexp differs from eta(3z)^8 below the Sturm bound");
  o.require(f[7] == 20, "a_7 = " + to_string(f[7]));
  o.require(f.level() == 9 && f.weight() == 4 && f.character() == "trivial", "cm_qexp tags");
  o.notes.push_back("m_full = m_new = m_cm = 1, " + std::to_string(b) + " coefficients, a_7 = 20");
  return o;
}

Outcome criterion3() {
  Outcome o;
  HeckeStore store;
  const auto triv = DirichletCharacter::trivial();
  const Index neu = multiplicity_new(store, 5, Rational(0), 2, triv, 27);
  const CMCountReport cm = multiplicity_cm(store, 5, 2, triv, 27);
  o.require(neu == 1 && cm.total == 1, "m_new, m_cm = " + std::to_string(neu) + ", " + std::to_string(cm.total));
  const std::int64_t b = sturm_bound(2, 27 * 9);
  const QSeries eta = eta_quotient({{3, 2}, {9, 2}}, 27, static_cast<std::size_t>(b));
  const RationalMatrix kernel = cm_joint_kernel(store, FundamentalDiscriminant(-3), 5, 2, triv, 27, 27);
  kernel_matches_series(o, store, kernel, 27, 2, eta, b, "eta(3z)^2 eta(9z)^2");
  HeckeCharacterSpec xi;
  xi.discriminant = -3;
  xi.conductor = OElement{Integer(3), Integer(0)};
  xi.weight = 1;
  xi.allow_conductor_dividing_discriminant = true;
  o.require(cm_qexp(xi, static_cast<std::size_t>(b)) == eta, "cm_qexp differs from eta(3z)^2 eta(9z)^2");
  o.notes.push_back("m_new(0) = m_cm = 1");
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::size_t checked = 0;
  for (int p : {5, 7, 11, 13}) {
    const int m = p * p - 1;
    for (int k = 2; k <= 400; k += 2) {
      const std::string at = "p=" + std::to_string(p) + " k=" + std::to_string(k);
      int found = 0;
      for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b) {
          if ((b + p * a - (k - 1)) % m == 0) ++found;
          if ((a + b * p - (k - 1)) % m == 0) ++found;
        }
      o.require(found == 1, at + ": " + std::to_string(found) + " decompositions");
      try {
        const WeightReduction r = reduce_weight(p, k);
        o.require(r.matches == 1, at + ": reduce_weight matched " + std::to_string(r.matches));
        o.require(r.chosen.second >= 2 && 2 * r.chosen.second <= p + 3, at + ": chosen k' out of range");
        const WeightReduction s = reduce_weight(p, k + m);
        o.require(s.a == r.a && s.b == r.b && s.form == r.form && s.chosen == r.chosen, at + ": period fails");
      } catch (const Error& e) {
        o.require(false, at + ": " + e.what());
      }
      ++checked;
    }
  }
  const auto fixture = [&](int p, int k, int i, int kp) {
    const WeightReduction r = reduce_weight(p, k);
    o.require(r.chosen == std::pair<int, int>{i, kp},
              "fixture p=" + std::to_string(p) + " k=" + std::to_string(k));
  };
  fixture(5, 12, 1, 2);
  fixture(7, 22, 0, 4);
  fixture(5, 2, 0, 2);
  o.notes.push_back(std::to_string(checked) + " (p, k) pairs, 3 fixtures");
  return o;
}

struct SweepSpec {
  std::int64_t level;
  int k_max;
};
const std::vector<SweepSpec> kSweeps{{27, 12}, {1, 26}};

std::vector<SweepRow> sweep_rows() {
  HeckeStore store;
  std::vector<SweepRow> rows;
  for (const auto& s : kSweeps)
    for (int k = 2; k <= s.k_max; k += 2) rows.push_back(sweep_row(store, 5, DirichletCharacter::trivial(), s.level, k));
  return rows;
}

Outcome criterion5() {
  Outcome o;
  const auto rows = sweep_rows();
  for (const auto& r : rows)
    o.require(r.theorem, "N=" + std::to_string(r.level) + " k=" + std::to_string(r.k) + ": m_new " +
                             std::to_string(r.m_new) + " > " + std::to_string(r.m_new_kprime));
  if (!g_cli.empty()) {
    for (const auto& s : kSweeps) {
      const Proc p = run("--format csv verify -p 5 -N " + std::to_string(s.level) + " --k-min 2 --k-max " +
                         std::to_string(s.k_max));
      o.require(p.code == 0, "cli verify N=" + std::to_string(s.level) + " exited " + std::to_string(p.code));
    }
  }
  o.notes.push_back(std::to_string(rows.size()) + " rows hold");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto rows = sweep_rows();
  int equal = 0;
  for (const auto& r : rows) {
    o.require(r.m_cm <= r.m_new, "N=" + std::to_string(r.level) + " k=" + std::to_string(r.k) + ": m_cm > m_new");
    if (r.m_cm == r.m_new)
      ++equal;
    else
      o.notes.push_back("inequality at N=" + std::to_string(r.level) + " k=" + std::to_string(r.k) + ": m_cm " +
                        std::to_string(r.m_cm) + " < m_new " + std::to_string(r.m_new));
  }
  o.notes.insert(o.notes.begin(), std::to_string(equal) + "/" + std::to_string(rows.size()) + " rows with m_cm = m_new(0)");
  return o;
}

std::vector<DirichletCharacter> characters_at(std::int64_t n) {
  std::vector<DirichletCharacter> out{DirichletCharacter::trivial()};
  for (std::int64_t d = -n; d <= n; ++d)
    if (d != 1 && d != 0 && n % d == 0 && is_fundamental_discriminant(d)) out.push_back(DirichletCharacter::kronecker(d));
  return out;
}

Outcome criterion7() {
  Outcome o;
  std::size_t points = 0, heavy = 0, deligne = 0;
  for (std::int64_t n = 1; n <= 30; ++n) {
    HeckeStore store;
    for (const auto& chi : characters_at(n))
      for (int k = 2; k <= 24; ++k) {
        if (!parity_matches(chi, k)) continue;
        // even weights for every character; odd weights are included for odd characters
        const std::string at = pt(n, k, chi);
        ++points;
        const auto plus = store.space(n, k, chi, Sign::Plus);
        o.require(plus->cuspidal_dimension() == dim_cusp(n, k, chi),
                  at + ": symbols " + std::to_string(plus->cuspidal_dimension()) + " vs formula " +
                      std::to_string(dim_cusp(n, k, chi)));
        if (plus->cuspidal_dimension() == 0) continue;
        ++heavy;
        const auto qs = primes_not_dividing(n, 2);
        const RationalMatrix& t1 = store.hecke(n, k, chi, qs[0])->matrix;
        const RationalMatrix& t2 = store.hecke(n, k, chi, qs[1])->matrix;
        o.require(multiply(t1, t2) == multiply(t2, t1), at + ": T_q do not commute");
        o.require(rank(t1) == rank(multiply(t1, t1)), at + ": rank(T) != rank(T^2)");

        const RationalMatrix& tm = store.hecke(n, k, chi, qs[0], Sign::Minus)->matrix;
        o.require(nullity(t1) == nullity(tm), at + ": plus and minus nullities differ");

        const auto full = store.space(n, k, chi, Sign::Full);
        const RationalMatrix star = star_matrix(*full);
        const RationalMatrix& tf = store.hecke(n, k, chi, qs[0], Sign::Full)->matrix;
        o.require(multiply(star, tf) == multiply(tf, star), at + ": star does not commute with T_q");
        o.require(multiply(star, star) == identity(star.rows()), at + ": star is not an involution");

        const DeligneCheck d = deligne_check(charpoly(t1), qs[0], k, chi(qs[0]));
        ++deligne;
        o.require(d.holds, at + ": Deligne bound fails for T_" + std::to_string(qs[0]));
      }
    // divisor consistency for the trivial character at even k
    const auto triv = DirichletCharacter::trivial();
    const std::int64_t p = primes_not_dividing(n, 1)[0];
    for (int k = 2; k <= 12; k += 2) {
      Index dim_sum = 0, m_sum = 0;
      for (std::int64_t m : divisors(n)) {
        const Index dn = dimension_new(store, p, k, triv, m);
        const Index mn = multiplicity_new(store, p, Rational(0), k, triv, m);
        o.require(dn >= 0 && mn >= 0 && mn <= dn, pt(m, k, triv) + ": negative new count");
        const auto tau = static_cast<Index>(divisors(n / m).size());
        dim_sum += tau * dn;
        m_sum += tau * mn;
      }
      o.require(dim_sum == dimension_full(store, p, k, triv, n), pt(n, k, triv) + ": dimension divisor sum");
      o.require(m_sum == multiplicity_full(store, p, Rational(0), k, triv, n), pt(n, k, triv) + ": multiplicity divisor sum");
    }
  }
  o.notes.push_back(std::to_string(points) + " grid points, " + std::to_string(heavy) + " nonzero, " +
                    std::to_string(deligne) + " Deligne checks");
  return o;
}

Outcome criterion8() {
  Outcome o;
  if (g_cli.empty()) {
    o.require(false, "path to the hmult executable not given");
    return o;
  }
  const auto dir = std::filesystem::temp_directory_path() / "hmult_acceptance_cache";
  std::filesystem::remove_all(dir);
  const std::vector<std::string> queries{"mult -p 5 -N 27 -k 12", "mult -p 2 -N 9 -k 4", "mult -p 7 -N 15 -k 6 --lambda 0",
                                         "mult -p 3 -N 11 -k 2 --lambda -1", "cm -p 5 -N 27 -k 2"};
  for (const auto& q : queries) {
    const Proc plain1 = run(q);
    const Proc plain2 = run(q);
    const Proc cold = run("--cache " + dir.string() + " " + q);
    const Proc warm = run("--cache " + dir.string() + " " + q);
    o.require(plain1.code == 0 && cold.code == 0 && warm.code == 0, q + ": nonzero exit");
    if (plain1.code != 0) continue;
    const std::string body = without_timestamp(plain1.out);
    o.require(body == without_timestamp(plain2.out), q + ": repeated runs differ");
    o.require(body == without_timestamp(cold.out), q + ": cold cache run differs");
    o.require(body == without_timestamp(warm.out), q + ": warm cache run differs");
  }
  const Proc counters = run_stderr("--verbose --cache " + dir.string() + " mult -p 5 -N 27 -k 12");
  o.require(counters.out.find("matrices_computed=0") != std::string::npos &&
                counters.out.find("spaces_built=0") != std::string::npos,
            "warm cache run recomputed: " + counters.out);
  const Proc notime1 = run("--no-timestamp mult -p 5 -N 27 -k 12");
  const Proc notime2 = run("--no-timestamp --cache " + dir.string() + " mult -p 5 -N 27 -k 12");
  o.require(!notime1.out.empty() && notime1.out == notime2.out, "byte comparison without timestamps differs");

  // csv and json sweeps carry the same numbers
  const Proc json = run("--no-timestamp verify -p 5 -N 27 --k-min 2 --k-max 8");
  const Proc csv = run("--format csv verify -p 5 -N 27 --k-min 2 --k-max 8");
  if (json.code == 0 && csv.code == 0) {
    std::ostringstream from_json;
    from_json << "p,N,k,chi,m_new,k_prime,m_new_kprime,theorem,m_cm,conjecture_equal\n";
    const Json parsed = Json::parse(json.out);
    for (const auto& r : parsed["rows"])
      from_json << r["p"].get<long>() << ',' << r["N"].get<long>() << ',' << r["k"].get<int>() << ','
                << r["chi"].get<std::string>() << ',' << r["m_new"].get<long>() << ',' << r["k_prime"].get<int>()
                << ',' << r["m_new_kprime"].get<long>() << ',' << (r["theorem"].get<bool>() ? "true" : "false")
                << ',' << r["m_cm"].get<long>() << ',' << (r["conjecture_equal"].get<bool>() ? "true" : "false")
                << '\n';
    o.require(from_json.str() == csv.out, "csv and json sweeps differ");
  } else {
    o.require(false, "verify sweep exited nonzero");
  }
  std::filesystem::remove_all(dir);
  o.notes.push_back(std::to_string(queries.size()) + " queries x 4 runs identical, warm cache computed nothing");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc)
      only = std::stoi(argv[++i]);
    else
      g_cli = a;
  }
  const std::vector<std::tuple<int, std::string, std::function<Outcome()>>> criteria{
      {1, "level 1 modular symbols vs Victor-Miller oracle", criterion1},
      {2, "CM fixture at level 9", criterion2},
      {3, "CM fixture at level 27", criterion3},
      {4, "weight reduction suite", criterion4},
      {5, "weight bound sweep", criterion5},
      {6, "CM count equals m_new(0)", criterion6},
      {7, "invariant suite", criterion7},
      {8, "determinism and cache", criterion8},
  };
  bool all = true;
  for (const auto& [id, name, fn] : criteria) {
    if (only != 0 && only != id) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (o.pass ? "PASS" : "FAIL") << " " << id << " " << name << " (" << secs << " s)";
    if (!o.notes.empty()) line << ": " << o.notes.front();
    std::cout << line.str() << std::endl;
    for (std::size_t i = 1; i < o.notes.size(); ++i) std::cout << "     " << o.notes[i] << "\n";
    for (const auto& f : o.failures) std::cout << "     failure: " << f << "\n";
  }
  return all ? 0 : 1;
}
