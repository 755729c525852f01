// Command-line front end: mult, reduce, verify, cm, qexp.

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <numeric>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hmult/cm.hpp"
#include "hmult/error.hpp"
#include "hmult/mult.hpp"
#include "hmult/qseries.hpp"
#include "hmult/report.hpp"
#include "hmult/serialize.hpp"
#include "hmult/weightred.hpp"

namespace {

using namespace hmult;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitTheorem = 3;
constexpr int kExitInternal = 4;

struct Global {
  std::string cache_dir;
  std::string out;
  std::string format = "json";
  int jobs = 1;
  bool verbose = false;
  bool no_timestamp = false;
};

struct Query {
  std::int64_t p = 0;
  std::int64_t level = 1;
  int k = 0;
  std::string chi = "trivial";
  std::string lambda = "0";
};

struct SweepArgs {
  std::vector<std::int64_t> ps;
  std::vector<std::int64_t> levels;
  int k_min = 2;
  int k_max = 12;
  std::string parity = "even";
  std::string chi = "trivial";
};

struct QexpArgs {
  std::string form = "vm";
  int k = 12;
  std::size_t precision = 20;
  std::string eta;
  std::int64_t level = 0;
  std::int64_t disc = -3;
  std::string conductor = "1,0";
  int weight = 1;
  bool allow_ramified_conductor = false;
  std::int64_t hecke = 0;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvariantViolation:
    case ErrorKind::NoDecomposition:
    case ErrorKind::NonIntegral:
    case ErrorKind::NonSquare:
    case ErrorKind::ZeroPolynomial:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open output file " + g.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::optional<std::filesystem::path> cache_path(const Global& g) {
  if (!g.cache_dir.empty()) return std::filesystem::path(g.cache_dir);
  return std::nullopt;
}

void report_counters(const Global& g, const HeckeStore& store) {
  if (!g.verbose) return;
  const StoreCounters c = store.counters();
  std::cerr << "store: spaces_built=" << c.spaces_built << " matrices_computed=" << c.matrices_computed
            << " memory_hits=" << c.memory_hits << " disk_hits=" << c.disk_hits << " disk_writes=" << c.disk_writes
            << "\n";
}

int cmd_mult(const Global& g, const Query& q) {
  HeckeStore store(cache_path(g));
  const DirichletCharacter chi = DirichletCharacter::parse(q.chi);
  const Json body = mult_report(store, q.p, parse_rational(q.lambda), q.k, chi, q.level);
  report_counters(g, store);
  if (g.format == "csv") {
    const Json& m = body["multiplicity"];
    const Json& v = body["verdicts"];
    auto cell = [](const Json& x) { return x.is_null() ? std::string() : x.is_string() ? x.get<std::string>() : x.dump(); };
    std::ostringstream os;
    os << "p,N,k,chi,lambda,dim_full,dim_new,m_full,m_new,m_cm,theorem,conjecture_equal\n";
    os << q.p << ',' << q.level << ',' << q.k << ',' << chi.base_spec() << ',' << cell(m["lambda"]) << ','
       << body["dimensions"]["full"] << ',' << body["dimensions"]["new"] << ',' << m["full"] << ',' << m["new"]
       << ',' << cell(m["cm"]) << ',' << cell(v["theorem"]) << ',' << cell(v["conjecture_equal"]) << '\n';
    emit(g, os.str());
  } else {
    emit(g, dump(envelope(body, !g.no_timestamp)));
  }
  return kExitOk;
}

int cmd_reduce(const Global& g, const Query& q) {
  const WeightReduction r = reduce_weight(q.p, q.k);
  emit(g, dump(envelope(Json{{"weight_reduction", reduction_json(r)}}, !g.no_timestamp)));
  return kExitOk;
}

int cmd_cm(const Global& g, const Query& q) {
  HeckeStore store(cache_path(g));
  const DirichletCharacter chi = DirichletCharacter::parse(q.chi);
  const CMCountReport r = multiplicity_cm(store, q.p, q.k, chi, q.level);
  report_counters(g, store);
  emit(g, dump(envelope(cm_report_json(r), !g.no_timestamp)));
  return kExitOk;
}

struct GridPoint {
  std::int64_t p;
  std::int64_t level;
  int k;
};

int cmd_verify(const Global& g, const SweepArgs& s) {
  const DirichletCharacter chi = DirichletCharacter::parse(s.chi);
  if (s.ps.empty() || s.levels.empty()) throw Error(ErrorKind::InvalidArgument, "verify needs -p and -N");
  std::vector<GridPoint> grid;
  for (std::int64_t p : s.ps)
    for (std::int64_t n : s.levels) {
      if (n % p == 0) throw Error(ErrorKind::PDividesLevel, "p divides N (p=" + std::to_string(p) + ", N=" + std::to_string(n) + ")");
      for (int k = s.k_min; k <= s.k_max; ++k) {
        if (s.parity == "even" && k % 2 != 0) continue;
        if (s.parity == "odd" && k % 2 == 0) continue;
        grid.push_back({p, n, k});
      }
    }
  // validate every point before spending time on any of them
  for (const auto& pt : grid) {
    check_multiplicity_query(pt.p, pt.k, chi, pt.level);
    if (pt.p < 5) throw Error(ErrorKind::InvalidArgument, "verify requires p >= 5");
  }

  HeckeStore store(cache_path(g));
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::exception_ptr> failures(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        rows[i] = sweep_row(store, grid[i].p, chi, grid[i].level, grid[i].k);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(g.jobs, static_cast<int>(grid.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  report_counters(g, store);

  if (g.format == "csv") {
    emit(g, sweep_csv(rows));
  } else {
    Json query{{"p", s.ps}, {"N", s.levels}, {"k_min", s.k_min}, {"k_max", s.k_max}, {"parity", s.parity},
               {"chi", chi.base_spec()}};
    emit(g, dump(envelope(Json{{"query", std::move(query)}, {"rows", sweep_json(rows)}}, !g.no_timestamp)));
  }
  bool all_hold = true;
  for (const auto& r : rows) {
    if (!r.theorem) {
      all_hold = false;
      std::cerr << "theorem violated at p=" << r.p << " N=" << r.level << " k=" << r.k << ": m_new=" << r.m_new
                << " > m_new(k'=" << r.k_prime << ")=" << r.m_new_kprime << "\n";
    }
    if (r.m_cm > r.m_new)
      throw Error(ErrorKind::InvariantViolation, "m_cm exceeds m_new at k=" + std::to_string(r.k));
  }
  return all_hold ? kExitOk : kExitTheorem;
}

std::vector<EtaFactor> parse_eta(const std::string& text) {
  std::vector<EtaFactor> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto caret = item.find('^');
    if (caret == std::string::npos) throw Error(ErrorKind::ParseError, "eta factor must look like d^r: " + item);
    try {
      out.push_back({std::stoll(item.substr(0, caret)), std::stoi(item.substr(caret + 1))});
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "bad eta factor: " + item);
    }
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "empty eta specification");
  return out;
}

OElement parse_element(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "element must look like x,y: " + text);
  return OElement{parse_rational(text.substr(0, comma)).convert_to<Integer>(),
                  parse_rational(text.substr(comma + 1)).convert_to<Integer>()};
}

int cmd_qexp(const Global& g, const QexpArgs& a) {
  QSeries f;
  int weight = a.k;
  if (a.form == "vm") {
    const auto basis = victor_miller_basis(a.k, a.precision);
    if (basis.empty()) throw Error(ErrorKind::InvalidArgument, "no cusp forms of this weight at level 1");
    f = basis.front();
  } else if (a.form == "eta") {
    const auto spec = parse_eta(a.eta);
    std::int64_t level = a.level;
    if (level == 0)
      for (const auto& e : spec) level = std::lcm(level == 0 ? 1 : level, e.d);
    f = eta_quotient(spec, level, a.precision);
    weight = f.weight();
  } else if (a.form == "cm") {
    HeckeCharacterSpec xi;
    xi.discriminant = a.disc;
    xi.weight = a.weight;
    xi.conductor = parse_element(a.conductor);
    xi.allow_conductor_dividing_discriminant = a.allow_ramified_conductor;
    f = cm_qexp(xi, a.precision);
    weight = f.weight();
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown form " + a.form);
  }
  if (a.hecke > 0) {
    const DirichletCharacter chi = DirichletCharacter::parse(f.character()).lift(f.level());
    f = hecke_qexp(f, a.hecke, weight, chi);
  }
  Json body{{"form", a.form}, {"series", qseries_to_json(f)}, {"display", f.to_string()}};
  if (a.hecke > 0) body["hecke"] = a.hecke;
  emit(g, dump(envelope(body, !g.no_timestamp)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hecke eigenvalue multiplicities for modular forms"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("hmult ") + kToolVersion);

  Global g;
  if (const char* env = std::getenv("HMULT_CACHE_DIR")) g.cache_dir = env;
  app.add_option("--cache", g.cache_dir, "cache directory for Hecke matrices (default $HMULT_CACHE_DIR)");
  app.add_option("--out", g.out, "write the report to FILE instead of stdout");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", g.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", g.verbose, "print store counters to stderr");
  app.add_flag("--no-timestamp", g.no_timestamp, "omit the timestamp field");

  Query q;
  auto add_query = [&q](CLI::App* sub, bool with_level) {
    sub->add_option("-p", q.p, "prime")->required();
    sub->add_option("-k", q.k, "weight")->required();
    if (with_level) {
      sub->add_option("-N", q.level, "level")->required();
      sub->add_option("--chi", q.chi, "trivial or kronecker:D");
    }
  };
  auto* mult = app.add_subcommand("mult", "multiplicity of an eigenvalue of T_p");
  add_query(mult, true);
  mult->add_option("--lambda", q.lambda, "eigenvalue, exact rational");
  auto* reduce = app.add_subcommand("reduce", "weight reduction k -> k'");
  add_query(reduce, false);
  auto* cm = app.add_subcommand("cm", "count CM newforms with a_p = 0");
  add_query(cm, true);

  SweepArgs s;
  auto* verify = app.add_subcommand("verify", "sweep the weight bound and CM counts");
  verify->add_option("-p", s.ps, "primes")->required()->delimiter(',');
  verify->add_option("-N", s.levels, "levels")->required()->delimiter(',');
  verify->add_option("--k-min", s.k_min, "smallest weight");
  verify->add_option("--k-max", s.k_max, "largest weight");
  verify->add_option("--parity", s.parity, "even, odd or all")->check(CLI::IsMember({"even", "odd", "all"}));
  verify->add_option("--chi", s.chi, "trivial or kronecker:D");

  QexpArgs qa;
  auto* qexp = app.add_subcommand("qexp", "print oracle q-expansions");
  qexp->add_option("--form", qa.form, "vm, eta or cm")->check(CLI::IsMember({"vm", "eta", "cm"}));
  qexp->add_option("-k", qa.k, "weight for vm");
  qexp->add_option("-B,--precision", qa.precision, "number of coefficients");
  qexp->add_option("--eta", qa.eta, "eta quotient such as 3^8 or 3^2,9^2");
  qexp->add_option("-N", qa.level, "level for eta (default lcm of the d)");
  qexp->add_option("--disc", qa.disc, "fundamental discriminant for cm");
  qexp->add_option("--conductor", qa.conductor, "conductor x,y meaning x + y*omega");
  qexp->add_option("--weight", qa.weight, "infinity type w for cm");
  qexp->add_flag("--allow-ramified-conductor", qa.allow_ramified_conductor);
  qexp->add_option("--hecke", qa.hecke, "apply T_n to the series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*mult) return cmd_mult(g, q);
    if (*reduce) return cmd_reduce(g, q);
    if (*cm) return cmd_cm(g, q);
    if (*verify) return cmd_verify(g, s);
    if (*qexp) return cmd_qexp(g, qa);
  } catch (const Error& e) {
    std::cout << error_json(std::string(to_string(e.kind())), e.what()).dump() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cout << error_json("Internal", e.what()).dump() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
