#include "hmult/report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace hmult {

Json reduction_json(const WeightReduction& r) {
  Json options = Json::array();
  for (const auto& [i, kp] : r.options) options.push_back(Json::array({i, kp}));
  return Json{{"p", r.p},
              {"k", r.k},
              {"a", r.a},
              {"b", r.b},
              {"form", to_string(r.form)},
              {"options", std::move(options)},
              {"chosen", Json::array({r.chosen.first, r.chosen.second})}};
}

Json cm_report_json(const CMCountReport& r) {
  Json per = Json::array();
  for (const auto& [d, count] : r.per_discriminant) per.push_back(Json{{"D", d}, {"count", count}});
  return Json{{"query", Json{{"p", r.p}, {"N", r.level}, {"k", r.k}, {"chi", r.character}}},
              {"per_discriminant", std::move(per)},
              {"total", r.total},
              {"m_new_zero", r.m_new_zero}};
}

Json mult_report(HeckeStore& store, std::int64_t p, const Rational& lambda, int k, const DirichletCharacter& chi,
                 std::int64_t level) {
  const MultiplicityReport m = multiplicity_report(store, p, lambda, k, chi, level);
  Json body;
  body["query"] = Json{{"p", p}, {"N", level}, {"k", k}, {"chi", chi.base_spec()}, {"lambda", to_string(lambda)}};
  body["dimensions"] = Json{{"full", m.dim_full}, {"new", m.dim_new}};

  Json cm_count = nullptr;
  Json cm_detail = nullptr;
  Json theorem = nullptr;
  Json conjecture = nullptr;
  if (lambda == 0) {
    const CMCountReport c = multiplicity_cm(store, p, k, chi, level);
    cm_count = c.total;
    Json per = Json::array();
    for (const auto& [d, count] : c.per_discriminant) per.push_back(Json{{"D", d}, {"count", count}});
    cm_detail = Json{{"per_discriminant", std::move(per)}, {"total", c.total}};
    conjecture = c.total == m.m_new;
  }
  body["multiplicity"] = Json{{"lambda", to_string(lambda)}, {"full", m.m_full}, {"new", m.m_new}, {"cm", cm_count}};

  Json reduction = nullptr;
  if (p != 2) {
    const WeightReduction r = reduce_weight(p, k % 2 == 0 ? k : k + 1);
    if (k % 2 == 0) reduction = reduction_json(r);
    if (k % 2 == 0 && p >= 5 && lambda == 0) theorem = verify_bound(store, p, chi, level, k).holds;
  }
  body["weight_reduction"] = reduction;
  Json slopes = Json::array();
  for (const auto& s : m.slopes) slopes.push_back(s.to_string());
  body["slopes"] = std::move(slopes);
  body["verdicts"] = Json{{"theorem", theorem}, {"conjecture_equal", conjecture}};
  body["cm"] = cm_detail;
  body["provenance"] = m.provenance;
  return body;
}

SweepRow sweep_row(HeckeStore& store, std::int64_t p, const DirichletCharacter& chi, std::int64_t level, int k) {
  const BoundCheck b = verify_bound(store, p, chi, level, k);
  const CMCountReport c = multiplicity_cm(store, p, k, chi, level);
  SweepRow row;
  row.p = p;
  row.level = level;
  row.k = k;
  row.character = chi.base_spec();
  row.m_new = b.m_k_new;
  row.k_prime = b.k_prime;
  row.m_new_kprime = b.m_kprime_new;
  row.theorem = b.holds;
  row.m_cm = c.total;
  row.conjecture_equal = c.total == b.m_k_new;
  return row;
}

Json sweep_json(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back(Json{{"p", r.p},
                       {"N", r.level},
                       {"k", r.k},
                       {"chi", r.character},
                       {"m_new", r.m_new},
                       {"k_prime", r.k_prime},
                       {"m_new_kprime", r.m_new_kprime},
                       {"theorem", r.theorem},
                       {"m_cm", r.m_cm},
                       {"conjecture_equal", r.conjecture_equal}});
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "p,N,k,chi,m_new,k_prime,m_new_kprime,theorem,m_cm,conjecture_equal\n";
  for (const auto& r : rows)
    os << r.p << ',' << r.level << ',' << r.k << ',' << r.character << ',' << r.m_new << ',' << r.k_prime << ','
       << r.m_new_kprime << ',' << (r.theorem ? "true" : "false") << ',' << r.m_cm << ','
       << (r.conjecture_equal ? "true" : "false") << '\n';
  return os.str();
}

Json envelope(const Json& body, bool with_timestamp) {
  Json out;
  out["tool"] = Json{{"name", "hmult"}, {"version", kToolVersion}};
  if (with_timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    out["timestamp"] = buf;
  }
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

}  // namespace hmult
