#pragma once

// Report bodies shared by the command-line tool and the acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

#include "hmult/cm.hpp"
#include "hmult/mult.hpp"
#include "hmult/serialize.hpp"
#include "hmult/weightred.hpp"

namespace hmult {

inline constexpr const char* kToolVersion = "0.1.0";

/// query, dimensions, multiplicity, weight_reduction, slopes, verdicts, cm,
/// provenance. CM counts and verdicts are null unless lambda = 0.
Json mult_report(HeckeStore& store, std::int64_t p, const Rational& lambda, int k, const DirichletCharacter& chi,
                 std::int64_t level);

Json reduction_json(const WeightReduction& r);
Json cm_report_json(const CMCountReport& r);

struct SweepRow {
  std::int64_t p = 0;
  std::int64_t level = 0;
  int k = 0;
  std::string character;
  Index m_new = 0;
  int k_prime = 0;
  Index m_new_kprime = 0;
  bool theorem = false;
  Index m_cm = 0;
  bool conjecture_equal = false;
};

/// One row of the weight-bound and CM sweep (p >= 5).
SweepRow sweep_row(HeckeStore& store, std::int64_t p, const DirichletCharacter& chi, std::int64_t level, int k);

Json sweep_json(const std::vector<SweepRow>& rows);
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// {"tool": ..., "timestamp": ..., body...}
Json envelope(const Json& body, bool with_timestamp = true);

/// Error object printed on failed commands.
Json error_json(const std::string& kind, const std::string& message);

}  // namespace hmult
