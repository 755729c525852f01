#pragma once

// JSON forms of matrices and q-series. Numbers are exact strings.

#include <string>

#include "json.hpp"

#include "hmult/matrix.hpp"
#include "hmult/qseries.hpp"

namespace hmult {

using Json = nlohmann::ordered_json;

/// {"rows": r, "cols": c, "entries": ["num/den", ...]} row-major.
Json matrix_to_json(const RationalMatrix& m);
RationalMatrix matrix_from_json(const Json& j);

/// {"precision", "coefficients", "weight", "level", "character"}.
Json qseries_to_json(const QSeries& f);
QSeries qseries_from_json(const Json& j);

}  // namespace hmult
