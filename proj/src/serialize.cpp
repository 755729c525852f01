#include "hmult/serialize.hpp"

#include "hmult/error.hpp"

namespace hmult {

Json matrix_to_json(const RationalMatrix& m) {
  Json entries = Json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) entries.push_back(to_string(m(r, c)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

RationalMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<Index>();
    const auto cols = j.at("cols").get<Index>();
    const auto& entries = j.at("entries");
    if (rows < 0 || cols < 0 || entries.size() != static_cast<std::size_t>(rows * cols))
      throw Error(ErrorKind::ParseError, "matrix JSON: entry count does not match shape");
    RationalMatrix m(rows, cols);
    std::size_t i = 0;
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c) m(r, c) = parse_rational(entries[i++].get<std::string>());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("matrix JSON: ") + e.what());
  }
}

Json qseries_to_json(const QSeries& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coefficients()) coeffs.push_back(to_string(c));
  return Json{{"precision", f.precision()},
              {"coefficients", std::move(coeffs)},
              {"weight", f.weight()},
              {"level", f.level()},
              {"character", f.character()}};
}

QSeries qseries_from_json(const Json& j) {
  try {
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coefficients")) coeffs.push_back(parse_rational(c.get<std::string>()));
    if (coeffs.size() != j.at("precision").get<std::size_t>())
      throw Error(ErrorKind::ParseError, "q-series JSON: precision does not match coefficient count");
    return QSeries(std::move(coeffs), j.at("weight").get<int>(), j.at("level").get<std::int64_t>(),
                   j.at("character").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("q-series JSON: ") + e.what());
  }
}

}  // namespace hmult
