#include "fraisse/io/codec.hpp"

namespace fraisse::io {

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw IoError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json encode(const Q& x) { return to_string(x); }

Q decode_q(const Json& j) {
  if (!j.is_string()) throw IoError("rational: expected a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw IoError(std::string("rational: ") + e.what());
  }
}

Json encode(const ExtRational& x) { return to_string(x); }

ExtRational decode_ext(const Json& j) {
  if (!j.is_string()) throw IoError("extended rational: expected a string");
  try {
    return parse_ext_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw IoError(std::string("extended rational: ") + e.what());
  }
}

Json encode(const QVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(encode(x));
  return a;
}

QVector decode_qvector(const Json& j) {
  if (!j.is_array()) throw IoError("vector: expected an array");
  QVector v;
  for (const auto& x : j) v.push_back(decode_q(x));
  return v;
}

Json encode(const metcat::FinMetSpace& x) {
  Json rows = Json::array();
  for (const auto& r : x.rows()) rows.push_back(encode(r));
  return Json{{"points", x.size()}, {"dist", rows}};
}

metcat::FinMetSpace decode_metric_space(const Json& j) {
  std::vector<std::vector<Q>> rows;
  for (const auto& r : member(j, "dist")) rows.push_back(decode_qvector(r));
  if (member(j, "points").get<std::size_t>() != rows.size()) throw IoError("metric space: point count mismatch");
  try {
    return metcat::FinMetSpace::from_matrix(rows);
  } catch (const std::exception& e) {
    throw IoError(std::string("metric space: ") + e.what());
  }
}

Json encode(const metcat::NonExpMap& f) { return Json(f.table); }

metcat::NonExpMap decode_table(const Json& j) {
  if (!j.is_array()) throw IoError("map: expected an array of point indices");
  return metcat::NonExpMap{j.get<std::vector<std::size_t>>()};
}

Json encode(const plcat::IntervalObject& x) { return Json{{"scale", x.scale.str()}}; }

plcat::IntervalObject decode_interval(const Json& j) {
  try {
    return plcat::IntervalObject(Z(member(j, "scale").get<std::string>()));
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("interval: ") + e.what());
  }
}

Json encode(const plcat::PLMap& f) { return Json{{"t", encode(f.t())}, {"y", encode(f.y())}}; }

plcat::PLMap decode_plmap(const Json& j) {
  auto t = decode_qvector(member(j, "t"));
  auto y = decode_qvector(member(j, "y"));
  try {
    plcat::PLMap f(t, y);
    if (f.t() != t || f.y() != y) throw IoError("pl map: breakpoints are not canonical");
    return f;
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("pl map: ") + e.what());
  }
}

Json encode(const bancat::PolySpace& x) {
  Json fs = Json::array();
  for (const auto& f : x.functionals()) fs.push_back(encode(f));
  return Json{{"dim", x.dim()}, {"functionals", fs}};
}

bancat::PolySpace decode_polyspace(const Json& j) {
  std::vector<QVector> fs;
  for (const auto& f : member(j, "functionals")) fs.push_back(decode_qvector(f));
  try {
    return bancat::PolySpace(member(j, "dim").get<std::size_t>(), std::move(fs));
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(std::string("space: ") + e.what());
  }
}

Json encode(const bancat::QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) rows.push_back(encode(m.row(i)));
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

bancat::QMatrix decode_matrix(const Json& j) {
  bancat::QMatrix m(member(j, "rows").get<std::size_t>(), member(j, "cols").get<std::size_t>());
  const auto& e = member(j, "entries");
  if (!e.is_array() || e.size() != m.rows) throw IoError("matrix: row count mismatch");
  for (std::size_t i = 0; i < m.rows; ++i) {
    auto r = decode_qvector(e[i]);
    if (r.size() != m.cols) throw IoError("matrix: column count mismatch");
    for (std::size_t k = 0; k < m.cols; ++k) m(i, k) = r[k];
  }
  return m;
}

}  // namespace fraisse::io
