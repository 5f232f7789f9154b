#pragma once

// JSON encodings of charts, Schur parameters and state-space systems.
// Matrices are arrays of rows; indices are 1-based with 0 meaning "none".

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "lossless/errors.hpp"
#include "lossless/matrix.hpp"
#include "lossless/schur.hpp"
#include "lossless/state_space.hpp"
#include "lossless/young.hpp"

namespace lossless::io {

using nlohmann::json;

/// Malformed or inconsistent input document.
class SchemaError : public Error {
 public:
  using Error::Error;
};

inline json matrix_to_json(const Eigen::Ref<const Matrix>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json vector_to_json(const Eigen::Ref<const Vector>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

inline int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) {
    throw SchemaError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<int>();
}

inline std::vector<int> int_array(const json& v, const std::string& what) {
  if (!v.is_array()) throw SchemaError(what + " must be an array");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) {
      throw SchemaError(what + " must contain integers");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

}  // namespace detail

inline Matrix matrix_from_json(const json& j, Eigen::Index rows,
                               Eigen::Index cols, const std::string& what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw SchemaError(what + " must be an array of " + std::to_string(rows) +
                      " rows");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw SchemaError(what + " rows must have " + std::to_string(cols) +
                        " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number()) throw SchemaError(what + " entries must be numbers");
      m(i, c) = e.get<double>();
    }
  }
  return m;
}

inline Vector vector_from_json(const json& j, Eigen::Index size,
                               const std::string& what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size) {
    throw SchemaError(what + " must be an array of length " +
                      std::to_string(size));
  }
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const json& e = j[static_cast<std::size_t>(i)];
    if (!e.is_number()) throw SchemaError(what + " entries must be numbers");
    v(i) = e.get<double>();
  }
  return v;
}

// ---- charts

inline json chart_to_json(const young::Chart& c) {
  json y = json::array();
  for (int i = 1; i <= c.m; ++i) {
    json row = json::array();
    for (int j = 1; j <= c.n; ++j) row.push_back(c.diagram(i, j));
    y.push_back(std::move(row));
  }
  return json{{"m", c.m},
              {"n", c.n},
              {"d", c.d.values()},
              {"Y", std::move(y)},
              {"J", c.J.values()},
              {"Jtilde", c.Jtilde.values()},
              {"u_idx", c.u_idx}};
}

/// Rebuilds the chart from Y; any other fields present must agree with it.
inline young::Chart chart_from_json(const json& j) {
  const int m = detail::int_field(j, "m");
  const int n = detail::int_field(j, "n");
  if (m < 1 || n < 1) throw SchemaError("chart: m and n must be >= 1");
  const json& yj = detail::field(j, "Y");
  if (!yj.is_array() || static_cast<int>(yj.size()) != m) {
    throw SchemaError("chart: Y must have m rows");
  }
  std::vector<int> entries;
  for (const json& row : yj) {
    std::vector<int> r = detail::int_array(row, "chart: Y row");
    if (static_cast<int>(r.size()) != n) {
      throw SchemaError("chart: Y rows must have n entries");
    }
    entries.insert(entries.end(), r.begin(), r.end());
  }
  young::Chart chart = [&] {
    try {
      young::NumberedYoungDiagram y(m, n, std::move(entries));
      return young::make_chart(y);
    } catch (const InvalidStructure& e) {
      throw SchemaError(std::string("chart: ") + e.what());
    }
  }();
  auto check = [&](const char* key, const std::vector<int>& expected) {
    if (!j.contains(key)) return;
    if (detail::int_array(j.at(key), std::string("chart: ") + key) !=
        expected) {
      throw SchemaError(std::string("chart: field '") + key +
                        "' is inconsistent with Y");
    }
  };
  check("d", chart.d.values());
  check("J", chart.J.values());
  check("Jtilde", chart.Jtilde.values());
  check("u_idx", chart.u_idx);
  return chart;
}

// ---- Schur parameters

inline json params_to_json(const schur::SchurParams& p) {
  json v = json::array();
  for (const Vector& vk : p.v) v.push_back(vector_to_json(vk));
  return json{{"m", p.m}, {"n", p.n}, {"v", std::move(v)},
              {"D0", matrix_to_json(p.D0)}};
}

/// Shape checks only; norm and orthogonality are left to SchurParams.
inline schur::SchurParams params_from_json(const json& j) {
  const int m = detail::int_field(j, "m");
  const int n = detail::int_field(j, "n");
  if (m < 1 || n < 1) throw SchemaError("params: m and n must be >= 1");
  const json& vj = detail::field(j, "v");
  if (!vj.is_array() || static_cast<int>(vj.size()) != n) {
    throw SchemaError("params: v must hold n vectors");
  }
  schur::SchurParams p{m, n, {}, Matrix()};
  for (int k = 0; k < n; ++k) {
    p.v.push_back(vector_from_json(vj[static_cast<std::size_t>(k)], m,
                                   "params: v_" + std::to_string(k + 1)));
  }
  p.D0 = matrix_from_json(detail::field(j, "D0"), m, m, "params: D0");
  return p;
}

// ---- systems

inline json system_to_json(const StateSpace& ss) {
  json out{{"m", ss.m()},
           {"n", ss.n()},
           {"p", ss.p()},
           {"A", matrix_to_json(ss.A)},
           {"B", matrix_to_json(ss.B)}};
  if (ss.has_output()) {
    out["C"] = matrix_to_json(ss.C);
    out["D"] = matrix_to_json(ss.D);
  }
  return out;
}

inline StateSpace system_from_json(const json& j) {
  const int m = detail::int_field(j, "m");
  const int n = detail::int_field(j, "n");
  const int p = j.contains("p") ? detail::int_field(j, "p") : 0;
  if (m < 1 || n < 1 || p < 0) throw SchemaError("system: bad dimensions");
  StateSpace ss;
  ss.A = matrix_from_json(detail::field(j, "A"), n, n, "system: A");
  ss.B = matrix_from_json(detail::field(j, "B"), n, m, "system: B");
  const bool has_c = j.contains("C");
  const bool has_d = j.contains("D");
  if (has_c != has_d) throw SchemaError("system: C and D go together");
  if (has_c) {
    if (p < 1) throw SchemaError("system: p must be >= 1 when C is given");
    ss.C = matrix_from_json(j.at("C"), p, n, "system: C");
    ss.D = matrix_from_json(j.at("D"), p, m, "system: D");
  } else {
    ss.C = Matrix(0, n);
    ss.D = Matrix(0, m);
  }
  return ss;
}

}  // namespace lossless::io
