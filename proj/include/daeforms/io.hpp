#pragma once

// JSON documents for systems, witnesses and form data. Matrix entries are
// strings "p", "-p" or "p/q" (q > 0); plain JSON integers are accepted as
// well. A matrix is either a grid of rows, or {"rows": r, "cols": c,
// "data": grid} when a dimension is zero and the grid alone would lose it.

#include <daeforms/canonical_forms.hpp>
#include <daeforms/p_feedback.hpp>
#include <daeforms/pd_feedback.hpp>
#include <daeforms/system.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace daeforms {

using Json = nlohmann::ordered_json;

/// Input error carrying the location of the offending value.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io {

inline Rational parse_entry(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()), 10);
  if (!v.is_string()) throw ParseError(where + ": expected a rational string, got " + std::string(v.type_name()));
  const auto text = v.get<std::string>();
  auto r = parse_rational(text);
  if (!r) {
    const auto slash = text.find('/');
    const bool zero_den = slash != std::string::npos && parse_rational(text.substr(0, slash)) &&
                          parse_rational(text.substr(slash + 1)) == Rational(0);
    throw ParseError(where + ": " + (zero_den ? "zero denominator in \"" : "malformed rational \"") + text + "\"");
  }
  return *r;
}

inline Mat parse_grid(const Json& grid, const std::string& where, std::optional<std::size_t> cols_hint) {
  if (!grid.is_array()) throw ParseError(where + ": expected an array of rows");
  const std::size_t rows = grid.size();
  std::size_t cols = cols_hint.value_or(0);
  if (rows > 0) {
    if (!grid[0].is_array()) throw ParseError(where + "[0]: expected an array of entries");
    cols = grid[0].size();
  }
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rw = where + "[" + std::to_string(i) + "]";
    if (!grid[i].is_array()) throw ParseError(rw + ": expected an array of entries");
    if (grid[i].size() != cols) {
      throw ParseError(rw + ": row has " + std::to_string(grid[i].size()) + " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_entry(grid[i][j], rw + "[" + std::to_string(j) + "]");
  }
  return m;
}

inline Mat parse_matrix(const Json& v, const std::string& where) {
  if (v.is_object()) {
    for (const char* key : {"rows", "cols", "data"})
      if (!v.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    if (!v["rows"].is_number_unsigned() || !v["cols"].is_number_unsigned()) {
      throw ParseError(where + ": \"rows\" and \"cols\" must be non-negative integers");
    }
    const auto rows = v["rows"].get<std::size_t>();
    const auto cols = v["cols"].get<std::size_t>();
    Mat m = parse_grid(v["data"], where + ".data", cols);
    if (m.rows() != rows || m.cols() != cols) {
      throw ParseError(where + ": data is " + m.shape() + " but header says " + std::to_string(rows) + "x" +
                       std::to_string(cols));
    }
    return m;
  }
  return parse_grid(v, where, std::nullopt);
}

inline const Json& require(const Json& doc, const char* key, const std::string& file) {
  if (!doc.is_object()) throw ParseError(file + ": top level must be an object");
  if (!doc.contains(key)) throw ParseError(file + ": missing key \"" + key + "\"");
  return doc[key];
}

inline Mat matrix_field(const Json& doc, const char* key, const std::string& file) {
  return parse_matrix(require(doc, key, file), file + ": " + key);
}

inline MultiIndex multi_index_field(const Json& doc, const char* key, const std::string& file) {
  const Json& v = require(doc, key, file);
  if (!v.is_array()) throw ParseError(file + ": " + key + ": expected an array of positive integers");
  MultiIndex out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned() || v[i].get<std::size_t>() == 0) {
      throw ParseError(file + ": " + key + "[" + std::to_string(i) + "]: expected a positive integer");
    }
    out.push_back(v[i].get<std::size_t>());
  }
  return out;
}

inline std::size_t count_field(const Json& doc, const char* key, const std::string& file, std::size_t fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number_unsigned()) throw ParseError(file + ": " + key + ": expected a non-negative integer");
  return doc[key].get<std::size_t>();
}

inline Json matrix_to_json(const Mat& m) {
  Json grid = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    grid.push_back(std::move(row));
  }
  if (m.rows() > 0) return grid;
  Json obj = Json::object();
  obj["rows"] = m.rows();
  obj["cols"] = m.cols();
  obj["data"] = std::move(grid);
  return obj;
}

}  // namespace io

inline Json parse_json_text(const std::string& text, const std::string& name) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(name + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

inline SystemTriple system_from_json(const Json& doc, const std::string& name = "system") {
  Mat e = io::matrix_field(doc, "E", name);
  Mat a = io::matrix_field(doc, "A", name);
  Mat b = io::matrix_field(doc, "B", name);
  try {
    return SystemTriple(std::move(e), std::move(a), std::move(b));
  } catch (const DimensionError& err) {
    throw ParseError(name + ": " + err.what());
  }
}

inline Json system_to_json(const SystemTriple& sys) {
  Json doc = Json::object();
  doc["E"] = io::matrix_to_json(sys.E);
  doc["A"] = io::matrix_to_json(sys.A);
  doc["B"] = io::matrix_to_json(sys.B);
  return doc;
}

/// Witness document; "kind" is "P" or "PD" and F_D is present exactly for
/// "PD". A P witness is returned with F_D = 0.
struct WitnessFile {
  std::string kind;
  PDTransform transform;
};

inline WitnessFile witness_from_json(const Json& doc, const std::string& name = "witness") {
  const Json& kind = io::require(doc, "kind", name);
  if (!kind.is_string() || (kind != "P" && kind != "PD")) throw ParseError(name + ": kind must be \"P\" or \"PD\"");
  WitnessFile w;
  w.kind = kind.get<std::string>();
  const bool has_fd = doc.contains("F_D");
  if (has_fd != (w.kind == "PD")) throw ParseError(name + ": F_D must be present exactly when kind is \"PD\"");
  w.transform.S = io::matrix_field(doc, "S", name);
  w.transform.T = io::matrix_field(doc, "T", name);
  w.transform.V = io::matrix_field(doc, "V", name);
  w.transform.F_P = io::matrix_field(doc, "F_P", name);
  w.transform.F_D = has_fd ? io::matrix_field(doc, "F_D", name) : Mat(w.transform.F_P.rows(), w.transform.F_P.cols());
  return w;
}

inline Json witness_to_json(const PTransform& w) {
  Json doc = Json::object();
  doc["kind"] = "P";
  doc["S"] = io::matrix_to_json(w.S);
  doc["T"] = io::matrix_to_json(w.T);
  doc["V"] = io::matrix_to_json(w.V);
  doc["F_P"] = io::matrix_to_json(w.F_P);
  return doc;
}

inline Json witness_to_json(const PDTransform& w) {
  Json doc = Json::object();
  doc["kind"] = "PD";
  doc["S"] = io::matrix_to_json(w.S);
  doc["T"] = io::matrix_to_json(w.T);
  doc["V"] = io::matrix_to_json(w.V);
  doc["F_P"] = io::matrix_to_json(w.F_P);
  doc["F_D"] = io::matrix_to_json(w.F_D);
  return doc;
}

inline PffData pff_data_from_json(const Json& doc, const std::string& name = "data") {
  PffData d;
  d.alpha = io::multi_index_field(doc, "alpha", name);
  d.beta = io::multi_index_field(doc, "beta", name);
  d.gamma = io::multi_index_field(doc, "gamma", name);
  d.delta = io::multi_index_field(doc, "delta", name);
  d.kappa = io::multi_index_field(doc, "kappa", name);
  d.A_cbar = io::matrix_field(doc, "A_cbar", name);
  d.zero_inputs = io::count_field(doc, "zero_inputs", name, 0);
  return d;
}

inline PdffData pdff_data_from_json(const Json& doc, const std::string& name = "data") {
  PdffData d;
  d.alpha = io::multi_index_field(doc, "alpha", name);
  d.A_cbar = io::matrix_field(doc, "A_cbar", name);
  d.beta = io::multi_index_field(doc, "beta", name);
  d.gamma = io::multi_index_field(doc, "gamma", name);
  d.r = io::count_field(doc, "r", name, 0);
  d.zero_inputs = io::count_field(doc, "zero_inputs", name, 0);
  return d;
}

inline Json pdff_data_to_json(const PdffData& d) {
  Json doc = Json::object();
  doc["alpha"] = d.alpha;
  doc["A_cbar"] = io::matrix_to_json(d.A_cbar);
  doc["beta"] = d.beta;
  doc["gamma"] = d.gamma;
  doc["r"] = d.r;
  doc["zero_inputs"] = d.zero_inputs;
  return doc;
}

namespace io {

template <std::size_t N>
std::array<std::size_t, N> sizes_field(const Json& doc, const char* key, const std::string& file) {
  const MultiIndex raw = [&] {
    const Json& v = require(doc, key, file);
    if (!v.is_array()) throw ParseError(file + ": " + key + ": expected an array of block sizes");
    MultiIndex out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_unsigned()) throw ParseError(file + ": " + key + "[" + std::to_string(i) + "]: expected a non-negative integer");
      out.push_back(v[i].get<std::size_t>());
    }
    return out;
  }();
  if (raw.size() != N) throw ParseError(file + ": " + key + ": expected " + std::to_string(N) + " block sizes");
  std::array<std::size_t, N> a{};
  std::copy(raw.begin(), raw.end(), a.begin());
  return a;
}

}  // namespace io

inline QpffSizes qpff_sizes_from_json(const Json& doc, const std::string& name = "data") {
  QpffSizes s;
  s.l = io::sizes_field<3>(doc, "l", name);
  s.n = io::sizes_field<3>(doc, "n", name);
  s.m = io::sizes_field<3>(doc, "m", name);
  return s;
}

inline QpdffSizes qpdff_sizes_from_json(const Json& doc, const std::string& name = "data") {
  QpdffSizes s;
  s.l = io::sizes_field<3>(doc, "l", name);
  s.n = io::sizes_field<3>(doc, "n", name);
  s.m = io::sizes_field<2>(doc, "m", name);
  return s;
}

inline Json sizes_to_json(const QpffSizes& s) { return Json{{"l", s.l}, {"n", s.n}, {"m", s.m}}; }
inline Json sizes_to_json(const QpdffSizes& s) { return Json{{"l", s.l}, {"n", s.n}, {"m", s.m}}; }

}  // namespace daeforms
