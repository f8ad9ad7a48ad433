/**
 * @file io.hpp
 * @brief JSON documents for systems, Gram matrices, characters and
 * certificates, with a canonical text form (sorted keys, %.17g floats).
 *
 * Complex numbers are [re, im] pairs. A subspace is a list of basis vectors;
 * a Gram matrix is a list of rows.
 */
#pragma once

#include "orthoscalar/certificate.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>

namespace orthoscalar {

using Json = nlohmann::json;

/// Malformed text or a document of the wrong structure.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SystemDocument {
  SubspaceSystem system;
  std::optional<WeightVector> character;
  std::optional<double> residual;
};

namespace detail {

inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void dump_canonical(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + "  " + Json(key).dump() + ": ";
        dump_canonical(value, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      out += "[";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ", ";
        first = false;
        dump_canonical(value, out, indent + 1);
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float: out += format_double(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

inline double read_number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

inline Complex read_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("complex numbers are [re, im] pairs");
  return {read_number(j[0], "real part"), read_number(j[1], "imaginary part")};
}

inline Json write_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

// Columns of the result are the listed vectors; ragged lists are an invariant
// violation, not a parse error.
inline Matrix read_vectors(const Json& j, Index length, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be a list of vectors");
  Matrix m(length, static_cast<Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    const Json& v = j[c];
    if (!v.is_array()) throw ParseError(std::string(what) + " entries must be vectors");
    if (static_cast<Index>(v.size()) != length) throw Error(ErrorCode::ShapeMismatch, std::string(what) + " has a vector of the wrong length");
    for (std::size_t r = 0; r < v.size(); ++r) m(static_cast<Index>(r), static_cast<Index>(c)) = read_complex(v[r]);
  }
  require_finite(m, what);
  return m;
}

inline Json write_vectors(const Matrix& m) {
  Json out = Json::array();
  for (Index c = 0; c < m.cols(); ++c) {
    Json v = Json::array();
    for (Index r = 0; r < m.rows(); ++r) v.push_back(write_complex(m(r, c)));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Canonical text: objects one key per line in sorted order, arrays inline,
/// floats with 17 significant digits, trailing newline.
inline std::string to_canonical_text(const Json& j) {
  std::string out;
  detail::dump_canonical(j, out, 0);
  out += '\n';
  return out;
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(detail::write_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const WeightVector& w) { return Json{{"head", w.head}, {"tail", w.tail}}; }

inline Json to_json(const SystemDocument& doc) {
  Json j;
  j["ambient_dim"] = doc.system.ambient_dim();
  Json subspaces = Json::array();
  for (const auto& b : doc.system.subspaces()) subspaces.push_back(detail::write_vectors(b));
  j["subspaces"] = std::move(subspaces);
  if (doc.system.gram()) j["gram"] = to_json(doc.system.gram()->matrix());
  if (doc.character) j["character"] = to_json(*doc.character);
  if (doc.residual) j["residual"] = *doc.residual;
  return j;
}

inline WeightVector weights_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("head") || !j.contains("tail") || !j["tail"].is_array()) {
    throw ParseError("character must be {head, tail}");
  }
  WeightVector w{detail::read_number(j["head"], "character head"), {}};
  for (const auto& v : j["tail"]) w.tail.push_back(detail::read_number(v, "character entry"));
  if (!std::all_of(w.tail.begin(), w.tail.end(), [](double v) { return std::isfinite(v); }) || !std::isfinite(w.head)) {
    throw Error(ErrorCode::InvalidArgument, "character entries must be finite");
  }
  return w;
}

inline SystemDocument document_from_json(const Json& j, const ToleranceConfig& tol = {}) {
  if (!j.is_object()) throw ParseError("document must be an object");
  if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer()) throw ParseError("ambient_dim must be an integer");
  if (!j.contains("subspaces") || !j["subspaces"].is_array()) throw ParseError("subspaces must be a list");
  const auto n = j["ambient_dim"].get<std::int64_t>();
  if (n < 1) throw Error(ErrorCode::InvalidSystem, "ambient_dim must be positive");
  std::vector<Matrix> subspaces;
  for (const auto& s : j["subspaces"]) subspaces.push_back(detail::read_vectors(s, n, "subspace"));

  std::optional<GramMatrix> gram;
  if (j.contains("gram")) {
    const Matrix rows = detail::read_vectors(j["gram"], n, "gram");
    if (rows.cols() != n) throw Error(ErrorCode::ShapeMismatch, "gram must be square of the ambient size");
    gram = GramMatrix(rows.transpose(), tol);
  }
  SystemDocument doc{SubspaceSystem(n, std::move(subspaces), std::move(gram), tol), std::nullopt, std::nullopt};
  if (j.contains("character")) doc.character = weights_from_json(j["character"]);
  if (j.contains("residual")) doc.residual = detail::read_number(j["residual"], "residual");
  return doc;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

inline SystemDocument load_document(const std::string& path, const ToleranceConfig& tol = {}) {
  return document_from_json(parse_json_text(read_text_file(path)), tol);
}

inline void save_document(const std::string& path, const SystemDocument& doc) {
  write_text_file(path, to_canonical_text(to_json(doc)));
}

}  // namespace orthoscalar
