#include "lyap/ensemble_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lyap {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

Real number_at(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number");
  return static_cast<Real>(j.get<double>());
}

Vector vector_at(const json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "expected an array");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(number_at(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return v;
}

Matrix square_at(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) field_error(field, "expected a non-empty array of rows");
  std::vector<std::vector<Real>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(vector_at(j[i], field + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != j.size()) {
      field_error(field + "[" + std::to_string(i) + "]",
                  "expected " + std::to_string(j.size()) + " entries");
    }
  }
  return Matrix::from_rows(rows);
}

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

std::string fmt17(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(v));
  return buf;
}

} // namespace

MatrixEnsemble parse_ensemble(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& ex) {
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_of(text, ex.byte)) + ": " + ex.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "top level must be an object");

  MatrixEnsemble e;
  if (!doc.contains("dimension")) field_error("dimension", "missing");
  if (!doc["dimension"].is_number_integer() || doc["dimension"].get<long long>() < 1) {
    field_error("dimension", "expected a positive integer");
  }
  e.dim = static_cast<std::size_t>(doc["dimension"].get<long long>());

  if (!doc.contains("matrices")) field_error("matrices", "missing");
  const json& mats = doc["matrices"];
  if (!mats.is_array() || mats.empty()) field_error("matrices", "expected a non-empty array");
  for (std::size_t m = 0; m < mats.size(); ++m) {
    e.matrices.push_back(square_at(mats[m], "matrices[" + std::to_string(m) + "]"));
  }

  if (!doc.contains("transition")) field_error("transition", "missing");
  e.transition = square_at(doc["transition"], "transition");

  if (doc.contains("initial")) {
    e.initial = vector_at(doc["initial"], "initial");
  } else {
    e.initial.assign(e.matrices.size(), Real(1) / static_cast<Real>(e.matrices.size()));
  }

  require_valid(e);
  return e;
}

MatrixEnsemble load_ensemble(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ensemble(buf.str());
}

std::string emit_ensemble(const MatrixEnsemble& e) {
  auto row = [](std::span<const Real> r) {
    std::string s = "[";
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += ", ";
      s += fmt17(r[i]);
    }
    return s + "]";
  };
  auto square = [&row](const Matrix& m, const char* indent) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.dim(); ++i) {
      if (i) s += ",";
      s += "\n";
      s += indent;
      s += "  ";
      s += row(m.row(i));
    }
    return s + "\n" + indent + "]";
  };

  std::string out = "{\n  \"dimension\": " + std::to_string(e.dim) + ",\n  \"matrices\": [";
  for (std::size_t m = 0; m < e.matrices.size(); ++m) {
    out += m ? ",\n    " : "\n    ";
    out += square(e.matrices[m], "    ");
  }
  out += "\n  ],\n  \"transition\": " + square(e.transition, "  ");
  out += ",\n  \"initial\": " + row(e.initial) + "\n}\n";
  return out;
}

} // namespace lyap
