#include "model_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "sofup/errors.hpp"

#ifndef SOFUP_VERSION
#define SOFUP_VERSION "0.0.0"
#endif

namespace sofup::cli {

InputFile read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  InputFile file{path, buffer.str(), {}};
  try {
    file.json = Json::parse(file.bytes);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return file;
}

Matrix parse_matrix(const Json& value, std::string_view name) {
  const std::string label(name);
  if (!value.is_array() || value.empty()) {
    throw InputError(label + " must be a nonempty array of rows");
  }
  const size_t rows = value.size();
  const size_t cols = value.front().is_array() ? value.front().size() : 0;
  if (cols == 0) {
    throw InputError(label + " rows must be nonempty arrays");
  }
  Matrix M(static_cast<Index>(rows), static_cast<Index>(cols));
  for (size_t i = 0; i < rows; ++i) {
    const Json& row = value[i];
    if (!row.is_array() || row.size() != cols) {
      throw Error(ErrorCode::DimensionMismatch,
                  label + " is ragged: row " + std::to_string(i) + " has " +
                      std::to_string(row.is_array() ? row.size() : 0) + " entries, expected " +
                      std::to_string(cols));
    }
    for (size_t j = 0; j < cols; ++j) {
      if (!row[j].is_number()) {
        throw InputError(label + "[" + std::to_string(i) + "][" + std::to_string(j) +
                         "] is not a number");
      }
      M(static_cast<Index>(i), static_cast<Index>(j)) = row[j].get<double>();
    }
  }
  return M;
}

Vector parse_vector(const Json& value, std::string_view name) {
  const std::string label(name);
  if (!value.is_array() || value.empty()) {
    throw InputError(label + " must be a nonempty array of numbers");
  }
  Vector v(static_cast<Index>(value.size()));
  for (size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_number()) {
      throw InputError(label + "[" + std::to_string(i) + "] is not a number");
    }
    v(static_cast<Index>(i)) = value[i].get<double>();
  }
  return v;
}

ModelFile parse_model(const Json& doc) {
  if (!doc.is_object()) {
    throw InputError("model file must be a JSON object");
  }
  for (const char* key : {"A", "B", "C"}) {
    if (!doc.contains(key)) throw InputError(std::string("model file is missing \"") + key + "\"");
  }
  ModelFile file{StateSpaceModel(parse_matrix(doc["A"], "A"), parse_matrix(doc["B"], "B"),
                                 parse_matrix(doc["C"], "C")),
                 std::nullopt, std::nullopt, std::nullopt};
  const StateSpaceModel& model = file.model;
  if (doc.contains("F_nominal") && !doc["F_nominal"].is_null()) {
    Matrix F = parse_matrix(doc["F_nominal"], "F_nominal");
    if (F.rows() != model.m() || F.cols() != model.p()) {
      throw Error(ErrorCode::DimensionMismatch, "F_nominal must be m x p");
    }
    file.F_nominal = std::move(F);
  }
  if (doc.contains("Delta") && !doc["Delta"].is_null()) {
    Matrix D = parse_matrix(doc["Delta"], "Delta");
    if (D.rows() != model.n() || D.cols() != model.n()) {
      throw Error(ErrorCode::DimensionMismatch, "Delta must be n x n");
    }
    file.Delta = std::move(D);
  }
  if (doc.contains("rho") && !doc["rho"].is_null()) {
    if (!doc["rho"].is_number()) throw InputError("rho must be a number");
    file.rho = doc["rho"].get<double>();
  }
  return file;
}

Matrix matrix_from_document(const Json& doc, std::initializer_list<const char*> keys,
                            std::string_view role) {
  if (doc.is_array()) return parse_matrix(doc, role);
  if (doc.is_object()) {
    for (const char* key : keys) {
      if (doc.contains(key)) return parse_matrix(doc[key], key);
    }
  }
  std::string expected;
  for (const char* key : keys) expected += std::string(expected.empty() ? "" : ", ") + key;
  throw InputError(std::string(role) + " file needs a nested array or one of: " + expected);
}

Json matrix_to_json(const Matrix& M) {
  Json rows = Json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Digest& Digest::add(std::string_view bytes) {
  for (const unsigned char c : bytes) {
    state_ ^= c;
    state_ *= 0x100000001b3ull;
  }
  // Separator so ("ab", "c") and ("a", "bc") differ.
  state_ ^= 0xff;
  state_ *= 0x100000001b3ull;
  return *this;
}

std::string Digest::hex() const { return fmt::format("fnv1a64:{:016x}", state_); }

Json metadata(std::optional<std::uint64_t> seed, const Digest& digest) {
  Json meta = Json::object();
  meta["tool"] = "sofup";
  meta["version"] = SOFUP_VERSION;
  meta["seed"] = seed ? Json(*seed) : Json(nullptr);
  meta["input_digest"] = digest.hex();
  return meta;
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

void write_text(const std::string& path, const std::string& text, std::ostream& stdout_stream) {
  if (path.empty() || path == "-") {
    stdout_stream << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace sofup::cli
