#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sofup/statespace.hpp"

namespace sofup::cli {

using Json = nlohmann::ordered_json;

/// Input file missing or unreadable.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input file readable but not a valid document for its role.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A loaded input file: parsed JSON plus the raw bytes for digesting.
struct InputFile {
  std::filesystem::path path;
  std::string bytes;
  Json json;
};

InputFile read_json_file(const std::filesystem::path& path);

/// The shared model document: A, B, C required; F_nominal, Delta, rho optional.
struct ModelFile {
  StateSpaceModel model;
  std::optional<Matrix> F_nominal;
  std::optional<Matrix> Delta;
  std::optional<double> rho;
};

ModelFile parse_model(const Json& doc);

/// Row-major nested arrays to a dense matrix; ragged or non-numeric input throws InputError.
Matrix parse_matrix(const Json& value, std::string_view name);
Vector parse_vector(const Json& value, std::string_view name);

/// Accepts a bare nested array or an object holding one of `keys`.
Matrix matrix_from_document(const Json& doc, std::initializer_list<const char*> keys,
                            std::string_view role);

Json matrix_to_json(const Matrix& M);
Json vector_to_json(const Vector& v);

/// FNV-1a 64-bit digest rendered as "fnv1a64:<16 hex digits>".
class Digest {
 public:
  Digest& add(std::string_view bytes);
  [[nodiscard]] std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

/// {tool, version, seed, input_digest}; seed is null for verbs without randomness.
Json metadata(std::optional<std::uint64_t> seed, const Digest& digest);

/// 17 significant digits.
std::string format_number(double value);

/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text, std::ostream& stdout_stream);

}  // namespace sofup::cli
