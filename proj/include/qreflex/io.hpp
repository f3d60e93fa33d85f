#ifndef QREFLEX_IO_HPP
#define QREFLEX_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qreflex/errors.hpp"
#include "qreflex/inverse_eig.hpp"
#include "qreflex/qmatrix.hpp"

namespace qreflex::io {

/// Input that does not follow the matrix / problem file schema.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Matrix file:
///   {"rows": r, "cols": c, "data": [[w, x, y, z], ...]}   (row-major, r*c entries)
/// Numbers are written in shortest round-trip form, so write-then-read is exact.
nlohmann::json matrix_to_json(const QMatrixd& a);
QMatrixd matrix_from_json(const nlohmann::json& j);

QMatrixd read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const QMatrixd& a);

/// Problem file:
///   {"P": M, "Q": M, "Z": M, "lambda": [[re, im], ...], "class": "reflexive"|"antireflexive",
///    "E": M?, "W1": M?, "W2": M?}
/// "Q" may be omitted, meaning Q = P.
struct Problem {
  QMatrixd p;
  QMatrixd q;
  SpectralData<double> data;
  Structure structure = Structure::reflexive;
  std::optional<QMatrixd> e;
  std::optional<QMatrixd> w1;
  std::optional<QMatrixd> w2;
};

nlohmann::json problem_to_json(const Problem& pr);
Problem problem_from_json(const nlohmann::json& j);

Problem read_problem(const std::filesystem::path& path);
void write_problem(const std::filesystem::path& path, const Problem& pr);

/// Canonical text of a JSON document (two-space indent, trailing newline).
std::string dump(const nlohmann::json& j);

}  // namespace qreflex::io

#endif  // QREFLEX_IO_HPP
