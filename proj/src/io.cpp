#include "qreflex/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qreflex::io {

using nlohmann::json;

namespace {

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw FormatError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw FormatError(where + ": value is not finite");
  return d;
}

const json& require_key(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(where + ": missing \"" + key + "\"");
  return *it;
}

Eigen::Index count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw FormatError(where + ": expected a nonnegative integer");
  return static_cast<Eigen::Index>(v.get<long long>());
}

QMatrixd matrix_at(const json& j, const char* key) {
  try {
    return matrix_from_json(require_key(j, key, "problem"));
  } catch (const FormatError& e) {
    throw FormatError(std::string("problem.") + key + ": " + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw FormatError(e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("write failed for " + path.string());
}

}  // namespace

json matrix_to_json(const QMatrixd& a) {
  json data = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      const auto& q = a(i, j);
      data.push_back({q.w, q.x, q.y, q.z});
    }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

QMatrixd matrix_from_json(const json& j) {
  const auto rows = count(require_key(j, "rows", "matrix"), "matrix.rows");
  const auto cols = count(require_key(j, "cols", "matrix"), "matrix.cols");
  const json& data = require_key(j, "data", "matrix");
  if (!data.is_array()) throw FormatError("matrix.data: expected an array");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw FormatError("matrix.data: " + std::to_string(data.size()) + " entries for a " +
                      std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  QMatrixd a(rows, cols);
  for (Eigen::Index idx = 0; idx < rows * cols; ++idx) {
    const json& e = data[static_cast<std::size_t>(idx)];
    const std::string where = "matrix.data[" + std::to_string(idx) + "]";
    if (!e.is_array() || e.size() != 4) throw FormatError(where + ": expected [w, x, y, z]");
    a(idx / cols, idx % cols) = {finite_number(e[0], where), finite_number(e[1], where),
                                 finite_number(e[2], where), finite_number(e[3], where)};
  }
  return a;
}

QMatrixd read_matrix(const std::filesystem::path& path) {
  try {
    return matrix_from_json(parse(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_matrix(const std::filesystem::path& path, const QMatrixd& a) {
  write_text(path, dump(matrix_to_json(a)));
}

json problem_to_json(const Problem& pr) {
  json lambda = json::array();
  for (const auto& l : pr.data.lambdas) lambda.push_back({l.re(), l.im()});
  json j = {{"P", matrix_to_json(pr.p)},
            {"Q", matrix_to_json(pr.q)},
            {"Z", matrix_to_json(pr.data.z)},
            {"lambda", std::move(lambda)},
            {"class", std::string(to_string(pr.structure))}};
  if (pr.e) j["E"] = matrix_to_json(*pr.e);
  if (pr.w1) j["W1"] = matrix_to_json(*pr.w1);
  if (pr.w2) j["W2"] = matrix_to_json(*pr.w2);
  return j;
}

Problem problem_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("problem: expected an object");
  Problem pr;
  pr.p = matrix_at(j, "P");
  pr.q = j.contains("Q") ? matrix_at(j, "Q") : pr.p;
  pr.data.z = matrix_at(j, "Z");

  const json& cls = require_key(j, "class", "problem");
  if (cls == "reflexive")
    pr.structure = Structure::reflexive;
  else if (cls == "antireflexive")
    pr.structure = Structure::antireflexive;
  else
    throw FormatError("problem.class: expected \"reflexive\" or \"antireflexive\"");

  const json& lambda = require_key(j, "lambda", "problem");
  if (!lambda.is_array()) throw FormatError("problem.lambda: expected an array");
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const std::string where = "problem.lambda[" + std::to_string(i) + "]";
    const json& l = lambda[i];
    if (!l.is_array() || l.size() != 2) throw FormatError(where + ": expected [re, im]");
    const double re = finite_number(l[0], where), im = finite_number(l[1], where);
    if (im < 0) throw FormatError(where + ": imaginary part must be nonnegative");
    pr.data.lambdas.emplace_back(re, im);
  }
  if (static_cast<Eigen::Index>(pr.data.lambdas.size()) != pr.data.z.cols())
    throw FormatError("problem: " + std::to_string(pr.data.lambdas.size()) +
                      " eigenvalues for " + std::to_string(pr.data.z.cols()) + " columns of Z");

  const auto n = pr.p.rows();
  const auto square_n = [n](const QMatrixd& m) { return m.rows() == n && m.cols() == n; };
  if (!square_n(pr.p) || !square_n(pr.q))
    throw FormatError("problem: P and Q must both be square of the same size");
  if (pr.data.z.rows() != n) throw FormatError("problem: Z must have as many rows as P");

  if (j.contains("E")) {
    pr.e = matrix_at(j, "E");
    if (!square_n(*pr.e)) throw FormatError("problem.E: must be square of the size of P");
  }
  if (j.contains("W1")) pr.w1 = matrix_at(j, "W1");
  if (j.contains("W2")) pr.w2 = matrix_at(j, "W2");
  return pr;
}

Problem read_problem(const std::filesystem::path& path) {
  try {
    return problem_from_json(parse(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_problem(const std::filesystem::path& path, const Problem& pr) {
  write_text(path, dump(problem_to_json(pr)));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qreflex::io
