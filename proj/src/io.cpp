#include "lftd/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lftd {

namespace {

Error bad(const std::string& what) { return Error(ErrorKind::InvalidArgument, what); }

Eigen::Index dimension_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw bad(std::string("matrix needs integer \"") + key + "\"");
  const auto v = j[key].get<long long>();
  if (v < 1) throw bad(std::string("\"") + key + "\" must be positive");
  return static_cast<Eigen::Index>(v);
}

double number(const Json& v) {
  if (!v.is_number()) throw bad("matrix entries must be numbers");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorKind::NonFinite, "matrix entry is not finite");
  return x;
}

void read_part(const Json& j, const char* key, Eigen::Index rows, Eigen::Index cols, Matrix& m, bool imag) {
  if (!j.contains(key)) throw bad(std::string("matrix needs \"") + key + "\"");
  const Json& part = j[key];
  if (!part.is_array() || static_cast<Eigen::Index>(part.size()) != rows)
    throw bad(std::string("\"") + key + "\" must have " + std::to_string(rows) + " rows");
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = part[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw bad(std::string("\"") + key + "\" row " + std::to_string(r) + " must have " + std::to_string(cols) +
                " entries");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double x = number(row[static_cast<std::size_t>(c)]);
      if (imag) m(r, c).imag(x);
      else m(r, c).real(x);
    }
  }
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  require_finite(m, "serialized matrix");
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ii = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ii.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object()) throw bad("matrix must be a JSON object");
  const Eigen::Index rows = dimension_field(j, "rows");
  const Eigen::Index cols = dimension_field(j, "cols");
  Matrix m = Matrix::Zero(rows, cols);
  read_part(j, "re", rows, cols, m, false);
  read_part(j, "im", rows, cols, m, true);
  return m;
}

DomainSpec domain_from_json(const Json& j, const Tolerance& tol) {
  if (!j.is_object()) throw bad("domain must be a JSON object");
  for (const char* key : {"space", "C", "D", "Z0"})
    if (!j.contains(key)) throw bad(std::string("domain needs \"") + key + "\"");
  const Matrix c = matrix_from_json(j["C"]);
  const Matrix d = matrix_from_json(j["D"]);
  const Matrix z0 = matrix_from_json(j["Z0"]);
  const Json& s = j["space"];
  if (s.is_string()) {
    if (s.get<std::string>() != "full") throw bad("space must be \"full\" or {\"basis\": [...]}");
    return new_domain(OperatorSpace::full(z0.rows(), z0.cols()), c, d, z0, tol, "file");
  }
  if (!s.is_object() || !s.contains("basis") || !s["basis"].is_array() || s["basis"].empty())
    throw bad("space must be \"full\" or {\"basis\": [...]}");
  std::vector<Matrix> basis;
  for (const auto& b : s["basis"]) basis.push_back(matrix_from_json(b));
  return new_domain(OperatorSpace(z0.rows(), z0.cols(), std::move(basis), "file"), c, d, z0, tol, "file");
}

Json domain_to_json(const DomainSpec& dom) {
  Json space;
  if (dom.space().is_full()) {
    space = "full";
  } else {
    Json basis = Json::array();
    for (const auto& b : dom.space().basis()) basis.push_back(matrix_to_json(b));
    space = Json{{"basis", std::move(basis)}};
  }
  return Json{{"space", std::move(space)},
              {"C", matrix_to_json(dom.c())},
              {"D", matrix_to_json(dom.d())},
              {"Z0", matrix_to_json(dom.base_point())}};
}

std::vector<Matrix> path_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("path")) throw bad("path file needs \"path\"");
    arr = &j["path"];
  }
  if (!arr->is_array()) throw bad("path must be an array of matrices");
  std::vector<Matrix> out;
  for (const auto& m : *arr) out.push_back(matrix_from_json(m));
  return out;
}

Json chain_to_json(const AutomorphismChain& chain) {
  Json waypoints = Json::array(), factors = Json::array(), centers = Json::array();
  for (const auto& w : chain.waypoints) waypoints.push_back(matrix_to_json(w));
  for (const auto& f : chain.factors) factors.push_back(Json{{"M", matrix_to_json(f.coefficient_matrix())}});
  for (const auto& y : chain.centers) centers.push_back(matrix_to_json(y));
  return Json{{"waypoints", std::move(waypoints)},
              {"factors", std::move(factors)},
              {"residual", chain.residual},
              {"centers", std::move(centers)},
              {"step_norms", chain.step_norms},
              {"padded", chain.padded},
              {"folded",
               Json{{"left", matrix_to_json(chain.folded.left)},
                    {"right", matrix_to_json(chain.folded.right)},
                    {"anchor", matrix_to_json(chain.folded.anchor)},
                    {"offset", matrix_to_json(chain.folded.offset)}}}};
}

Json report_to_json(const Report& report, bool include_timing) {
  const RunConfig& c = report.config;
  Json suites = Json::array();
  for (const auto& s : report.suites) {
    Json rec{{"suite", s.name},
             {"anchor", s.anchor},
             {"trials", s.trials},
             {"max_residual", std::isfinite(s.max_residual) ? Json(s.max_residual) : Json("inf")},
             {"threshold", s.threshold},
             {"pass", s.passed}};
    if (!s.note.empty()) rec["note"] = s.note;
    if (include_timing) rec["elapsed_ms"] = s.elapsed_ms;
    suites.push_back(std::move(rec));
  }
  return Json{{"config",
               Json{{"seed", c.seed},
                    {"trials", c.trials},
                    {"dim_h", c.dim_h},
                    {"dim_k", c.dim_k},
                    {"eq_tol", c.tol.eq_tol},
                    {"inv_tol", c.tol.inv_tol},
                    {"series_tol", c.tol.series_tol}}},
              {"suites", std::move(suites)},
              {"pass", report.passed()}};
}

std::string report_to_text(const Report& report, bool include_timing) {
  std::ostringstream os;
  std::size_t width = 0;
  for (const auto& s : report.suites) width = std::max(width, s.name.size());
  for (const auto& s : report.suites) {
    os << (s.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width) + 2) << s.name
       << std::right << std::setw(7) << s.trials << "  max " << std::scientific << std::setprecision(3)
       << s.max_residual << " <= " << s.threshold;
    if (include_timing) os << std::fixed << std::setprecision(1) << "  " << s.elapsed_ms << " ms";
    os << "  [" << s.anchor << "]";
    if (!s.note.empty()) os << "  " << s.note;
    os << '\n';
  }
  os << (report.passed() ? "all suites passed" : "some suites FAILED") << '\n';
  return os.str();
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw bad(what + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bad("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

}  // namespace lftd
