#include "evpos/json_io.hpp"

#include <fstream>
#include <sstream>

#include "evpos/errors.hpp"

namespace evpos {

namespace {

Json complex_entry(Complex z) {
  if (z.imag() == 0.0) return Json(z.real());
  return Json::array({z.real(), z.imag()});
}

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return Complex(e.get<double>(), 0.0);
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return Complex(e[0].get<double>(), e[1].get<double>());
  }
  throw ParseError("matrix entry must be a number or an [re, im] pair");
}

}  // namespace

Json matrix_to_json(const Matrix& M) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) entries.push_back(complex_entry(M(i, j)));
  return Json{{"dim", M.rows()}, {"entries", entries}};
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw ParseError("matrix JSON needs fields \"dim\" and \"entries\"");
  }
  const auto n = j["dim"].get<Eigen::Index>();
  if (n <= 0) throw ParseError("matrix dimension must be positive");
  const Json& entries = j["entries"];
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n * n) {
    throw ParseError("matrix needs dim*dim row-major entries");
  }
  Matrix M(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j2 = 0; j2 < n; ++j2) M(i, j2) = entry_from_json(entries[k++]);
  if (!M.allFinite()) throw ParseError("matrix entries must be finite");
  return M;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_entry(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("vector JSON must be a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = entry_from_json(j[static_cast<size_t>(i)]);
  return v;
}

Json rank1_to_json(const Rank1& p) {
  Json j{{"phi", vector_to_json(p.phi)}, {"v", vector_to_json(p.v)}};
  j["alpha"] = complex_entry(p.alpha);
  return j;
}

Rank1 rank1_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("phi") || !j.contains("v")) {
    throw ParseError("rank-one JSON needs fields \"phi\" and \"v\"");
  }
  Rank1 p;
  p.phi = vector_from_json(j["phi"]);
  p.v = vector_from_json(j["v"]);
  if (p.phi.size() != p.v.size()) throw ParseError("rank-one factors must share a dimension");
  if (j.contains("alpha")) p.alpha = entry_from_json(j["alpha"]);
  return p;
}

Json report_to_json(const PositivityReport& r) {
  return Json{{"verdict", to_string(r.verdict)},
              {"dominant_eigenvalue", r.dominant_eigenvalue},
              {"dominance_gap", r.dominance_gap},
              {"projection_min_entry", r.projection_min_entry},
              {"metzler_margin", r.metzler_margin},
              {"certified_lambda1", r.certified_lambda1},
              {"evidence_notes", r.evidence_notes}};
}

Json certificate_to_json(const PerturbationCertificate& c) {
  return Json{{"lambda0", c.lambda0},
              {"radius_r", c.radius_r},
              {"epsilon", c.epsilon},
              {"lambda_B", c.lambda_B},
              {"simple", c.simple},
              {"projection_PB", matrix_to_json(c.projection_PB)},
              {"projection_drift", c.projection_drift},
              {"resolvent_positive_up_to", c.resolvent_positive_up_to}};
}

Json eigencurve_to_json(const std::vector<EigenCurvePoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) {
    Json u = Json::array(), du = Json::array();
    for (Eigen::Index i = 0; i < p.u.size(); ++i) u.push_back(p.u(i));
    for (Eigen::Index i = 0; i < p.du.size(); ++i) du.push_back(p.du(i));
    arr.push_back(Json{{"s", p.s}, {"lambda", p.lambda}, {"dlambda", p.dlambda},
                       {"u", u}, {"du", du}});
  }
  return arr;
}

std::string eigencurve_to_csv(const std::vector<EigenCurvePoint>& pts) {
  std::ostringstream out;
  out.precision(17);
  const Eigen::Index d = pts.empty() ? 0 : pts.front().u.size();
  out << "s,lambda,dlambda";
  for (Eigen::Index i = 1; i <= d; ++i) out << ",u_" << i;
  out << "\n";
  for (const auto& p : pts) {
    out << p.s << "," << p.lambda << "," << p.dlambda;
    for (Eigen::Index i = 0; i < d; ++i) out << "," << p.u(i);
    out << "\n";
  }
  return out.str();
}

Json error_to_json(const Error& e, const Json& context) {
  return Json{{"error", e.code()}, {"message", e.what()}, {"context", context}};
}

Matrix load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& ex) {
    throw ParseError("invalid JSON in " + path + ": " + ex.what());
  }
  return matrix_from_json(j);
}

Rank1 load_rank1_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open rank-one file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& ex) {
    throw ParseError("invalid JSON in " + path + ": " + ex.what());
  }
  return rank1_from_json(j);
}

}  // namespace evpos
