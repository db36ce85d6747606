#include "bargmann/io.hpp"

#include <fstream>
#include <stdexcept>

namespace bargmann {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("expected complex scalar as [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json cmat_to_json(const CMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

CMat cmat_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("expected non-empty matrix");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw std::invalid_argument("ragged matrix rows");
    for (int k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

Json cvec_to_json(const CVec& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CVec cvec_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected vector");
  CVec v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Json weight_to_json(const QuadraticWeight& w) {
  return Json{{"n", w.n}, {"H", cmat_to_json(w.H)}, {"S", cmat_to_json(w.S)}};
}

QuadraticWeight weight_from_json(const Json& j) {
  QuadraticWeight w;
  w.n = j.at("n").get<int>();
  w.H = cmat_from_json(j.at("H"));
  w.S = cmat_from_json(j.at("S"));
  w.validate();
  return w;
}

Json map_to_json(const AffineMap& phi) {
  return Json{{"A", cmat_to_json(phi.A)}, {"b", cvec_to_json(phi.b)}};
}

AffineMap map_from_json(const Json& j) {
  return AffineMap(cmat_from_json(j.at("A")), cvec_from_json(j.at("b")));
}

Json verdict_to_json(const Verdict& v) {
  Json conditions = Json::object();
  for (const auto& c : v.conditions)
    conditions[c.id] = Json{{"decision", to_string(c.decision)},
                            {"value", c.value}};
  Json eigenvalues = Json::array();
  for (int i = 0; i < v.certificate.eigenvalues.size(); ++i)
    eigenvalues.push_back(v.certificate.eigenvalues(i));
  Json null_basis = Json::array();
  for (int j = 0; j < v.certificate.null_basis.cols(); ++j)
    null_basis.push_back(cvec_to_json(v.certificate.null_basis.col(j)));
  Json certificate = Json{{"eigenvalues", eigenvalues},
                          {"null_basis", null_basis}};
  if (!v.certificate.violated.empty())
    certificate["violated"] = v.certificate.violated;
  if (v.certificate.witness.size())
    certificate["witness"] = cvec_to_json(v.certificate.witness);
  return Json{{"decision", to_string(v.decision)},
              {"conditions", conditions},
              {"certificate", certificate}};
}

Json decay_fit_to_json(const DecayFit& fit, int degree) {
  return Json{{"slope", fit.slope},
              {"intercept", fit.intercept},
              {"r2", fit.r2},
              {"degree", degree}};
}

ProblemFile problem_from_json(const Json& j) {
  ProblemFile p;
  p.phi1 = weight_from_json(j.at("phi1"));
  p.phi2 = weight_from_json(j.at("phi2"));
  p.map = map_from_json(j.at("map"));
  if (p.map.n1 != p.phi1.n || p.map.n2 != p.phi2.n)
    throw std::invalid_argument("problem: map/weight dimension mismatch");
  if (j.contains("options")) {
    const Json& o = j["options"];
    p.tol = o.value("tol", 1e-9);
    p.d1 = o.value("D1", 0);
    p.d2 = o.value("D2", 0);
  }
  if (p.d1 == 0) p.d1 = default_degree(p.phi1.n);
  if (p.d2 == 0) p.d2 = default_degree(p.phi2.n);
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open problem file: " + path);
  Json j;
  in >> j;
  return problem_from_json(j);
}

int default_degree(int n) {
  if (n <= 1) return 30;
  if (n == 2) return 12;
  return 6;
}

}  // namespace bargmann
