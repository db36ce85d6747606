#ifndef BARGMANN_IO_HPP
#define BARGMANN_IO_HPP

#include <string>

#include <json.hpp>

#include "bargmann/decision.hpp"
#include "bargmann/numerics.hpp"
#include "bargmann/qform.hpp"
#include "bargmann/types.hpp"

namespace bargmann {

using Json = nlohmann::json;

// Complex scalars are always encoded as [re, im]; matrices row-major.
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json cmat_to_json(const CMat& m);
CMat cmat_from_json(const Json& j);
Json cvec_to_json(const CVec& v);
CVec cvec_from_json(const Json& j);

Json weight_to_json(const QuadraticWeight& w);
QuadraticWeight weight_from_json(const Json& j);

Json map_to_json(const AffineMap& phi);
AffineMap map_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);

Json decay_fit_to_json(const DecayFit& fit, int degree);

struct ProblemFile {
  QuadraticWeight phi1;
  QuadraticWeight phi2;
  AffineMap map;
  double tol = 1e-9;
  int d1 = 0;  // 0 = module default (30 for n=1, 12 for n=2)
  int d2 = 0;
};

ProblemFile problem_from_json(const Json& j);
ProblemFile load_problem(const std::string& path);

/// Module default truncation degree for dimension n.
int default_degree(int n);

}  // namespace bargmann

#endif
