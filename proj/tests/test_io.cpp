#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bargmann/io.hpp"
#include "test_support.hpp"

using namespace bargmann;
using namespace testsupport;

TEST_CASE("complex scalars round trip as [re, im]") {
  const Complex z(1.5, -2.25);
  const Json j = complex_to_json(z);
  CHECK(j.is_array());
  CHECK(j[0] == 1.5);
  CHECK(j[1] == -2.25);
  CHECK(complex_from_json(j) == z);
  CHECK(complex_from_json(Json(3.0)) == Complex(3.0, 0.0));
  CHECK_THROWS_AS(complex_from_json(Json::array({1.0})),
                  std::invalid_argument);
}

TEST_CASE("matrices and vectors round trip") {
  std::mt19937_64 rng(51);
  const CMat m = random_cmat(rng, 3, 2);
  CHECK((cmat_from_json(cmat_to_json(m)) - m).norm() == 0.0);
  const CVec v = random_cvec(rng, 4);
  CHECK((cvec_from_json(cvec_to_json(v)) - v).norm() == 0.0);
  CHECK_THROWS_AS(cmat_from_json(Json::array()), std::invalid_argument);
}

TEST_CASE("weights round trip and are validated") {
  std::mt19937_64 rng(52);
  const QuadraticWeight w = random_psh_weight(rng, 2);
  const QuadraticWeight back = weight_from_json(weight_to_json(w));
  CHECK(back.n == 2);
  CHECK((back.H - w.H).norm() == 0.0);
  CHECK((back.S - w.S).norm() == 0.0);

  Json bad = weight_to_json(w);
  bad["H"][0][1] = complex_to_json(Complex(5, 5));  // breaks Hermitian
  CHECK_THROWS_AS(weight_from_json(bad), std::invalid_argument);
}

TEST_CASE("maps round trip") {
  std::mt19937_64 rng(53);
  const AffineMap phi = random_map(rng, 2, 3);
  const AffineMap back = map_from_json(map_to_json(phi));
  CHECK(back.n1 == 2);
  CHECK(back.n2 == 3);
  CHECK((back.A - phi.A).norm() == 0.0);
  CHECK((back.b - phi.b).norm() == 0.0);
}

TEST_CASE("verdict serialization shape") {
  const QuadraticWeight w = QuadraticWeight::radial(1, 0.25);
  const Verdict v = is_bounded(w, w, AffineMap::one_dim(1.0, 1.0));
  const Json j = verdict_to_json(v);
  CHECK(j["decision"] == "no");
  CHECK(j.contains("conditions"));
  CHECK(j["certificate"].contains("eigenvalues"));
  CHECK(j["certificate"]["violated"] == "sup_linear");
  CHECK(j["certificate"].contains("witness"));

  const Verdict yes = is_bounded(w, w, AffineMap::one_dim(0.5, 0.0));
  const Json jy = verdict_to_json(yes);
  CHECK(jy["decision"] == "yes");
  CHECK_FALSE(jy["certificate"].contains("violated"));
}

TEST_CASE("decay fit serialization") {
  DecayFit fit{-0.69, 1.2, 0.999, 20};
  const Json j = decay_fit_to_json(fit, 30);
  CHECK(j["slope"] == -0.69);
  CHECK(j["intercept"] == 1.2);
  CHECK(j["r2"] == 0.999);
  CHECK(j["degree"] == 30);
}

TEST_CASE("problem files parse with defaults") {
  Json j;
  j["phi1"] = weight_to_json(QuadraticWeight::radial(1, 0.25));
  j["phi2"] = weight_to_json(QuadraticWeight::radial(1, 0.25));
  j["map"] = map_to_json(AffineMap::one_dim(0.5, 0.0));
  ProblemFile p = problem_from_json(j);
  CHECK(p.tol == 1e-9);
  CHECK(p.d1 == 30);
  CHECK(p.d2 == 30);

  j["options"] = Json{{"tol", 1e-7}, {"D1", 10}, {"D2", 11}};
  p = problem_from_json(j);
  CHECK(p.tol == 1e-7);
  CHECK(p.d1 == 10);
  CHECK(p.d2 == 11);

  // Dimension mismatch between map and weights.
  j["map"] = map_to_json(AffineMap::identity(2));
  CHECK_THROWS_AS(problem_from_json(j), std::invalid_argument);

  CHECK(default_degree(1) == 30);
  CHECK(default_degree(2) == 12);
}

TEST_CASE("load_problem reports missing files") {
  CHECK_THROWS_AS(load_problem("/nonexistent/problem.json"),
                  std::invalid_argument);
}
