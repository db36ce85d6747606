#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bargmann/decision.hpp"
#include "bargmann/poly.hpp"
#include "test_support.hpp"

using namespace bargmann;
using namespace testsupport;

TEST_CASE("graded lex order") {
  CHECK(grlex_less({0, 0}, {1, 0}));
  CHECK(grlex_less({1, 0}, {0, 1}));       // same degree, first var dominates
  CHECK(grlex_less({0, 1}, {2, 0}));       // lower degree first
  CHECK_FALSE(grlex_less({1, 1}, {1, 1}));
  CHECK_FALSE(grlex_less({0, 1}, {1, 0}));
}

TEST_CASE("monomial enumeration is graded lex and complete") {
  const auto monos = monomials_up_to(2, 3);
  CHECK(monos.size() == 10);  // C(5,2)
  for (std::size_t i = 1; i < monos.size(); ++i)
    CHECK(grlex_less(monos[i - 1], monos[i]));
  CHECK(monos.front() == MultiIndex{0, 0});
  CHECK(monos[1] == MultiIndex{1, 0});
  CHECK(monos[2] == MultiIndex{0, 1});
  CHECK(monos.back() == MultiIndex{0, 3});

  const auto m1 = monomials_up_to(3, 4);
  CHECK(m1.size() == 35);  // C(7,3)
}

TEST_CASE("arithmetic and evaluation") {
  Poly p(2);
  p.add_term({1, 0}, 2.0);           // 2x
  p.add_term({0, 2}, Complex(0, 1)); // i y^2
  Poly q(2);
  q.add_term({0, 0}, 1.0);
  q.add_term({1, 1}, -1.0);          // 1 - xy

  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const CVec x = random_cvec(rng, 2);
    const Complex pv = 2.0 * x(0) + Complex(0, 1) * x(1) * x(1);
    const Complex qv = 1.0 - x(0) * x(1);
    CHECK(rel_err(p.evaluate(x), pv) < 1e-12);
    CHECK(rel_err((p + q).evaluate(x), pv + qv) < 1e-12);
    CHECK(rel_err((p * q).evaluate(x), pv * qv) < 1e-12);
    CHECK(rel_err((p * Complex(0.5, 0.5)).evaluate(x),
                  Complex(0.5, 0.5) * pv) < 1e-12);
  }
  CHECK(p.degree() == 2);
  CHECK((p * q).degree() == 4);
}

TEST_CASE("zero coefficients are dropped") {
  Poly p(1);
  p.add_term({1}, 1.0);
  p.add_term({1}, -1.0);
  CHECK(p.empty());
  CHECK(p.degree() == -1);
}

TEST_CASE("affine composition agrees pointwise") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 20; ++t) {
    const int n1 = 1 + (t % 2);
    const int n2 = 1 + ((t / 2) % 2);
    const AffineMap phi = random_map(rng, n1, n2);
    Poly p(n1);
    const auto monos = monomials_up_to(n1, 3);
    for (const auto& a : monos)
      p.add_term(a, random_cvec(rng, 1)(0));
    const Poly comp = compose_affine(p, phi);
    CHECK(comp.nvars() == n2);
    for (int s = 0; s < 10; ++s) {
      const CVec x = random_cvec(rng, n2);
      CHECK(rel_err(comp.evaluate(x), p.evaluate(phi(x))) < 1e-10);
    }
  }
}

TEST_CASE("composition degree never increases") {
  std::mt19937_64 rng(13);
  const AffineMap phi = random_map(rng, 2, 2);
  Poly p(2);
  p.add_term({2, 1}, 1.0);
  CHECK(compose_affine(p, phi).degree() <= 3);
}
