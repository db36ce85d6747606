#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bargmann/qform.hpp"
#include "test_support.hpp"

using namespace bargmann;
using namespace testsupport;

TEST_CASE("validate rejects malformed weights") {
  CMat h(2, 2);
  h << 1.0, Complex(0, 1), Complex(0, 1), 1.0;  // not Hermitian
  CHECK_THROWS_AS(QuadraticWeight(h, CMat::Zero(2, 2)),
                  std::invalid_argument);
  CMat s(2, 2);
  s << 0.0, 1.0, -1.0, 0.0;  // not symmetric
  CHECK_THROWS_AS(QuadraticWeight(CMat::Identity(2, 2), s),
                  std::invalid_argument);
}

TEST_CASE("radial weight evaluates to r|x|^2") {
  const QuadraticWeight w = QuadraticWeight::radial(2, 0.25);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const CVec x = random_cvec(rng, 2);
    CHECK(w(x) == doctest::Approx(0.25 * x.squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("one_dim weight matches the closed formula") {
  const Complex s(0.3, -0.2);
  const QuadraticWeight w = QuadraticWeight::one_dim(0.7, s);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const CVec x = random_cvec(rng, 1);
    const Complex z = x(0);
    const double want = 0.7 * std::norm(z) + (s * z * z).real();
    CHECK(w(x) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("split into Hermitian part plus Re of a holomorphic polynomial") {
  std::mt19937_64 rng(3);
  for (int n : {1, 2, 3}) {
    const QuadraticWeight w = random_psh_weight(rng, n);
    const auto [herm, f] = split_herm_plh(w);
    CHECK(herm.S.norm() == 0.0);
    for (int t = 0; t < 20; ++t) {
      const CVec x = random_cvec(rng, n);
      const double want = w(x);
      const double got = herm(x) + f.evaluate(x).real();
      CHECK(got == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("polarization restricts to the weight on the diagonal") {
  std::mt19937_64 rng(4);
  for (int n : {1, 2, 3}) {
    const QuadraticWeight w = random_psh_weight(rng, n);
    const Polarization psi = polarize(w);
    for (int t = 0; t < 20; ++t) {
      const CVec x = random_cvec(rng, n);
      const Complex v = psi(x, x.conjugate());
      CHECK(std::abs(v.imag()) < 1e-10 * std::max(1.0, std::abs(v)));
      CHECK(v.real() == doctest::Approx(w(x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("fundamental gap equals minus the Hermitian part of z - y") {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3}) {
    const QuadraticWeight w = random_psh_weight(rng, n);
    QuadraticWeight herm = w;
    herm.S.setZero();
    for (int t = 0; t < 50; ++t) {
      const CVec z = random_cvec(rng, n);
      const CVec y = random_cvec(rng, n);
      const double gap = fundamental_gap(w, z, y);
      CHECK(gap ==
            doctest::Approx(-herm(CVec(z - y))).epsilon(1e-9));
    }
  }
}

TEST_CASE("holomorphic gradient matches finite differences") {
  std::mt19937_64 rng(6);
  for (int n : {1, 2, 3}) {
    const QuadraticWeight w = random_psh_weight(rng, n);
    for (int t = 0; t < 10; ++t) {
      const CVec x = random_cvec(rng, n);
      const CVec got = holomorphic_gradient(w, x);
      const CVec want = fd_holomorphic_gradient(w, x);
      CHECK((got - want).norm() < 1e-6 * std::max(1.0, want.norm()));
    }
  }
}

TEST_CASE("realify reproduces values and the trace identity") {
  std::mt19937_64 rng(7);
  for (int n : {1, 2, 3}) {
    const QuadraticWeight w = random_psh_weight(rng, n);
    const RealForm f = realify(w);
    CHECK(f.dim() == 2 * n);
    for (int t = 0; t < 30; ++t) {
      const CVec x = random_cvec(rng, n);
      CHECK(f(to_real(x)) == doctest::Approx(w(x)).epsilon(1e-10));
    }
    CHECK(f.M.trace() ==
          doctest::Approx(2.0 * w.H.trace().real()).epsilon(1e-10));
  }
}

TEST_CASE("complex realify rejects non-real forms") {
  auto q = [](const CVec& x) { return x(0) * x(0); };
  CHECK_THROWS_AS(realify(1, std::function<Complex(const CVec&)>(q), 1e-9),
                  std::invalid_argument);
  auto qr = [](const CVec& x) { return Complex(std::norm(x(0)), 0.0); };
  const RealForm f =
      realify(1, std::function<Complex(const CVec&)>(qr), 1e-9);
  CHECK(f.lambda_min() == doctest::Approx(1.0));
  CHECK(f.lambda_max() == doctest::Approx(1.0));
}

TEST_CASE("strict plurisubharmonicity is three-valued") {
  CHECK(is_strictly_psh(QuadraticWeight::radial(2, 1.0)).decision ==
        Decision::Yes);
  CHECK(is_strictly_psh(QuadraticWeight::radial(2, -1.0)).decision ==
        Decision::No);

  CMat h(2, 2);
  h << 1.0, 0.0, 0.0, 1e-12;  // inside the relative band
  QuadraticWeight w;
  w.n = 2;
  w.H = h;
  w.S = CMat::Zero(2, 2);
  CHECK(is_strictly_psh(w).decision == Decision::Boundary);

  w.H.setZero();  // identically degenerate
  CHECK(is_strictly_psh(w).decision == Decision::No);
}

TEST_CASE("normalization constant for the radial model weight") {
  // Phi0 = (1/4)|x|^2 on C gives b^2 = 1/(2 pi).
  const QuadraticWeight w = QuadraticWeight::radial(1, 0.25);
  CHECK(normalization_constant(w) ==
        doctest::Approx(std::sqrt(1.0 / (2.0 * M_PI))).epsilon(1e-12));
  // Multiplicativity across dimensions.
  const QuadraticWeight w3 = QuadraticWeight::radial(3, 0.25);
  CHECK(normalization_constant(w3) ==
        doctest::Approx(std::pow(1.0 / (2.0 * M_PI), 1.5)).epsilon(1e-12));
  CHECK_THROWS_AS(normalization_constant(QuadraticWeight::radial(1, -1.0)),
                  std::invalid_argument);
}

TEST_CASE("realification round trip") {
  std::mt19937_64 rng(8);
  const CVec x = random_cvec(rng, 4);
  CHECK((to_complex(to_real(x)) - x).norm() == 0.0);
}
