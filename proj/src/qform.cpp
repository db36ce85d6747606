#include "bargmann/qform.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace bargmann {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

QuadraticWeight::QuadraticWeight(CMat h, CMat s)
    : n(static_cast<int>(h.rows())), H(std::move(h)), S(std::move(s)) {
  validate();
}

QuadraticWeight QuadraticWeight::radial(int n, double r) {
  QuadraticWeight w;
  w.n = n;
  w.H = CMat::Identity(n, n) * r;
  w.S = CMat::Zero(n, n);
  return w;
}

QuadraticWeight QuadraticWeight::one_dim(double r, Complex s) {
  QuadraticWeight w;
  w.n = 1;
  w.H = CMat::Constant(1, 1, r);
  w.S = CMat::Constant(1, 1, s);
  return w;
}

double QuadraticWeight::operator()(const CVec& x) const {
  const Complex herm = x.dot(H.transpose() * x);        // sum H_kl x_k conj(x_l)
  const Complex plh = x.conjugate().dot(S * x);         // x^T S x
  return herm.real() + plh.real();
}

void QuadraticWeight::validate(double tol) const {
  if (H.rows() != n || H.cols() != n || S.rows() != n || S.cols() != n)
    throw std::invalid_argument("QuadraticWeight: dimension mismatch");
  const double scale = std::max(1.0, std::max(H.norm(), S.norm()));
  if ((H - H.adjoint()).norm() > tol * scale)
    throw std::invalid_argument("QuadraticWeight: H is not Hermitian");
  if ((S - S.transpose()).norm() > tol * scale)
    throw std::invalid_argument("QuadraticWeight: S is not symmetric");
}

Complex Polarization::operator()(const CVec& x, const CVec& y) const {
  const Complex cross = x.conjugate().dot(H * y);           // x^T H y
  const Complex xx = x.conjugate().dot(S * x);               // x^T S x
  const Complex yy = y.conjugate().dot(S.conjugate() * y);   // y^T conj(S) y
  return cross + 0.5 * xx + 0.5 * yy;
}

RealForm RealForm::from_matrix(const RMat& m) {
  RealForm f;
  f.M = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<RMat> es(f.M);
  f.eigvals = es.eigenvalues();
  f.eigvecs = es.eigenvectors();
  return f;
}

double RealForm::scale() const {
  if (!eigvals.size()) return 0.0;
  return std::max(std::abs(eigvals(0)), std::abs(eigvals(eigvals.size() - 1)));
}

RVec to_real(const CVec& x) {
  const int n = static_cast<int>(x.size());
  RVec X(2 * n);
  X.head(n) = x.real();
  X.tail(n) = x.imag();
  return X;
}

CVec to_complex(const RVec& X) {
  const int n = static_cast<int>(X.size()) / 2;
  CVec x(n);
  x.real() = X.head(n);
  x.imag() = X.tail(n);
  return x;
}

Verdict is_strictly_psh(const QuadraticWeight& w, double tol) {
  w.validate();
  Eigen::SelfAdjointEigenSolver<CMat> es(w.H);
  const RVec ev = es.eigenvalues();
  const double lmin = ev(0);
  const double scale =
      std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));

  Verdict v;
  v.certificate.eigenvalues = ev;
  if (scale == 0.0) {
    v.decision = Decision::No;  // identically degenerate Levi form
  } else if (lmin > tol * scale) {
    v.decision = Decision::Yes;
  } else if (lmin < -tol * scale) {
    v.decision = Decision::No;
  } else {
    v.decision = Decision::Boundary;
  }
  v.conditions.push_back({"strictly_psh", v.decision, lmin});
  if (v.decision == Decision::No) v.certificate.violated = "strictly_psh";
  return v;
}

std::pair<QuadraticWeight, Poly> split_herm_plh(const QuadraticWeight& w) {
  QuadraticWeight herm;
  herm.n = w.n;
  herm.H = w.H;
  herm.S = CMat::Zero(w.n, w.n);

  Poly f(w.n);
  for (int k = 0; k < w.n; ++k) {
    for (int l = k; l < w.n; ++l) {
      MultiIndex a(w.n, 0);
      a[k] += 1;
      a[l] += 1;
      const Complex c = (k == l) ? w.S(k, k) : w.S(k, l) + w.S(l, k);
      f.add_term(a, c);
    }
  }
  return {herm, f};
}

Polarization polarize(const QuadraticWeight& w) {
  Polarization psi;
  psi.n = w.n;
  psi.H = w.H;
  psi.S = w.S;
  return psi;
}

CVec holomorphic_gradient(const QuadraticWeight& w, const CVec& x) {
  if (x.size() != w.n)
    throw std::invalid_argument("holomorphic_gradient: dimension mismatch");
  return w.H * x.conjugate() + w.S * x;
}

RealForm realify(int m, const std::function<double(const RVec&)>& q) {
  RMat M(m, m);
  RVec diag(m);
  for (int i = 0; i < m; ++i) {
    RVec e = RVec::Zero(m);
    e(i) = 1.0;
    diag(i) = q(e);
    M(i, i) = diag(i);
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      RVec e = RVec::Zero(m);
      e(i) = 1.0;
      e(j) = 1.0;
      const double v = q(e);
      M(i, j) = M(j, i) = 0.5 * (v - diag(i) - diag(j));
    }
  }
  return RealForm::from_matrix(M);
}

RealForm realify(int n, const std::function<Complex(const CVec&)>& q,
                 double tol) {
  const int m = 2 * n;
  // Sample basis points and a few random directions for realness.
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double scale = 1.0;
  auto check = [&](const RVec& X) {
    const Complex v = q(to_complex(X));
    scale = std::max(scale, std::abs(v));
    if (std::abs(v.imag()) > tol * scale)
      throw std::invalid_argument(
          "realify: form is not real-valued (imaginary part detected)");
  };
  for (int i = 0; i < m; ++i) {
    RVec e = RVec::Zero(m);
    e(i) = 1.0;
    check(e);
  }
  for (int s = 0; s < 8; ++s) {
    RVec X(m);
    for (int i = 0; i < m; ++i) X(i) = gauss(rng);
    check(X);
  }
  return realify(m, [&](const RVec& X) { return q(to_complex(X)).real(); });
}

RealForm realify(const QuadraticWeight& w) {
  return realify(2 * w.n,
                 [&](const RVec& X) { return w(to_complex(X)); });
}

double fundamental_gap(const QuadraticWeight& w, const CVec& z,
                       const CVec& y) {
  const Polarization psi = polarize(w);
  const Complex cross = psi(z, y.conjugate());
  return 2.0 * cross.real() - w(z) - w(y);
}

double normalization_constant(const QuadraticWeight& w) {
  Eigen::SelfAdjointEigenSolver<CMat> es(w.H);
  const RVec ev = es.eigenvalues();
  if (ev(0) <= 0.0)
    throw std::invalid_argument(
        "normalization_constant: Levi matrix not positive definite");
  double b2 = 1.0;
  for (int i = 0; i < ev.size(); ++i) b2 *= 2.0 * ev(i) / kPi;
  return std::sqrt(b2);
}

}  // namespace bargmann
