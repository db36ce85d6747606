#include "bargmann/numerics.hpp"

#include <cmath>
#include <iostream>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace bargmann {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSingularFloor = 1e-13;
constexpr double kGramCondGuard = 1e12;

int total_degree(const MultiIndex& a) {
  int d = 0;
  for (int v : a) d += v;
  return d;
}

}  // namespace

MomentTable::MomentTable(const QuadraticWeight& w) : weight_(w) {
  weight_.validate();
  if (is_strictly_psh(weight_).decision == Decision::No)
    throw std::invalid_argument(
        "MomentTable: weight is not strictly plurisubharmonic");

  const RealForm mf = realify(weight_);
  if (mf.lambda_min() <= 0.0)
    throw std::invalid_argument(
        "MomentTable: e^{-2 Phi} has infinite mass (realified weight is "
        "not positive definite)");

  const int n = weight_.n;
  // Real covariance Sigma = (1/4) M^{-1}; mass = pi^n 2^{-n} det(M)^{-1/2}.
  const RMat cov = 0.25 * mf.M.inverse();
  mass_ = 1.0;
  for (int i = 0; i < 2 * n; ++i) mass_ *= kPi / 2.0;
  mass_ = std::sqrt(mass_);
  for (int i = 0; i < mf.eigvals.size(); ++i)
    mass_ /= std::sqrt(mf.eigvals(i));

  ezz_ = CMat(n, n);
  ezzb_ = CMat(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double a = cov(j, k), b = cov(n + j, n + k);
      const double c = cov(j, n + k), d = cov(n + j, k);
      ezz_(j, k) = Complex(a - b, c + d);
      ezzb_(j, k) = Complex(a + b, d - c);
    }
  }
}

Complex MomentTable::raw(const MultiIndex& alpha,
                         const MultiIndex& beta) const {
  const int deg = total_degree(alpha) + total_degree(beta);
  if (deg == 0) return 1.0;
  if (deg % 2 == 1) return 0.0;
  if (total_degree(alpha) == 0) return std::conj(raw(beta, alpha));

  const auto key = std::make_pair(alpha, beta);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const int n = weight_.n;
  int j = 0;
  while (alpha[j] == 0) ++j;

  // Pair one z_j with every remaining factor (Isserlis).
  Complex sum = 0.0;
  MultiIndex a = alpha;
  a[j] -= 1;
  if (a[j] > 0) {
    MultiIndex a2 = a;
    a2[j] -= 1;
    sum += static_cast<double>(a[j]) * ezz_(j, j) * raw(a2, beta);
  }
  for (int k = 0; k < n; ++k) {
    if (k == j || a[k] == 0) continue;
    MultiIndex a2 = a;
    a2[k] -= 1;
    sum += static_cast<double>(a[k]) * ezz_(j, k) * raw(a2, beta);
  }
  for (int k = 0; k < n; ++k) {
    if (beta[k] == 0) continue;
    MultiIndex b2 = beta;
    b2[k] -= 1;
    sum += static_cast<double>(beta[k]) * ezzb_(j, k) * raw(a, b2);
  }
  cache_.emplace(key, sum);
  return sum;
}

Complex MomentTable::moment(const MultiIndex& alpha,
                            const MultiIndex& beta) const {
  if (static_cast<int>(alpha.size()) != weight_.n ||
      static_cast<int>(beta.size()) != weight_.n)
    throw std::invalid_argument("MomentTable::moment: index length mismatch");
  return mass_ * raw(alpha, beta);
}

Complex gaussian_moment(const QuadraticWeight& w, const MultiIndex& alpha,
                        const MultiIndex& beta) {
  return MomentTable(w).moment(alpha, beta);
}

void gauss_hermite(int npoints, RVec& nodes, RVec& weights) {
  if (npoints < 1) throw std::invalid_argument("gauss_hermite: npoints < 1");
  RMat J = RMat::Zero(npoints, npoints);
  for (int i = 1; i < npoints; ++i) {
    const double off = std::sqrt(i / 2.0);
    J(i, i - 1) = J(i - 1, i) = off;
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(J);
  nodes = es.eigenvalues();
  weights = RVec(npoints);
  const double sqrt_pi = std::sqrt(kPi);
  for (int i = 0; i < npoints; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    weights(i) = sqrt_pi * v0 * v0;
  }
}

namespace {

template <typename Scalar, typename Fn>
Scalar gh_tensor(const RMat& M, const Fn& f, int pts) {
  const int m = static_cast<int>(M.rows());
  if (m > 4)
    throw std::invalid_argument(
        "gauss_hermite_integral: cost guard (dimension > 4)");
  Eigen::SelfAdjointEigenSolver<RMat> es(M);
  const RVec lam = es.eigenvalues();
  if (lam(0) <= 0.0)
    throw std::invalid_argument(
        "gauss_hermite_integral: weight matrix not positive definite");
  RMat T = es.eigenvectors();
  double jac = 1.0;
  for (int i = 0; i < m; ++i) {
    T.col(i) /= std::sqrt(2.0 * lam(i));
    jac /= std::sqrt(2.0 * lam(i));
  }

  RVec nodes, wts;
  gauss_hermite(pts, nodes, wts);

  std::vector<int> idx(m, 0);
  Scalar sum = Scalar(0);
  while (true) {
    RVec t(m);
    double wprod = 1.0;
    for (int i = 0; i < m; ++i) {
      t(i) = nodes(idx[i]);
      wprod *= wts(idx[i]);
    }
    sum += wprod * f(RVec(T * t));
    int pos = 0;
    while (pos < m && ++idx[pos] == pts) idx[pos++] = 0;
    if (pos == m) break;
  }
  return sum * jac;
}

}  // namespace

double gauss_hermite_integral(const RMat& M,
                              const std::function<double(const RVec&)>& f,
                              int points_per_axis) {
  return gh_tensor<double>(M, f, points_per_axis);
}

Complex gauss_hermite_integral(const RMat& M,
                               const std::function<Complex(const RVec&)>& f,
                               int points_per_axis) {
  return gh_tensor<Complex>(M, f, points_per_axis);
}

Complex quadrature_oracle(const QuadraticWeight& w, const MultiIndex& alpha,
                          const MultiIndex& beta, int points_per_axis) {
  if (w.n > 2)
    throw std::invalid_argument("quadrature_oracle: cost guard (n > 2)");
  const RealForm mf = realify(w);
  return gauss_hermite_integral(
      mf.M,
      [&](const RVec& X) {
        const CVec x = to_complex(X);
        Complex v = 1.0;
        for (int j = 0; j < w.n; ++j) {
          for (int k = 0; k < alpha[j]; ++k) v *= x(j);
          for (int k = 0; k < beta[j]; ++k) v *= std::conj(x(j));
        }
        return v;
      },
      points_per_axis);
}

CMat gram_matrix(const MomentTable& table, int max_degree) {
  const auto monos = monomials_up_to(table.weight().n, max_degree);
  const int N = static_cast<int>(monos.size());
  CMat G(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j <= i; ++j) {
      // <x^{a_i}, x^{a_j}> = integral of x^{a_i} conj(x)^{a_j}
      G(i, j) = table.moment(monos[i], monos[j]);
      G(j, i) = std::conj(G(i, j));
    }
  }
  return G;
}

namespace {

// Whitening of the diagonally rescaled Gram; returns false when the
// rescaled matrix is numerically rank deficient at this degree.
bool try_whiten(const MomentTable& table, int degree, OrthonormalBasis& out) {
  const auto monos = monomials_up_to(table.weight().n, degree);
  const int N = static_cast<int>(monos.size());
  const CMat G = gram_matrix(table, degree);

  RVec d(N);
  for (int i = 0; i < N; ++i) d(i) = std::sqrt(G(i, i).real());
  CMat Gt = G;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) Gt(i, j) /= d(i) * d(j);

  Eigen::SelfAdjointEigenSolver<CMat> es(Gt);
  const RVec lam = es.eigenvalues();
  if (lam(0) <= 0.0 || lam(N - 1) / lam(0) > kGramCondGuard) return false;

  CMat B = es.eigenvectors().adjoint();
  for (int i = 0; i < N; ++i) B.row(i) /= std::sqrt(lam(i));
  for (int j = 0; j < N; ++j) B.col(j) /= d(j);

  out.degree = degree;
  out.monomials = monos;
  out.coeffs = B;
  return true;
}

}  // namespace

OrthonormalBasis orthonormal_basis(const MomentTable& table, int max_degree) {
  OrthonormalBasis out;
  if (try_whiten(table, max_degree, out)) return out;
  int safe = -1;
  for (int d = max_degree - 1; d >= 0; --d) {
    OrthonormalBasis probe;
    if (try_whiten(table, d, probe)) {
      safe = d;
      break;
    }
  }
  throw std::runtime_error(
      "orthonormal_basis: Gram matrix too ill-conditioned at degree " +
      std::to_string(max_degree) + "; largest safe degree is " +
      std::to_string(safe));
}

OperatorMatrix operator_matrix(const QuadraticWeight& phi1,
                               const QuadraticWeight& phi2,
                               const AffineMap& phi, int d1, int d2) {
  if (phi.n1 != phi1.n || phi.n2 != phi2.n)
    throw std::invalid_argument("operator_matrix: dimension mismatch");
  try {
    if (is_bounded(phi1, phi2, phi).decision == Decision::No)
      std::cerr << "warning: operator_matrix called on an unbounded "
                   "instance; truncations do not stabilize\n";
  } catch (const std::invalid_argument&) {
    // non-psh inputs are rejected below by the moment tables
  }

  const MomentTable table1(phi1);
  const MomentTable table2(phi2);
  OperatorMatrix op;
  op.source = orthonormal_basis(table1, d1);
  op.target = orthonormal_basis(table2, d2);

  const int dbig = std::max(d1, d2);
  const auto big = monomials_up_to(phi2.n, dbig);
  const int Nbig = static_cast<int>(big.size());
  std::map<MultiIndex, int> pos;
  for (int i = 0; i < Nbig; ++i) pos.emplace(big[i], i);

  // Columns: source monomials pushed through phi, in the big monomial basis.
  const int N1 = static_cast<int>(op.source.monomials.size());
  CMat comp = CMat::Zero(Nbig, N1);
  for (int j = 0; j < N1; ++j) {
    const Poly composed =
        compose_affine(Poly::monomial(op.source.monomials[j]), phi);
    for (const auto& [a, c] : composed.terms()) comp(pos.at(a), j) += c;
  }
  const CMat P = comp * op.source.coeffs.transpose();

  const int N2 = static_cast<int>(op.target.monomials.size());
  CMat cross(N2, Nbig);
  for (int i = 0; i < N2; ++i)
    for (int j = 0; j < Nbig; ++j)
      cross(i, j) = table2.moment(big[j], op.target.monomials[i]);

  op.entries = op.target.coeffs.conjugate() * cross * P;
  return op;
}

RVec singular_values(const CMat& entries) {
  Eigen::JacobiSVD<CMat> svd(entries);
  return svd.singularValues();
}

RVec singular_values(const OperatorMatrix& op) {
  return singular_values(op.entries);
}

DecayFit decay_fit(const RVec& svals, int n2) {
  std::vector<double> xs, ys;
  for (int j = 0; j < svals.size(); ++j) {
    if (svals(j) <= kSingularFloor) break;
    xs.push_back(std::pow(static_cast<double>(j + 1), 1.0 / n2));
    ys.push_back(std::log(svals(j)));
  }
  if (xs.size() < 5)
    throw std::invalid_argument("decay_fit: fewer than 5 usable values");

  const int k = static_cast<int>(xs.size());
  double mx = 0, my = 0;
  for (int i = 0; i < k; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < k; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  DecayFit fit;
  fit.used = k;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = syy - sxy * sxy / sxx;
  fit.r2 = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

namespace {

Complex wick_complex(const MultiIndex& kappa, const CMat& sigma,
                     std::map<MultiIndex, Complex>& memo) {
  const int deg = total_degree(kappa);
  if (deg == 0) return 1.0;
  if (deg % 2 == 1) return 0.0;
  if (auto it = memo.find(kappa); it != memo.end()) return it->second;

  int j = 0;
  while (kappa[j] == 0) ++j;
  MultiIndex rest = kappa;
  rest[j] -= 1;

  Complex sum = 0.0;
  for (int k = 0; k < static_cast<int>(kappa.size()); ++k) {
    if (rest[k] == 0) continue;
    MultiIndex next = rest;
    next[k] -= 1;
    sum += static_cast<double>(rest[k]) * sigma(j, k) *
           wick_complex(next, sigma, memo);
  }
  memo.emplace(kappa, sum);
  return sum;
}

}  // namespace

Complex gaussian_poly_integral(const CMat& Q, const CVec& L, const Poly& P) {
  const int m = static_cast<int>(Q.rows());
  if (P.nvars() != m || L.size() != m)
    throw std::invalid_argument("gaussian_poly_integral: dimension mismatch");
  const CMat Qs = 0.5 * (Q + Q.transpose());

  const RMat reQ = Qs.real();
  Eigen::SelfAdjointEigenSolver<RMat> res(0.5 * (reQ + reQ.transpose()));
  if (res.eigenvalues()(0) <= 0.0)
    throw std::invalid_argument(
        "gaussian_poly_integral: Re Q not positive definite (divergent)");

  Eigen::PartialPivLU<CMat> lu(Qs);
  const CVec mu = 0.5 * lu.solve(L);
  const CMat sigma = 0.5 * lu.solve(CMat::Identity(m, m));

  // Re Q > 0 puts the spectrum of Q in the right half-plane, so the
  // principal branch of each eigenvalue log gives the continuous det^{-1/2}.
  Eigen::ComplexEigenSolver<CMat> ces(Qs);
  Complex logdet = 0.0;
  for (int i = 0; i < m; ++i) logdet += std::log(ces.eigenvalues()(i));
  const Complex lmu = (L.array() * mu.array()).sum();
  const Complex pref =
      std::exp(0.5 * m * std::log(kPi) - 0.5 * logdet + 0.5 * lmu);

  const Poly shifted = compose_affine(P, AffineMap(CMat::Identity(m, m), mu));
  std::map<MultiIndex, Complex> memo;
  Complex sum = 0.0;
  for (const auto& [kappa, c] : shifted.terms())
    sum += c * wick_complex(kappa, sigma, memo);
  return pref * sum;
}

Complex project_polynomial(const QuadraticWeight& w, const Poly& p,
                           const CVec& point) {
  if (p.nvars() != w.n || point.size() != w.n)
    throw std::invalid_argument("project_polynomial: dimension mismatch");
  const int n = w.n;
  const int m = 2 * n;

  // x = (I  iI) X and conj(x) = (I  -iI) X for X = (Re x, Im x).
  CMat Jx(n, m), Jc(n, m);
  Jx << CMat::Identity(n, n), Complex(0.0, 1.0) * CMat::Identity(n, n);
  Jc << CMat::Identity(n, n), Complex(0.0, -1.0) * CMat::Identity(n, n);

  // Exponent: -2 Phi(x) + 2 Psi(w, conj(x)) = -X^T Q X + L^T X + c0.
  const RMat M = realify(w).M;
  const CMat Q = 2.0 * M.cast<Complex>() -
                 Jc.transpose() * w.S.conjugate() * Jc;
  const CVec L = 2.0 * Jc.transpose() * w.H.transpose() * point;
  const Complex c0 = point.conjugate().dot(w.S * point);  // w^T S w

  const Poly p_real = compose_affine(p, AffineMap(Jx, CVec::Zero(n)));
  const double b = normalization_constant(w);
  return b * b * std::exp(c0) * gaussian_poly_integral(Q, L, p_real);
}

double coherent_norm_ratio(const QuadraticWeight& phi1,
                           const QuadraticWeight& phi2, const AffineMap& phi,
                           const CVec& w) {
  const double b1 = normalization_constant(phi1);
  const double b2 = normalization_constant(phi2);
  const double exponent = phi1(phi(w)) - phi2(w);
  return b1 / b2 * std::exp(std::min(exponent, 700.0));
}

namespace {

// Maximum of X^T Mq X + l^T X + c over R^m for Mq negative semidefinite:
// sum over the strictly negative eigenspaces of -l_i^2 / (4 lambda_i).
double quadratic_sup(const RealForm& form, const RVec& l, double c,
                     double tol) {
  const RVec lt = form.eigvecs.transpose() * l;
  double sup = c;
  const double scale = std::max(form.scale(), 1e-300);
  for (int i = 0; i < form.eigvals.size(); ++i) {
    const double lam = form.eigvals(i);
    if (lam < -tol * scale) sup -= lt(i) * lt(i) / (4.0 * lam);
  }
  return sup;
}

}  // namespace

SchurBounds schur_row_col_bounds(const QuadraticWeight& phi1,
                                 const QuadraticWeight& phi2,
                                 const AffineMap& phi, double c_const) {
  if (is_bounded(phi1, phi2, phi).decision == Decision::No)
    throw std::invalid_argument(
        "schur_row_col_bounds: instance is unbounded");
  const double tol = 1e-9;

  Eigen::SelfAdjointEigenSolver<CMat> es(phi1.H);
  const double C =
      c_const > 0.0 ? c_const : std::max(1.0, 1.0 / es.eigenvalues()(0));

  const int n1 = phi1.n, n2 = phi2.n;
  const int m1 = 2 * n1, m2 = 2 * n2;

  // g(x) = Phi1(phi(x)) - Phi2(x) as quadratic polynomial on R^{m2}.
  auto g = [&](const RVec& X) {
    const CVec x = to_complex(X);
    return phi1(phi(x)) - phi2(x);
  };
  const RealForm Mg = difference_form(phi1, phi2, phi.A);
  RVec lg(m2);
  for (int i = 0; i < m2; ++i) {
    RVec e = RVec::Zero(m2);
    e(i) = 1.0;
    lg(i) = 0.5 * (g(e) - g(-e));
  }
  const double cg = phi1(phi.b);

  const double sup_g = quadratic_sup(Mg, lg, cg, tol);
  SchurBounds out;
  out.c_const = C;
  out.row_sup = C * std::pow(kPi * C, n1) * std::exp(std::min(sup_g, 700.0));

  // x-integral: Gaussian in X with positive definite Qn.
  RMat Ar(m1, m2);
  Ar << phi.A.real(), -phi.A.imag(), phi.A.imag(), phi.A.real();
  const RVec br = to_real(phi.b);
  const RMat Qn = Ar.transpose() * Ar / C - Mg.M;
  Eigen::SelfAdjointEigenSolver<RMat> qes(Qn);
  if (qes.eigenvalues()(0) <= 0.0)
    throw std::runtime_error(
        "schur_row_col_bounds: x-integral not Gaussian-decaying "
        "(kernel condition violated numerically)");
  double logdet = 0.0;
  for (int i = 0; i < m2; ++i) logdet += std::log(qes.eigenvalues()(i));
  const RMat Qninv = Qn.inverse();

  // Exponent of the closed-form x-integral as a quadratic polynomial in y.
  const RMat B = 2.0 / C * Ar.transpose();
  const RVec l0 = lg - B * br;
  const RMat Qy_mat = 0.25 * B.transpose() * Qninv * B -
                      RMat::Identity(m1, m1) / C;
  const RVec ly = 0.5 * B.transpose() * Qninv * l0 + 2.0 / C * br;
  const double cy =
      cg - br.squaredNorm() / C + 0.25 * l0.dot(Qninv * l0);

  const RealForm Qy = RealForm::from_matrix(Qy_mat);
  double emax = quadratic_sup(Qy, ly, cy, tol);

  // Grid refinement over sample directions and radii.
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<RVec> dirs;
  for (int i = 0; i < m1; ++i) {
    RVec e = RVec::Zero(m1);
    e(i) = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  for (int s = 0; s < 8; ++s) {
    RVec u(m1);
    for (int i = 0; i < m1; ++i) u(i) = gauss(rng);
    dirs.push_back(u.normalized());
  }
  auto exponent_at = [&](const RVec& y) {
    return y.dot(Qy_mat * y) + ly.dot(y) + cy;
  };
  emax = std::max(emax, exponent_at(RVec::Zero(m1)));
  for (const RVec& u : dirs)
    for (double r : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0})
      emax = std::max(emax, exponent_at(RVec(br + r * u)));

  out.col_sup = C * std::pow(kPi, n2) * std::exp(-0.5 * logdet) *
                std::exp(std::min(emax, 700.0));
  return out;
}

}  // namespace bargmann
