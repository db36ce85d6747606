#include "bargmann/fio.hpp"

#include <random>
#include <stdexcept>

namespace bargmann {

namespace {
const Complex kTwoOverI(0.0, -2.0);  // 2/i = -2i
}

GraphMap lambda_graph(const QuadraticWeight& w) {
  w.validate();
  GraphMap g;
  g.n = w.n;
  g.P = kTwoOverI * w.S;
  g.Q = kTwoOverI * w.H;
  g.offset = CVec::Zero(w.n);
  return g;
}

KappaMap kappa_map(const AffineMap& phi, double cond_guard) {
  if (phi.n1 != phi.n2)
    throw std::invalid_argument("kappa_map: map is not square");
  Eigen::JacobiSVD<CMat> svd(phi.A);
  const RVec s = svd.singularValues();
  if (s(s.size() - 1) <= 0.0 || s(0) / s(s.size() - 1) > cond_guard)
    throw std::invalid_argument("kappa_map: A is numerically singular");
  KappaMap k;
  k.A = phi.A;
  k.Ainv = phi.A.inverse();
  k.b = phi.b;
  return k;
}

GraphMappingReport verify_graph_mapping(const QuadraticWeight& phi1,
                                        const AffineMap& phi, int samples,
                                        std::uint64_t seed) {
  if (phi.n1 != phi1.n)
    throw std::invalid_argument("verify_graph_mapping: dimension mismatch");
  const KappaMap kappa = kappa_map(phi);
  const int n = phi1.n;

  // Quadratic part of Phi1 o phi plus the constant gradient offset coming
  // from the affine shift b.
  QuadraticWeight pullback;
  pullback.n = n;
  pullback.H = phi.A.transpose() * phi1.H * phi.A.conjugate();
  pullback.S = phi.A.transpose() * phi1.S * phi.A;
  const CVec grad0 =
      phi.A.transpose() * (phi1.H * phi.b.conjugate() + phi1.S * phi.b);

  GraphMap target = lambda_graph(pullback);
  target.offset = kTwoOverI * grad0;
  const GraphMap source = lambda_graph(phi1);

  GraphMappingReport report;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    CVec x(n);
    for (int i = 0; i < n; ++i) x(i) = Complex(gauss(rng), gauss(rng));
    const CVec xi = source.xi(x);
    const auto [u, v] = kappa(x, xi);
    const double res = (v - target.xi(u)).norm();
    const double scale =
        std::max({1.0, x.norm(), xi.norm(), u.norm(), v.norm()});
    report.residual = std::max(report.residual, res);
    report.scale = std::max(report.scale, scale);
  }

  report.pullback_psh =
      is_strictly_psh(pullback).decision == Decision::Yes;

  // Non-degenerate phase check: rank (F''_tx  F''_ty  F''_tt) = n. The
  // theta-theta block cancels between the two polarizations, leaving
  // (H^T A, -H^T, 0) up to the 2/i factor.
  CMat block(n, 2 * n + n);
  block << phi1.H.transpose() * phi.A, -phi1.H.transpose(),
      CMat::Zero(n, n);
  Eigen::JacobiSVD<CMat> svd(block);
  const RVec sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-12 * sv(0)) ++rank;
  report.phase_rank = rank;
  return report;
}

}  // namespace bargmann
