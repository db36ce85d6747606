#include "bargmann/decision.hpp"

#include <cmath>
#include <stdexcept>

namespace bargmann {

namespace {

double linear_functional(const QuadraticWeight& phi1, const AffineMap& phi,
                         const CVec& x) {
  // l(x) = Re((d_x Phi1)(Ax) . b), bilinear dot (no conjugation).
  const CVec grad = holomorphic_gradient(phi1, phi.A * x);
  const Complex dot = (grad.array() * phi.b.array()).sum();
  return dot.real();
}

double linear_threshold(const QuadraticWeight& phi1, const AffineMap& phi,
                        double tol) {
  const double grad_scale =
      (phi1.H.norm() + phi1.S.norm()) * std::max(1.0, phi.A.norm());
  return tol * std::max(1.0, phi.b.norm()) * std::max(1.0, grad_scale);
}

Decision combine(std::initializer_list<Decision> ds) {
  bool boundary = false;
  for (Decision d : ds) {
    if (d == Decision::No) return Decision::No;
    if (d == Decision::Boundary) boundary = true;
  }
  return boundary ? Decision::Boundary : Decision::Yes;
}

}  // namespace

AffineMap::AffineMap(CMat a, CVec bb)
    : n1(static_cast<int>(a.rows())),
      n2(static_cast<int>(a.cols())),
      A(std::move(a)),
      b(std::move(bb)) {
  if (b.size() != n1)
    throw std::invalid_argument("AffineMap: offset dimension mismatch");
  if (!A.allFinite() || !b.allFinite())
    throw std::invalid_argument("AffineMap: non-finite entries");
}

AffineMap AffineMap::identity(int n) {
  return AffineMap(CMat::Identity(n, n), CVec::Zero(n));
}

AffineMap AffineMap::one_dim(Complex a, Complex b) {
  return AffineMap(CMat::Constant(1, 1, a), CVec::Constant(1, b));
}

RealForm difference_form(const QuadraticWeight& phi1,
                         const QuadraticWeight& phi2, const CMat& A) {
  if (A.rows() != phi1.n || A.cols() != phi2.n)
    throw std::invalid_argument("difference_form: dimension mismatch");
  return realify(2 * phi2.n, [&](const RVec& X) {
    const CVec x = to_complex(X);
    return phi1(A * x) - phi2(x);
  });
}

Verdict check_kernel_condition(const QuadraticWeight& phi2, const CMat& A,
                               double tol) {
  Verdict v;
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullV);
  const RVec sing = svd.singularValues();
  const double smax = sing.size() ? sing(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sing.size(); ++i)
    if (sing(i) > tol * std::max(smax, 1e-300)) ++rank;
  const int k = phi2.n - rank;

  if (k == 0) {
    v.decision = Decision::Yes;
    v.conditions.push_back({"kernel", Decision::Yes, 0.0});
    return v;
  }

  const CMat null_basis = svd.matrixV().rightCols(k);
  // Phi2 restricted to Ker A, realified over the k complex coordinates.
  const RealForm restricted = realify(2 * k, [&](const RVec& C) {
    return phi2(null_basis * to_complex(C));
  });
  const double lmin = restricted.lambda_min();
  const double scale = std::max(restricted.scale(), 1e-300);

  v.certificate.eigenvalues = restricted.eigvals;
  v.certificate.null_basis = null_basis;
  // The failure set {Phi2 <= 0 on Ker A} is closed, so the band sides
  // with No: Yes only for a definite positive margin.
  if (lmin > tol * scale) {
    v.decision = Decision::Yes;
  } else {
    v.decision = Decision::No;
    v.certificate.violated = "kernel";
    v.certificate.witness =
        null_basis * to_complex(RVec(restricted.eigvecs.col(0)));
  }
  v.conditions.push_back({"kernel", v.decision, lmin});
  return v;
}

Verdict check_sup_condition(const QuadraticWeight& phi1,
                            const QuadraticWeight& phi2, const AffineMap& phi,
                            double tol) {
  Verdict v;
  const RealForm diff = difference_form(phi1, phi2, phi.A);
  const double scale = diff.scale();
  const double lmax = diff.lambda_max();
  v.certificate.eigenvalues = diff.eigvals;

  if (scale > 0.0 && lmax > tol * scale) {
    v.decision = Decision::No;
    v.certificate.violated = "sup_quadratic";
    v.certificate.witness =
        to_complex(RVec(diff.eigvecs.col(diff.dim() - 1)));
    v.conditions.push_back({"sup_quadratic", Decision::No, lmax});
    return v;
  }
  v.conditions.push_back({"sup_quadratic", Decision::Yes, lmax});

  // Null space of the (negative semidefinite) difference form.
  std::vector<int> null_idx;
  for (int i = 0; i < diff.dim(); ++i)
    if (std::abs(diff.eigvals(i)) <= tol * std::max(scale, 1e-300) ||
        scale == 0.0)
      null_idx.push_back(i);

  CMat null_basis(phi2.n, static_cast<int>(null_idx.size()));
  double worst = 0.0;
  CVec worst_dir;
  const double thresh = linear_threshold(phi1, phi, tol);
  for (size_t j = 0; j < null_idx.size(); ++j) {
    const CVec dir = to_complex(RVec(diff.eigvecs.col(null_idx[j])));
    null_basis.col(static_cast<int>(j)) = dir;
    const double l = linear_functional(phi1, phi, dir);
    if (std::abs(l) > std::abs(worst)) {
      worst = l;
      worst_dir = dir;
    }
  }
  v.certificate.null_basis = null_basis;

  if (std::abs(worst) > thresh) {
    v.decision = Decision::No;
    v.certificate.violated = "sup_linear";
    v.certificate.witness = (worst > 0.0) ? worst_dir : CVec(-worst_dir);
    v.conditions.push_back({"sup_linear", Decision::No, worst});
  } else {
    v.decision = Decision::Yes;
    v.conditions.push_back({"sup_linear", Decision::Yes, worst});
  }
  return v;
}

namespace {

// Validates strict plurisubharmonicity of both weights; throws on No,
// returns Boundary when either sits inside the tolerance band.
Decision validate_psh(const QuadraticWeight& phi1, const QuadraticWeight& phi2,
                      double tol, Verdict& out) {
  const Verdict p1 = is_strictly_psh(phi1, tol);
  const Verdict p2 = is_strictly_psh(phi2, tol);
  if (p1.decision == Decision::No || p2.decision == Decision::No)
    throw std::invalid_argument("weight is not strictly plurisubharmonic");
  out.conditions.push_back({"psh_phi1", p1.decision, p1.conditions[0].value});
  out.conditions.push_back({"psh_phi2", p2.decision, p2.conditions[0].value});
  return combine({p1.decision, p2.decision});
}

}  // namespace

Verdict is_bounded(const QuadraticWeight& phi1, const QuadraticWeight& phi2,
                   const AffineMap& phi, double tol) {
  if (phi.n1 != phi1.n || phi.n2 != phi2.n)
    throw std::invalid_argument("is_bounded: dimension mismatch");
  Verdict v;
  const Decision psh = validate_psh(phi1, phi2, tol, v);

  const Verdict kernel = check_kernel_condition(phi2, phi.A, tol);
  const Verdict sup = check_sup_condition(phi1, phi2, phi, tol);
  for (const auto& c : kernel.conditions) v.conditions.push_back(c);
  for (const auto& c : sup.conditions) v.conditions.push_back(c);

  if (kernel.decision == Decision::No) {
    v.decision = Decision::No;
    v.certificate = kernel.certificate;
  } else if (sup.decision == Decision::No) {
    v.decision = Decision::No;
    v.certificate = sup.certificate;
  } else {
    v.decision = combine({psh, kernel.decision, sup.decision});
    v.certificate = sup.certificate;
  }
  return v;
}

Verdict is_compact(const QuadraticWeight& phi1, const QuadraticWeight& phi2,
                   const AffineMap& phi, double tol) {
  if (phi.n1 != phi1.n || phi.n2 != phi2.n)
    throw std::invalid_argument("is_compact: dimension mismatch");
  Verdict v;
  const Decision psh = validate_psh(phi1, phi2, tol, v);

  const RealForm diff = difference_form(phi1, phi2, phi.A);
  const double scale = diff.scale();
  const double lmax = diff.lambda_max();
  v.certificate.eigenvalues = diff.eigvals;

  // Strict negativity has a closed complement, so the band sides with No.
  if (scale > 0.0 && lmax < -tol * scale) {
    v.decision = (psh == Decision::Boundary) ? Decision::Boundary
                                             : Decision::Yes;
    v.conditions.push_back({"neg_definite", Decision::Yes, lmax});
  } else {
    v.decision = Decision::No;
    v.certificate.violated = "neg_definite";
    v.certificate.witness =
        to_complex(RVec(diff.eigvecs.col(diff.dim() - 1)));
    v.conditions.push_back({"neg_definite", Decision::No, lmax});
  }
  return v;
}

std::pair<QuadraticWeight, double> shrink_weight(const QuadraticWeight& phi1,
                                                 const QuadraticWeight& phi2,
                                                 const AffineMap& phi,
                                                 double tol) {
  const Verdict compact = is_compact(phi1, phi2, phi, tol);
  if (compact.decision != Decision::Yes)
    throw std::invalid_argument("shrink_weight requires a compact instance");

  Eigen::SelfAdjointEigenSolver<CMat> es(phi2.H);
  const double h2_min = es.eigenvalues()(0);
  const double margin = -difference_form(phi1, phi2, phi.A).lambda_max();
  const double delta = 0.5 * std::min(h2_min, margin);

  QuadraticWeight phi3;
  phi3.n = phi2.n;
  phi3.H = phi2.H - delta * CMat::Identity(phi2.n, phi2.n);
  phi3.S = phi2.S;

  if (is_strictly_psh(phi3, tol).decision != Decision::Yes ||
      is_bounded(phi1, phi3, phi, tol).decision != Decision::Yes)
    throw std::logic_error("shrink_weight: shrunken weight failed re-check");
  return {phi3, delta};
}

SquareSplit complete_square(const RealForm& q, int d, double tol) {
  const int m = q.dim();
  if (d < 0 || d > m)
    throw std::invalid_argument("complete_square: bad split size");
  const int lead = m - d;
  const RMat Q11 = q.M.topLeftCorner(lead, lead);
  const RMat Q12 = q.M.topRightCorner(lead, d);
  const RMat Q22 = q.M.bottomRightCorner(d, d);

  Eigen::SelfAdjointEigenSolver<RMat> es(Q11);
  const RVec ev = es.eigenvalues();
  double amax = 0.0;
  for (int i = 0; i < ev.size(); ++i) amax = std::max(amax, std::abs(ev(i)));
  for (int i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) < tol * std::max(amax, 1e-300))
      throw std::invalid_argument(
          "complete_square: leading block is degenerate");

  SquareSplit out;
  out.critical = -Q11.ldlt().solve(Q12);
  out.residual = RealForm::from_matrix(Q11);
  out.core = RealForm::from_matrix(Q22 - Q12.transpose() * Q11.inverse() * Q12);
  return out;
}

const char* to_string(Class1D c) {
  switch (c) {
    case Class1D::Unbounded: return "unbounded";
    case Class1D::Bounded: return "bounded";
    case Class1D::Compact: return "compact";
    default: return "boundary";
  }
}

Class1D classify_1d(double r1, Complex s1, double r2, Complex s2, Complex a,
                    Complex b, double tol) {
  if (r1 <= 0.0 || r2 <= 0.0)
    throw std::invalid_argument("classify_1d: r must be positive");

  const Complex c = s1 * a * a - s2;
  const double rho = r2 - r1 * std::norm(a);
  const double scale = r2 + r1 * std::norm(a) + std::abs(c);

  // Condition (2): a = 0 is admissible only for positive definite Phi2.
  if (std::abs(a) <= tol) {
    if (r2 - std::abs(s2) <= tol * (r2 + std::abs(s2)))
      return Class1D::Unbounded;
  }

  const double gap = std::abs(c) - rho;
  if (gap < -tol * scale) return Class1D::Compact;
  if (gap > tol * scale) return Class1D::Unbounded;

  // Equality band: the b-membership condition decides boundedness. The
  // solution set on S^1 is either all of it (c = rho = 0) or two antipodal
  // points.
  const double thresh = tol * std::max(1.0, std::abs(b)) *
                        (r1 + std::abs(s1)) * std::max(1.0, std::abs(a));
  double quantity;
  if (rho <= tol * scale) {
    // c ~ 0 and rho ~ 0: condition must hold for every x on the circle,
    // forcing a (r1 conj(b) + s1 b) = 0.
    quantity = std::abs(a * (r1 * std::conj(b) + s1 * b));
  } else {
    const Complex x0 = std::sqrt(rho / c);
    const Complex w = r1 * std::conj(a * x0) + s1 * a * x0;
    quantity = std::abs((w * b).real());
  }
  if (quantity <= thresh) return Class1D::Bounded;
  if (quantity > 1e3 * thresh) return Class1D::Unbounded;
  return Class1D::Boundary;
}

bool exists_bounded_1d(double r1, Complex s1, double r2, Complex s2) {
  if (r1 <= 0.0 || r2 <= 0.0)
    throw std::invalid_argument("exists_bounded_1d: r must be positive");
  return std::abs(s2) / r2 < 1.0 || std::abs(s2) / r2 <= std::abs(s1) / r1;
}

bool exists_compact_1d(double r1, Complex s1, double r2, Complex s2) {
  if (r1 <= 0.0 || r2 <= 0.0)
    throw std::invalid_argument("exists_compact_1d: r must be positive");
  return std::abs(s2) / r2 < 1.0 || std::abs(s2) / r2 < std::abs(s1) / r1;
}

namespace {

std::vector<WitnessPoint> witness_sequence(const QuadraticWeight& phi1,
                                           const QuadraticWeight& phi2,
                                           const AffineMap& phi,
                                           const CVec& direction) {
  static const int kSteps[] = {1,  2,  3,  4,   5,   6,   8,    10,  15,
                               20, 30, 50, 100, 200, 500, 1000, 2000,
                               5000, 10000};
  std::vector<WitnessPoint> out;
  for (int m : kSteps) {
    const CVec w = static_cast<double>(m) * direction;
    const double exponent = phi1(phi(w)) - phi2(w);
    out.push_back({w, std::exp(std::min(exponent, 700.0))});
    if (out.back().ratio > 1e9) break;
  }
  return out;
}

}  // namespace

std::vector<WitnessPoint> find_witness(const QuadraticWeight& phi1,
                                       const QuadraticWeight& phi2,
                                       const AffineMap& phi, WitnessMode mode,
                                       double tol) {
  const Verdict bounded = is_bounded(phi1, phi2, phi, tol);

  if (mode == WitnessMode::Noncompact) {
    const Verdict compact = is_compact(phi1, phi2, phi, tol);
    if (compact.decision == Decision::Yes)
      throw std::invalid_argument("find_witness: instance is compact");
    if (bounded.decision != Decision::No) {
      // Bounded, non-compact: ride a null direction of the difference
      // form; the ratio stays bounded below by a positive constant.
      CVec v = compact.certificate.witness;
      if (linear_functional(phi1, phi, v) < 0.0) v = -v;
      return witness_sequence(phi1, phi2, phi, v);
    }
    // Unbounded instances fall through to the unbounded witness.
  } else if (bounded.decision != Decision::No) {
    throw std::invalid_argument("find_witness: instance is bounded");
  }

  const std::string& failed = bounded.certificate.violated;
  CVec v = bounded.certificate.witness;
  double scale = 1.0;

  if (failed == "sup_quadratic") {
    const RealForm diff = difference_form(phi1, phi2, phi.A);
    const double lmax = diff.lambda_max();
    if (linear_functional(phi1, phi, v) < 0.0) v = -v;
    // Ensure the quadratic growth clears 1e6 by m = 1e4.
    scale = std::max(1.0, std::sqrt(44.0 / (lmax * 1e8)));
  } else if (failed == "sup_linear") {
    const double l = linear_functional(phi1, phi, v);  // positive by choice
    scale = std::max(1.0, 44.0 / (std::max(l, 1e-300) * 1e4));
  } else {  // kernel condition: ride the Phi2 <= 0 direction inside Ker A
    const double neg = -phi2(v);
    if (neg > 0.0) scale = std::max(1.0, std::sqrt(44.0 / (neg * 1e8)));
  }
  return witness_sequence(phi1, phi2, phi, CVec(scale * v));
}

}  // namespace bargmann
