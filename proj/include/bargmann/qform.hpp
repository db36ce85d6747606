#ifndef BARGMANN_QFORM_HPP
#define BARGMANN_QFORM_HPP

#include <functional>
#include <utility>

#include "bargmann/poly.hpp"
#include "bargmann/types.hpp"

namespace bargmann {

/// A strictly plurisubharmonic quadratic form on C^n,
///   Phi(x) = sum_{k,l} H_{kl} x_k conj(x_l) + Re sum_{k,l} S_{kl} x_k x_l,
/// stored as its Levi matrix H (Hermitian) and pluriharmonic coefficient S
/// (complex symmetric).
struct QuadraticWeight {
  int n = 0;
  CMat H;
  CMat S;

  QuadraticWeight() = default;
  QuadraticWeight(CMat h, CMat s);

  /// r|x|^2 on C^n.
  static QuadraticWeight radial(int n, double r);
  /// r|x|^2 + Re(s x^2) on C, the general 1-D weight.
  static QuadraticWeight one_dim(double r, Complex s);

  double operator()(const CVec& x) const;

  /// Throws std::invalid_argument if H is not Hermitian, S not symmetric,
  /// or dimensions disagree.
  void validate(double tol = 1e-12) const;
};

/// The unique holomorphic quadratic form with Psi(x, conj(x)) = Phi(x):
///   Psi(x,y) = x^T H y + (1/2) x^T S x + (1/2) y^T conj(S) y.
struct Polarization {
  int n = 0;
  CMat H;
  CMat S;

  Complex operator()(const CVec& x, const CVec& y) const;
};

/// Real symmetric carrier of a real-valued quadratic form on C^n = R^{2n},
/// value X^T M X at X = (Re x, Im x), with cached eigendecomposition
/// (eigenvalues ascending).
struct RealForm {
  RMat M;
  RVec eigvals;
  RMat eigvecs;

  static RealForm from_matrix(const RMat& m);

  int dim() const { return static_cast<int>(M.rows()); }
  double operator()(const RVec& X) const { return X.dot(M * X); }
  double lambda_min() const { return eigvals.size() ? eigvals(0) : 0.0; }
  double lambda_max() const {
    return eigvals.size() ? eigvals(eigvals.size() - 1) : 0.0;
  }
  /// max |eigenvalue|, the scale used by relative tolerance bands.
  double scale() const;
};

/// Stack (Re x, Im x) and back.
RVec to_real(const CVec& x);
CVec to_complex(const RVec& X);

/// Three-valued strict plurisubharmonicity check on the Levi matrix:
/// Yes iff lambda_min(H) > tol*scale, No iff lambda_min(H) < -tol*scale
/// (or H vanishes identically), Boundary inside the band. The certificate
/// carries the spectrum of H.
Verdict is_strictly_psh(const QuadraticWeight& w, double tol = 1e-9);

/// Phi = Phi_herm + Re f with Phi_herm the Hermitian part (S = 0) and
/// f(x) = x^T S x holomorphic.
std::pair<QuadraticWeight, Poly> split_herm_plh(const QuadraticWeight& w);

Polarization polarize(const QuadraticWeight& w);

/// Componentwise d/dx_k Phi = H conj(x) + S x.
CVec holomorphic_gradient(const QuadraticWeight& w, const CVec& x);

/// Realification of a real-valued quadratic form given by an evaluator on
/// R^m. The form is reconstructed exactly from values on basis vectors.
RealForm realify(int m, const std::function<double(const RVec&)>& q);

/// Realification of a complex-valued evaluator on C^n; samples basis and
/// random directions and throws if any imaginary part exceeds tol*scale.
RealForm realify(int n, const std::function<Complex(const CVec&)>& q,
                 double tol);

RealForm realify(const QuadraticWeight& w);

/// 2 Re Psi(z, conj(y)) - Phi(z) - Phi(y); equals -Phi_herm(z - y)
/// identically.
double fundamental_gap(const QuadraticWeight& w, const CVec& z, const CVec& y);

/// b_Phi with b^2 = 2^n det(H) / pi^n, the constant normalizing the
/// coherent states k_w to unit norm. Throws if H is not positive definite.
double normalization_constant(const QuadraticWeight& w);

}  // namespace bargmann

#endif
