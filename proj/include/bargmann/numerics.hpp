#ifndef BARGMANN_NUMERICS_HPP
#define BARGMANN_NUMERICS_HPP

#include <map>
#include <vector>

#include "bargmann/decision.hpp"
#include "bargmann/poly.hpp"
#include "bargmann/qform.hpp"
#include "bargmann/types.hpp"

namespace bargmann {

/// Memoized table of the Gaussian moments
///   values(alpha, beta) = int x^alpha conj(x)^beta e^{-2 Phi(x)} L(dx),
/// computed by the Wick/Isserlis recursion over the complex second moments
/// read off the real covariance Sigma = (1/4) M_Phi^{-1}. Requires the
/// realified weight to be positive definite (otherwise the measure has
/// infinite mass).
class MomentTable {
 public:
  explicit MomentTable(const QuadraticWeight& w);

  const QuadraticWeight& weight() const { return weight_; }
  double mass() const { return mass_; }  // values(0,0)

  Complex moment(const MultiIndex& alpha, const MultiIndex& beta) const;

 private:
  Complex raw(const MultiIndex& alpha, const MultiIndex& beta) const;

  QuadraticWeight weight_;
  CMat ezz_;   // E[z_j z_k]
  CMat ezzb_;  // E[z_j conj(z_k)]
  double mass_ = 0.0;
  mutable std::map<std::pair<MultiIndex, MultiIndex>, Complex> cache_;
};

Complex gaussian_moment(const QuadraticWeight& w, const MultiIndex& alpha,
                        const MultiIndex& beta);

/// Gauss-Hermite nodes/weights for weight e^{-t^2} (Golub-Welsch).
void gauss_hermite(int npoints, RVec& nodes, RVec& weights);

/// Tensor Gauss-Hermite value of int f(X) e^{-2 X^T M X} dX after whitening
/// by the eigendecomposition of M. Cost guard: M.rows() <= 4.
double gauss_hermite_integral(const RMat& M,
                              const std::function<double(const RVec&)>& f,
                              int points_per_axis);
Complex gauss_hermite_integral(const RMat& M,
                               const std::function<Complex(const RVec&)>& f,
                               int points_per_axis);

/// Independent quadrature oracle for gaussian_moment, n <= 2 only.
Complex quadrature_oracle(const QuadraticWeight& w, const MultiIndex& alpha,
                          const MultiIndex& beta, int points_per_axis = 40);

/// G[i][j] = <x^{alpha_i}, x^{alpha_j}> over monomials |alpha| <= D in
/// graded lex order; Hermitian positive definite.
CMat gram_matrix(const MomentTable& table, int max_degree);

/// Orthonormal basis of the span of monomials of degree <= D in H_Phi.
/// Rows of coeffs are basis elements as coefficient vectors over the graded
/// lex monomials. Obtained by eigendecomposition whitening of the
/// diagonally rescaled Gram matrix; throws (naming the largest safe degree)
/// if the rescaled Gram has condition number above 1e12.
struct OrthonormalBasis {
  int degree = 0;
  std::vector<MultiIndex> monomials;
  CMat coeffs;
};

OrthonormalBasis orthonormal_basis(const MomentTable& table, int max_degree);

/// Truncated matrix of C_phi between the degree-D1 orthonormal basis of
/// H_{Phi1} and the degree-D2 orthonormal basis of H_{Phi2}:
/// entries(beta, alpha) = <C_phi e_alpha, f_beta>_{H_{Phi2}}.
struct OperatorMatrix {
  OrthonormalBasis source;
  OrthonormalBasis target;
  CMat entries;
};

OperatorMatrix operator_matrix(const QuadraticWeight& phi1,
                               const QuadraticWeight& phi2,
                               const AffineMap& phi, int d1, int d2);

/// Decreasing singular values of the entry matrix.
RVec singular_values(const OperatorMatrix& op);
RVec singular_values(const CMat& entries);

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int used = 0;
};

/// Least squares of log s_j against j^{1/n2} over the strictly positive
/// prefix (values below 1e-13 are dropped); a negative slope certifies
/// sub-exponential decay at the given truncation. Throws if fewer than 5
/// usable values remain.
DecayFit decay_fit(const RVec& svals, int n2);

/// Closed-form evaluation of the Bergman projection integral
///   b^2 int e^{2 Psi(w, conj(x))} p(x) e^{-2 Phi(x)} L(dx)
/// via complex Gaussian completion of the square; reproduces p(w).
Complex project_polynomial(const QuadraticWeight& w, const Poly& p,
                           const CVec& point);

/// (b_{Phi1}/b_{Phi2}) e^{Phi1(phi(w)) - Phi2(w)}, the norm of the adjoint
/// acting on the coherent state at w.
double coherent_norm_ratio(const QuadraticWeight& phi1,
                           const QuadraticWeight& phi2, const AffineMap& phi,
                           const CVec& w);

/// int_{R^m} e^{-X^T Q X + L^T X} P(X) dX for complex symmetric Q with
/// Re Q positive definite; exact complex Gaussian calculus (shift to the
/// critical point, then Wick over the complex covariance (1/2) Q^{-1}).
Complex gaussian_poly_integral(const CMat& Q, const CVec& L, const Poly& P);

struct SchurBounds {
  double row_sup = 0.0;  // sup_x of the y-integral of the dominating kernel
  double col_sup = 0.0;  // sup_y of the x-integral
  double c_const = 0.0;  // the constant used in the dominating kernel
};

/// Evaluates the row/column integrals of the dominating kernel
///   K(x,y) <= C e^{-|phi(x)-y|^2/C + Phi1(phi(x)) - Phi2(x)}
/// in closed Gaussian form and maximizes over a sample grid plus the
/// analytic stationary bound. Requires a bounded instance; both suprema
/// are finite.
SchurBounds schur_row_col_bounds(const QuadraticWeight& phi1,
                                 const QuadraticWeight& phi2,
                                 const AffineMap& phi, double c_const = 0.0);

}  // namespace bargmann

#endif
