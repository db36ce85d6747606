#ifndef BARGMANN_DECISION_HPP
#define BARGMANN_DECISION_HPP

#include <utility>
#include <vector>

#include "bargmann/qform.hpp"
#include "bargmann/types.hpp"

namespace bargmann {

/// phi(x) = Ax + b from C^{n2} to C^{n1}.
struct AffineMap {
  int n1 = 0;
  int n2 = 0;
  CMat A;
  CVec b;

  AffineMap() = default;
  AffineMap(CMat a, CVec bb);

  static AffineMap identity(int n);
  static AffineMap one_dim(Complex a, Complex b);

  CVec operator()(const CVec& x) const { return A * x + b; }
};

/// RealForm of x -> Phi1(Ax) - Phi2(x) on R^{2 n2}.
RealForm difference_form(const QuadraticWeight& phi1,
                         const QuadraticWeight& phi2, const CMat& A);

/// Condition (2): Phi2 must be positive definite on Ker A. Vacuously Yes
/// when A is injective; otherwise decided by the spectrum of Phi2 restricted
/// to the realified null space. The failure set is closed (lambda_min <= 0
/// fails), so the verdict is two-valued: Yes iff lambda_min > tol*scale.
Verdict check_kernel_condition(const QuadraticWeight& phi2, const CMat& A,
                               double tol = 1e-9);

/// Condition (3): the difference form is negative semidefinite and the
/// linear functional l(x) = Re((d Phi1)(Ax).b) vanishes on its null space.
Verdict check_sup_condition(const QuadraticWeight& phi1,
                            const QuadraticWeight& phi2, const AffineMap& phi,
                            double tol = 1e-9);

/// Boundedness of C_phi : H_{Phi1} -> H_{Phi2} (affinity is structural).
/// Boundary verdicts from the plurisubharmonicity of the inputs propagate.
Verdict is_bounded(const QuadraticWeight& phi1, const QuadraticWeight& phi2,
                   const AffineMap& phi, double tol = 1e-9);

/// Compactness: the difference form is negative definite. The failure set
/// is closed, so Yes iff lambda_max < -tol*scale, else No.
Verdict is_compact(const QuadraticWeight& phi1, const QuadraticWeight& phi2,
                   const AffineMap& phi, double tol = 1e-9);

/// Phi3 = Phi2 - delta |x|^2 with delta = (1/2) min(lambda_min(H2),
/// -lambda_max(difference form)). Requires is_compact = Yes; the returned
/// weight is re-checked to be strictly psh with C_phi : H_{Phi1} -> H_{Phi3}
/// bounded.
std::pair<QuadraticWeight, double> shrink_weight(const QuadraticWeight& phi1,
                                                 const QuadraticWeight& phi2,
                                                 const AffineMap& phi,
                                                 double tol = 1e-9);

/// Exact splitting q(x',x'') = q(x'_c(x''),x'') + q(x'-x'_c(x''),0) where
/// x' is the leading m-d block and x'_c is linear in x''.
struct SquareSplit {
  RMat critical;      // (m-d) x d, x'_c(x'') = critical * x''
  RealForm residual;  // the leading block, acting on x' - x'_c(x'')
  RealForm core;      // Schur complement on R^d
};

SquareSplit complete_square(const RealForm& q, int d, double tol = 1e-9);

enum class Class1D { Unbounded, Bounded, Compact, Boundary };

const char* to_string(Class1D c);

/// Closed-form classification for n1 = n2 = 1 with Phi_j = r_j|x|^2 +
/// Re(s_j x^2) and phi(x) = ax + b. Implements the one-dimensional
/// boundedness inequality together with the b-membership condition; the
/// three equality structures (no solution on S^1, two antipodal solutions,
/// all of S^1) are case-split explicitly.
Class1D classify_1d(double r1, Complex s1, double r2, Complex s2, Complex a,
                    Complex b, double tol = 1e-9);

bool exists_bounded_1d(double r1, Complex s1, double r2, Complex s2);
bool exists_compact_1d(double r1, Complex s1, double r2, Complex s2);

enum class WitnessMode { Unbounded, Noncompact };

struct WitnessPoint {
  CVec w;
  double ratio;  // e^{Phi1(phi(w)) - Phi2(w)}
};

/// Coherent-state witness sequence w_m = m*v along the direction that the
/// failing condition exposes, with ratios nondecreasing in m. In unbounded
/// mode the direction is rescaled so the ratio passes 1e6 within m <= 1e4
/// whenever the violation has any quantitative margin.
std::vector<WitnessPoint> find_witness(const QuadraticWeight& phi1,
                                       const QuadraticWeight& phi2,
                                       const AffineMap& phi, WitnessMode mode,
                                       double tol = 1e-9);

}  // namespace bargmann

#endif
