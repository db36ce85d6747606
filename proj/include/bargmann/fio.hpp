#ifndef BARGMANN_FIO_HPP
#define BARGMANN_FIO_HPP

#include <cstdint>

#include "bargmann/decision.hpp"
#include "bargmann/qform.hpp"
#include "bargmann/types.hpp"

namespace bargmann {

/// The linear graph Lambda_Phi = {(x, xi) : xi = P x + Q conj(x) + offset}
/// with xi = (2/i) dPhi/dx, so P = (2/i) S and Q = (2/i) H. The offset is
/// nonzero only for quadratic polynomials arising from affine pullbacks.
struct GraphMap {
  int n = 0;
  CMat P;
  CMat Q;
  CVec offset;

  CVec xi(const CVec& x) const { return P * x + Q * x.conjugate() + offset; }
};

GraphMap lambda_graph(const QuadraticWeight& w);

/// The canonical transformation kappa : (y, eta) -> (A^{-1}(y - b), A^t eta)
/// attached to an invertible square affine map; the transpose (not the
/// conjugate transpose) acts on the fiber variable.
struct KappaMap {
  CMat A;
  CMat Ainv;
  CVec b;

  std::pair<CVec, CVec> operator()(const CVec& y, const CVec& eta) const {
    return {Ainv * (y - b), A.transpose() * eta};
  }
  std::pair<CVec, CVec> inverse(const CVec& u, const CVec& v) const {
    return {A * u + b, Ainv.transpose() * v};
  }
};

/// Throws on non-square or numerically singular A (condition number guard).
KappaMap kappa_map(const AffineMap& phi, double cond_guard = 1e12);

struct GraphMappingReport {
  double residual = 0.0;       // max distance of kappa(Lambda_Phi1) points
                               // from the graph of Lambda_{Phi1 o phi}
  double scale = 0.0;          // size of the sampled graph points
  bool pullback_psh = false;   // quadratic part of Phi1 o phi strictly psh
  int phase_rank = 0;          // rank of (F''_tx F''_ty F''_tt), must be n
};

/// Checks kappa(Lambda_{Phi1}) = Lambda_{Phi1 o phi} on random samples.
/// The pullback Phi1 o phi is a quadratic polynomial; its constant gradient
/// offset is carried explicitly in the target graph.
GraphMappingReport verify_graph_mapping(const QuadraticWeight& phi1,
                                        const AffineMap& phi,
                                        int samples = 100,
                                        std::uint64_t seed = 1);

}  // namespace bargmann

#endif
