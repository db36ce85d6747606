#ifndef BARGMANN_TYPES_HPP
#define BARGMANN_TYPES_HPP

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bargmann {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Exponent multi-index of a monomial, one entry per variable.
using MultiIndex = std::vector<int>;

enum class Decision { Yes, No, Boundary };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    default: return "boundary";
  }
}

struct SubVerdict {
  std::string id;
  Decision decision = Decision::Yes;
  double value = 0.0;  // the scalar that drove the decision
};

/// Machine-checkable evidence attached to a Verdict: the eigenvalues of the
/// RealForm that was tested, an orthonormal basis of its numerical null
/// space, the identifier of the first violated condition, and (for negative
/// boundedness/compactness verdicts) a direction along which the violation
/// is witnessed.
struct Certificate {
  RVec eigenvalues;
  CMat null_basis;          // columns are complex null directions
  std::string violated;     // empty when decision is Yes
  CVec witness;             // empty when no witness applies
};

struct Verdict {
  Decision decision = Decision::Yes;
  std::vector<SubVerdict> conditions;
  Certificate certificate;
};

}  // namespace bargmann

#endif
