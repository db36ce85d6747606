#ifndef BARGMANN_POLY_HPP
#define BARGMANN_POLY_HPP

#include <map>
#include <vector>

#include "bargmann/types.hpp"

namespace bargmann {

struct AffineMap;

/// Graded lexicographic order: lower total degree first, then lexicographic
/// with earlier variables dominating, so for n=2: (0,0), (1,0), (0,1), ...
bool grlex_less(const MultiIndex& a, const MultiIndex& b);

/// Sparse multivariate polynomial over C. Zero coefficients are never stored.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, Complex c);
  static Poly monomial(MultiIndex alpha, Complex c = 1.0);

  int nvars() const { return nvars_; }
  const std::map<MultiIndex, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial

  void add_term(const MultiIndex& alpha, Complex c);

  Complex evaluate(const CVec& x) const;

  Poly operator+(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(Complex c) const;

 private:
  int nvars_ = 0;
  std::map<MultiIndex, Complex> terms_;
};

/// p(Ax+b) as a polynomial in the map's source variables. Linear forms are
/// raised to powers with memoization; exact for desk-scale degrees.
Poly compose_affine(const Poly& p, const AffineMap& phi);

/// All multi-indices alpha with |alpha| <= max_degree, graded lex order.
/// Count is C(n + max_degree, n).
std::vector<MultiIndex> monomials_up_to(int n, int max_degree);

}  // namespace bargmann

#endif
