#include "bargmann/poly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "bargmann/decision.hpp"

namespace bargmann {

namespace {
constexpr double kDropTol = 0.0;  // exact zero only; FP noise is kept

int total_degree(const MultiIndex& a) {
  return std::accumulate(a.begin(), a.end(), 0);
}
}  // namespace

bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

Poly Poly::constant(int nvars, Complex c) {
  Poly p(nvars);
  p.add_term(MultiIndex(nvars, 0), c);
  return p;
}

Poly Poly::monomial(MultiIndex alpha, Complex c) {
  Poly p(static_cast<int>(alpha.size()));
  p.add_term(alpha, c);
  return p;
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, total_degree(a));
  return d;
}

void Poly::add_term(const MultiIndex& alpha, Complex c) {
  if (static_cast<int>(alpha.size()) != nvars_)
    throw std::invalid_argument("Poly::add_term: exponent length mismatch");
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    if (c != Complex(0.0)) terms_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (std::abs(it->second) <= kDropTol) terms_.erase(it);
}

Complex Poly::evaluate(const CVec& x) const {
  if (x.size() != nvars_)
    throw std::invalid_argument("Poly::evaluate: dimension mismatch");
  Complex sum = 0.0;
  for (const auto& [a, c] : terms_) {
    Complex t = c;
    for (int j = 0; j < nvars_; ++j)
      for (int k = 0; k < a[j]; ++k) t *= x(j);
    sum += t;
  }
  return sum;
}

Poly Poly::operator+(const Poly& o) const {
  if (nvars_ != o.nvars_)
    throw std::invalid_argument("Poly::operator+: variable count mismatch");
  Poly r = *this;
  for (const auto& [a, c] : o.terms_) r.add_term(a, c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (nvars_ != o.nvars_)
    throw std::invalid_argument("Poly::operator*: variable count mismatch");
  Poly r(nvars_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      MultiIndex s(nvars_);
      for (int j = 0; j < nvars_; ++j) s[j] = a[j] + b[j];
      r.add_term(s, ca * cb);
    }
  }
  return r;
}

Poly Poly::operator*(Complex c) const {
  Poly r(nvars_);
  if (c == Complex(0.0)) return r;
  for (const auto& [a, ca] : terms_) r.add_term(a, ca * c);
  return r;
}

Poly compose_affine(const Poly& p, const AffineMap& phi) {
  if (p.nvars() != phi.n1)
    throw std::invalid_argument("compose_affine: dimension mismatch");
  const int n2 = phi.n2;
  // Affine linear forms phi_i(x) = (Ax + b)_i, with memoized powers.
  std::vector<Poly> forms(phi.n1, Poly(n2));
  for (int i = 0; i < phi.n1; ++i) {
    Poly f = Poly::constant(n2, phi.b(i));
    for (int j = 0; j < n2; ++j) {
      MultiIndex e(n2, 0);
      e[j] = 1;
      f = f + Poly::monomial(e, phi.A(i, j));
    }
    forms[i] = f;
  }
  std::vector<std::vector<Poly>> powers(phi.n1, {Poly::constant(n2, 1.0)});
  auto power = [&](int i, int k) -> const Poly& {
    auto& cache = powers[i];
    while (static_cast<int>(cache.size()) <= k)
      cache.push_back(cache.back() * forms[i]);
    return cache[k];
  };

  Poly result(n2);
  for (const auto& [a, c] : p.terms()) {
    Poly term = Poly::constant(n2, c);
    for (int i = 0; i < phi.n1; ++i)
      if (a[i] > 0) term = term * power(i, a[i]);
    result = result + term;
  }
  return result;
}

std::vector<MultiIndex> monomials_up_to(int n, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("monomials_up_to: D < 0");
  std::vector<MultiIndex> out;
  MultiIndex cur(n, 0);
  // Enumerate exponents of each total degree recursively.
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == n - 1) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      cur[pos] = k;
      rec(pos + 1, remaining - k);
    }
  };
  for (int d = 0; d <= max_degree; ++d) rec(0, d);
  return out;
}

}  // namespace bargmann
