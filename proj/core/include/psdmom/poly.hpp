#ifndef PSDMOM_POLY_HPP
#define PSDMOM_POLY_HPP

#include <vector>

#include "psdmom/moments.hpp"

namespace psdmom {

// Dense real univariate polynomial in the monomial basis. The zero
// polynomial is the empty coefficient list (degree -1 here, standing in for
// degree -infinity); trailing exact zeros are trimmed on construction.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);
  static Polynomial constant(double c);
  static Polynomial monomial(int degree, double coefficient = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coefficients() const { return c_; }
  double coefficient(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : 0.0;
  }

  double operator()(double x) const;  // Horner
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial scaled(double factor) const;
  Polynomial times(const Polynomial& o) const;
  Polynomial derivative() const;
  Polynomial reflected() const;  // q(-x)

 private:
  std::vector<double> c_;
};

// Negative part function f_p: 0 for x >= 0, |x|^p for x < 0.
double eval_fp(int p, double x);

// tr(q(M)) = sum_j q_j mu_j with mu_0 = 1. Throws "insufficient-moments"
// when deg(q) exceeds the available order.
double pair_with_moments(const Polynomial& q, const MomentVector& mv);

enum class HandelmanVariant { positive_x, reflected };

// Monomial coefficients of x^a1 (1-x)^a2 (positive_x) or (-x)^a1 (1+x)^a2
// (reflected), with exact integer binomials; |alpha| <= 64.
Polynomial handelman_product(int alpha1, int alpha2, HandelmanVariant variant);

inline constexpr int kChebDegreeCeiling = 32;

// sum_k c_k t_k expanded through t_{k+1} = 2x t_k - t_{k-1}. Refuses degrees
// beyond the validated ceiling ("cheb-degree-ceiling").
Polynomial cheb_to_monomial(const std::vector<double>& cheb_coefficients);

struct SupNormReport {
  double plus = 0.0;     // sup of (q - f_p)_+ on [-1,1]
  double minus = 0.0;    // sup of (q - f_p)_- on [-1,1]
  double total = 0.0;    // max(plus, minus)
  double argmax_plus = 0.0;
  double argmax_minus = 0.0;
};

// Sup norms of q - f_p over [-1,1], handled piecewise: on [-1,0] the
// difference is the polynomial q - (-x)^p, on [0,1] it is q itself.
// Candidates are the interval endpoints plus sign-change roots of each
// piece's derivative, bracketed on 512 Chebyshev-distributed seed intervals
// and polished by bisection + Newton.
SupNormReport sup_norm_vs_fp(const Polynomial& q, int p);

}  // namespace psdmom

#endif
