#ifndef PSDMOM_HANDELMAN_HPP
#define PSDMOM_HANDELMAN_HPP

#include <utility>
#include <vector>

#include "psdmom/bounds.hpp"
#include "psdmom/lp.hpp"
#include "psdmom/poly.hpp"

namespace psdmom {

enum class BoundSide { lower, upper };

// The Handelman linear program at level m for one side. Variables are the
// nonnegative coefficients (b_alpha, c_alpha) over the full product basis
// |alpha| <= m; the m+1 equality rows equate the monomial coefficients of
// the two representations of q, and q itself is eliminated: its coefficients
// are recovered from the c_alpha expansion.
//
//   upper:  q = (-x)^p + sum b_a (-x)^a1 (1+x)^a2 = sum c_a x^a1 (1-x)^a2
//   lower:  q = (-x)^p - sum b_a (-x)^a1 (1+x)^a2 = -sum c_a x^a1 (1-x)^a2
struct HandelmanProgram {
  int p = 1;
  int m = 1;
  BoundSide side = BoundSide::upper;
  std::vector<std::pair<int, int>> alphas;
  std::vector<Polynomial> reflected_products;  // (-x)^a1 (1+x)^a2
  std::vector<Polynomial> positive_products;   // x^a1 (1-x)^a2

  // Affine maps out of an LP solution vector (b..., c...):
  Polynomial certificate_q(const std::vector<double>& x) const;
  double objective(const std::vector<double>& x, const MomentVector& mv) const;
};

HandelmanProgram build_handelman_program(int p, int m, BoundSide side);

// Concrete LP with the tr(q(M)) objective attached.
LinearProgram to_lp(const HandelmanProgram& program, const MomentVector& mv);

struct HandelmanCertificate {
  BoundSide side = BoundSide::upper;
  int p = 1;
  int m = 1;
  Polynomial q;
  std::vector<double> b_coefficients;
  std::vector<double> c_coefficients;
  std::vector<std::pair<int, int>> alphas;
  double objective = 0.0;
  long iterations = 0;
};

struct HandelmanBoundsResult {
  Bounds bounds;
  HandelmanCertificate lower;
  HandelmanCertificate upper;
};

// Relaxed bounds d~±_{p,m} bracketing d_p(M)^p. The upper LP is feasible for
// every m >= p (the constant majorant route), so an infeasible report there
// is a solver defect and surfaces as "handelman-infeasible-bug".
HandelmanBoundsResult handelman_bounds(const MomentVector& mv, int p, int m,
                                       const LpOptions& options = {});

}  // namespace psdmom

#endif
