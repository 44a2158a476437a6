#include "psdmom/handelman.hpp"

#include <string>

#include "psdmom/errors.hpp"

namespace psdmom {

Polynomial HandelmanProgram::certificate_q(const std::vector<double>& x) const {
  const std::size_t t = alphas.size();
  Polynomial q;
  for (std::size_t a = 0; a < t; ++a) {
    const double c = x[t + a];
    if (c != 0.0) q = q + positive_products[a].scaled(c);
  }
  if (side == BoundSide::lower) q = q.scaled(-1.0);
  return q;
}

double HandelmanProgram::objective(const std::vector<double>& x,
                                   const MomentVector& mv) const {
  return pair_with_moments(certificate_q(x), mv);
}

HandelmanProgram build_handelman_program(int p, int m, BoundSide side) {
  if (p < 1 || m < p)
    fail(Errc::bad_input, "Handelman level requires 1 <= p <= m");
  HandelmanProgram prog;
  prog.p = p;
  prog.m = m;
  prog.side = side;
  for (int total = 0; total <= m; ++total)
    for (int a1 = 0; a1 <= total; ++a1) {
      prog.alphas.emplace_back(a1, total - a1);
      prog.reflected_products.push_back(
          handelman_product(a1, total - a1, HandelmanVariant::reflected));
      prog.positive_products.push_back(
          handelman_product(a1, total - a1, HandelmanVariant::positive_x));
    }
  return prog;
}

LinearProgram to_lp(const HandelmanProgram& prog, const MomentVector& mv) {
  const std::size_t t = prog.alphas.size();
  const std::size_t rows = static_cast<std::size_t>(prog.m) + 1;
  LinearProgram lp;
  lp.rows = rows;
  lp.cols = 2 * t;
  lp.matrix.assign(rows * lp.cols, 0.0);
  lp.rhs.assign(rows, 0.0);
  lp.objective.assign(lp.cols, 0.0);

  // Row j equates the x^j coefficients of the two representations of q:
  //   sum_a c_a pos_a[j] - sum_a b_a refl_a[j] = sign * [j == p] (-1)^p
  // with sign = +1 on the upper side and -1 on the lower side (the b-sum
  // changes sides between eq-style upper and lower forms, which lands on the
  // right-hand side after normalization).
  const double sign = (prog.side == BoundSide::upper) ? 1.0 : -1.0;
  for (std::size_t a = 0; a < t; ++a) {
    const auto& refl = prog.reflected_products[a].coefficients();
    const auto& pos = prog.positive_products[a].coefficients();
    for (std::size_t j = 0; j < refl.size(); ++j)
      lp.at(j, a) = -refl[j];
    for (std::size_t j = 0; j < pos.size(); ++j)
      lp.at(j, t + a) = pos[j];
    // objective: tr(q(M)) = ±sum_a c_a <pos_a, moments>; both sides minimize
    // the same pairing (the lower side maximizes tr(q(M)) with q = -sum c pos)
    lp.objective[t + a] = pair_with_moments(prog.positive_products[a], mv);
  }
  lp.rhs[static_cast<std::size_t>(prog.p)] = sign * ((prog.p % 2 == 0) ? 1.0 : -1.0);
  return lp;
}

namespace {

HandelmanCertificate harvest(const HandelmanProgram& prog, const LpSolution& sol,
                             const MomentVector& mv) {
  HandelmanCertificate cert;
  cert.side = prog.side;
  cert.p = prog.p;
  cert.m = prog.m;
  cert.alphas = prog.alphas;
  const std::size_t t = prog.alphas.size();
  cert.b_coefficients.assign(sol.x.begin(), sol.x.begin() + static_cast<long>(t));
  cert.c_coefficients.assign(sol.x.begin() + static_cast<long>(t), sol.x.end());
  cert.q = prog.certificate_q(sol.x);
  cert.objective = pair_with_moments(cert.q, mv);
  cert.iterations = sol.iterations;
  return cert;
}

}  // namespace

HandelmanBoundsResult handelman_bounds(const MomentVector& mv, int p, int m,
                                       const LpOptions& options) {
  if (m > mv.order())
    fail(Errc::insufficient_moments,
         "Handelman level " + std::to_string(m) + " needs m moments");

  const HandelmanProgram upper_prog = build_handelman_program(p, m, BoundSide::upper);
  const LpSolution upper_sol = solve_lp(to_lp(upper_prog, mv), options);
  if (upper_sol.status != LpStatus::optimal)
    fail(Errc::handelman_infeasible_bug,
         "upper Handelman LP must be solvable for m >= p");

  const HandelmanProgram lower_prog = build_handelman_program(p, m, BoundSide::lower);
  const LpSolution lower_sol = solve_lp(to_lp(lower_prog, mv), options);
  if (lower_sol.status != LpStatus::optimal)
    fail(Errc::handelman_infeasible_bug,
         "lower Handelman LP must be solvable for m >= p");

  HandelmanBoundsResult result;
  result.upper = harvest(upper_prog, upper_sol, mv);
  result.lower = harvest(lower_prog, lower_sol, mv);
  result.bounds = make_bounds(result.lower.objective, result.upper.objective, p);
  return result;
}

}  // namespace psdmom
