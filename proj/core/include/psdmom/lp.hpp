#ifndef PSDMOM_LP_HPP
#define PSDMOM_LP_HPP

#include <cstddef>
#include <vector>

namespace psdmom {

// min c.x  subject to  A x = b, x >= 0. A is dense row-major (rows x cols).
struct LinearProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> objective;
  std::vector<double> matrix;
  std::vector<double> rhs;

  double& at(std::size_t i, std::size_t j) { return matrix[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return matrix[i * cols + j]; }
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  std::vector<double> x;
  double objective = 0.0;
  long iterations = 0;
  std::vector<double> dual;  // row multipliers at optimality
};

struct LpOptions {
  double feasibility_tol = 1e-8;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  int degenerate_pivot_limit = 5000;  // Bland's rule beyond this
  long max_iterations = 1000000;      // "lp-stalled" beyond this
  int refactor_interval = 64;
};

// Two-phase revised simplex with an explicit basis inverse, LU-refreshed
// every refactor_interval pivots. Dantzig pricing with lowest-index
// tie-breaking; Bland's rule after the degenerate-pivot limit. Deterministic
// for identical input bits.
LpSolution solve_lp(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace psdmom

#endif
