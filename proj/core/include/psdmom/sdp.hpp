#ifndef PSDMOM_SDP_HPP
#define PSDMOM_SDP_HPP

#include <string>
#include <vector>

namespace psdmom {

// Block-diagonal semidefinite program with native free scalar variables:
//
//   minimize   sum_b <C_b, X_b> + c_free . u
//   subject to sum_b <A_ib, X_b> + F_i . u = rhs_i   (i = 1..k)
//              X_b psd symmetric, u free.
//
// Symmetric matrices are dense row-major.
struct SemidefiniteProgram {
  std::vector<int> block_sizes;
  int free_count = 0;
  std::vector<double> rhs;
  std::vector<std::vector<std::vector<double>>> constraint_blocks;  // [k][b]
  std::vector<std::vector<double>> constraint_free;                 // [k]
  std::vector<std::vector<double>> objective_blocks;                // [b]
  std::vector<double> objective_free;

  void validate() const;
};

enum class SdpStatus { optimal, infeasible, unbounded, stalled };

std::string to_string(SdpStatus status);

struct SdpSolution {
  SdpStatus status = SdpStatus::stalled;
  std::vector<std::vector<double>> blocks;       // X
  std::vector<std::vector<double>> dual_blocks;  // Z
  std::vector<double> y;
  std::vector<double> free_values;               // u
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double gap = 0.0;                  // relative duality gap
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
};

struct SdpOptions {
  double gap_tol = 1e-10;
  double feasibility_tol = 1e-10;
  double accept_tol = 1e-7;   // weakest residuals still reported as optimal
  int max_iterations = 500;
  double step_fraction = 0.98;
};

// Infeasible primal-dual interior point with the HKM search direction and a
// Mehrotra predictor-corrector; free variables are kept in the KKT system
// rather than split into cone variables. Deterministic for identical input
// bits. Iteration cap exhaustion returns the best iterate with status
// "stalled".
SdpSolution solve_sdp(const SemidefiniteProgram& sdp,
                      const SdpOptions& options = {});

}  // namespace psdmom

#endif
