#include "psdmom/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dense_linalg.hpp"
#include "psdmom/errors.hpp"

namespace psdmom {

namespace {

struct WorkingProblem {
  std::size_t rows = 0, cols = 0;     // after presolve
  std::vector<double> a;              // row-major, rows x cols
  std::vector<double> b;              // >= 0 after row flips
  std::vector<double> cost;           // phase-2 costs
  std::vector<std::size_t> col_map;   // working col -> original col
  std::vector<std::size_t> row_map;   // working row -> original row
  std::vector<double> row_scale;      // applied row scaling (flip included)
};

class Simplex {
 public:
  Simplex(const WorkingProblem& wp, const LpOptions& opt)
      : wp_(wp), opt_(opt), total_(wp.cols + wp.rows) {
    basis_.resize(wp_.rows);
    in_basis_.assign(total_, false);
    for (std::size_t i = 0; i < wp_.rows; ++i) {
      basis_[i] = wp_.cols + i;  // artificials
      in_basis_[wp_.cols + i] = true;
    }
    binv_.assign(wp_.rows * wp_.rows, 0.0);
    for (std::size_t i = 0; i < wp_.rows; ++i) binv_[i * wp_.rows + i] = 1.0;
    xb_ = wp_.b;
  }

  // column j of [A | I]
  double entry(std::size_t i, std::size_t j) const {
    if (j < wp_.cols) return wp_.a[i * wp_.cols + j];
    return (j - wp_.cols == i) ? 1.0 : 0.0;
  }

  void ftran(std::size_t j, std::vector<double>& u) const {
    const std::size_t k = wp_.rows;
    for (std::size_t i = 0; i < k; ++i) {
      double acc = 0.0;
      for (std::size_t r = 0; r < k; ++r) acc += binv_[i * k + r] * entry(r, j);
      u[i] = acc;
    }
  }

  void btran(const std::vector<double>& cb, std::vector<double>& y) const {
    const std::size_t k = wp_.rows;
    for (std::size_t j = 0; j < k; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < k; ++i) acc += cb[i] * binv_[i * k + j];
      y[j] = acc;
    }
  }

  void refactor() {
    const std::size_t k = wp_.rows;
    std::vector<double> basis_mat(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t r = 0; r < k; ++r) basis_mat[i * k + r] = entry(i, basis_[r]);
    std::vector<double> inv = basis_mat;
    if (detail::invert(static_cast<int>(k), inv)) binv_ = std::move(inv);
    const std::size_t kk = wp_.rows;
    for (std::size_t i = 0; i < kk; ++i) {
      double acc = 0.0;
      for (std::size_t r = 0; r < kk; ++r) acc += binv_[i * kk + r] * wp_.b[r];
      xb_[i] = acc;
    }
  }

  // Runs the simplex on the given cost vector (length cols + rows).
  // Returns: 0 optimal, 1 unbounded, throws on stall.
  int run(const std::vector<double>& cost, long& iterations,
          const std::vector<bool>& eligible) {
    const std::size_t k = wp_.rows;
    std::vector<double> cb(k), y(k), u(k);
    int degenerate_run = 0;
    bool bland = false;
    int since_refactor = 0;

    for (;;) {
      if (iterations >= opt_.max_iterations)
        fail(Errc::lp_stalled, "simplex hit the hard iteration cap");
      for (std::size_t i = 0; i < k; ++i) cb[i] = cost[basis_[i]];
      btran(cb, y);

      // pricing: Dantzig with lowest index among reduced costs within 1e-9
      std::size_t enter = total_;
      double best = 0.0;
      for (std::size_t j = 0; j < total_; ++j) {
        if (in_basis_[j] || !eligible[j]) continue;
        double d = cost[j];
        for (std::size_t i = 0; i < k; ++i) d -= y[i] * entry(i, j);
        if (d >= -opt_.optimality_tol) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (enter == total_ || d < best - 1e-9) {
          best = d;
          enter = j;
        }
      }
      if (enter == total_) return 0;

      ftran(enter, u);
      std::size_t leave_pos = k;
      double theta = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        if (u[i] > opt_.pivot_tol) {
          const double ratio = std::max(xb_[i], 0.0) / u[i];
          if (leave_pos == k || ratio < theta - 1e-12 ||
              (ratio < theta + 1e-12 && basis_[i] < basis_[leave_pos])) {
            theta = ratio;
            leave_pos = i;
          }
        }
      }
      if (leave_pos == k) return 1;  // unbounded direction

      if (theta <= opt_.pivot_tol) {
        if (++degenerate_run > opt_.degenerate_pivot_limit) bland = true;
      } else {
        degenerate_run = 0;
      }

      // pivot
      const double piv = u[leave_pos];
      for (std::size_t i = 0; i < k; ++i)
        xb_[i] = (i == leave_pos) ? theta : xb_[i] - theta * u[i];
      xb_[leave_pos] = theta;
      for (std::size_t col = 0; col < k; ++col) {
        const double brc = binv_[leave_pos * k + col] / piv;
        binv_[leave_pos * k + col] = brc;
        if (brc == 0.0) continue;
        for (std::size_t i = 0; i < k; ++i)
          if (i != leave_pos) binv_[i * k + col] -= u[i] * brc;
      }
      in_basis_[basis_[leave_pos]] = false;
      in_basis_[enter] = true;
      basis_[leave_pos] = enter;
      ++iterations;
      if (++since_refactor >= opt_.refactor_interval) {
        refactor();
        since_refactor = 0;
      }
    }
  }

  const WorkingProblem& wp_;
  const LpOptions& opt_;
  std::size_t total_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  std::vector<double> binv_;
  std::vector<double> xb_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const LpOptions& opt) {
  if (lp.matrix.size() != lp.rows * lp.cols || lp.rhs.size() != lp.rows ||
      lp.objective.size() != lp.cols)
    fail(Errc::bad_input, "inconsistent LP dimensions");
  for (double v : lp.matrix)
    if (!std::isfinite(v)) fail(Errc::bad_input, "non-finite LP entry");

  LpSolution sol;
  sol.x.assign(lp.cols, 0.0);

  // presolve: empty rows and columns
  WorkingProblem wp;
  std::vector<bool> col_kept(lp.cols, false);
  for (std::size_t j = 0; j < lp.cols; ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < lp.rows && !nonzero; ++i)
      nonzero = lp.at(i, j) != 0.0;
    if (nonzero) {
      col_kept[j] = true;
      wp.col_map.push_back(j);
    } else if (lp.objective[j] < 0.0) {
      sol.status = LpStatus::unbounded;  // free ray on an unconstrained column
      return sol;
    }
  }
  for (std::size_t i = 0; i < lp.rows; ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < lp.cols && !nonzero; ++j)
      nonzero = lp.at(i, j) != 0.0;
    if (!nonzero) {
      if (std::abs(lp.rhs[i]) > opt.feasibility_tol) {
        sol.status = LpStatus::infeasible;
        return sol;
      }
      continue;
    }
    wp.row_map.push_back(i);
  }

  wp.rows = wp.row_map.size();
  wp.cols = wp.col_map.size();
  if (wp.cols == 0) {
    bool feasible = true;
    for (std::size_t i = 0; i < lp.rows; ++i)
      feasible = feasible && std::abs(lp.rhs[i]) <= opt.feasibility_tol;
    sol.status = feasible ? LpStatus::optimal : LpStatus::infeasible;
    return sol;
  }

  wp.a.resize(wp.rows * wp.cols);
  wp.b.resize(wp.rows);
  wp.cost.resize(wp.cols);
  wp.row_scale.resize(wp.rows);
  for (std::size_t i = 0; i < wp.rows; ++i) {
    const std::size_t oi = wp.row_map[i];
    double max_abs = 0.0;
    for (std::size_t j = 0; j < wp.cols; ++j)
      max_abs = std::max(max_abs, std::abs(lp.at(oi, wp.col_map[j])));
    double scale = (max_abs > 0.0) ? 1.0 / max_abs : 1.0;
    if (lp.rhs[oi] * scale < 0.0) scale = -scale;
    wp.row_scale[i] = scale;
    for (std::size_t j = 0; j < wp.cols; ++j)
      wp.a[i * wp.cols + j] = lp.at(oi, wp.col_map[j]) * scale;
    wp.b[i] = lp.rhs[oi] * scale;
  }
  for (std::size_t j = 0; j < wp.cols; ++j) wp.cost[j] = lp.objective[wp.col_map[j]];

  Simplex simplex(wp, opt);
  std::vector<bool> eligible(wp.cols + wp.rows, true);

  // phase 1: minimize the artificial sum
  std::vector<double> phase1_cost(wp.cols + wp.rows, 0.0);
  for (std::size_t i = 0; i < wp.rows; ++i) phase1_cost[wp.cols + i] = 1.0;
  long iterations = 0;
  const int rc1 = simplex.run(phase1_cost, iterations, eligible);
  if (rc1 == 1)
    fail(Errc::lp_stalled, "phase 1 reported an unbounded direction");
  double artificial_sum = 0.0;
  for (std::size_t i = 0; i < wp.rows; ++i)
    if (simplex.basis_[i] >= wp.cols) artificial_sum += std::max(simplex.xb_[i], 0.0);
  if (artificial_sum > opt.feasibility_tol * (1.0 + *std::max_element(wp.b.begin(), wp.b.end()))) {
    sol.status = LpStatus::infeasible;
    sol.iterations = iterations;
    return sol;
  }

  // drive remaining zero-valued artificials out where a usable pivot exists
  std::vector<double> u(wp.rows);
  for (std::size_t i = 0; i < wp.rows; ++i) {
    if (simplex.basis_[i] < wp.cols) continue;
    std::size_t enter = wp.cols;
    for (std::size_t j = 0; j < wp.cols; ++j) {
      if (simplex.in_basis_[j]) continue;
      simplex.ftran(j, u);
      if (std::abs(u[i]) > 1e-7) {
        enter = j;
        break;
      }
    }
    if (enter == wp.cols) continue;  // redundant row; artificial stays at zero
    simplex.ftran(enter, u);
    const double piv = u[i];
    const double theta = simplex.xb_[i] / piv;
    for (std::size_t r = 0; r < wp.rows; ++r)
      if (r != i) simplex.xb_[r] -= theta * u[r];
    simplex.xb_[i] = theta;
    for (std::size_t col = 0; col < wp.rows; ++col) {
      const double brc = simplex.binv_[i * wp.rows + col] / piv;
      simplex.binv_[i * wp.rows + col] = brc;
      if (brc == 0.0) continue;
      for (std::size_t r = 0; r < wp.rows; ++r)
        if (r != i) simplex.binv_[r * wp.rows + col] -= u[r] * brc;
    }
    simplex.in_basis_[simplex.basis_[i]] = false;
    simplex.in_basis_[enter] = true;
    simplex.basis_[i] = enter;
  }
  simplex.refactor();

  // phase 2: artificial columns are frozen out of pricing
  std::vector<double> phase2_cost(wp.cols + wp.rows, 0.0);
  for (std::size_t j = 0; j < wp.cols; ++j) phase2_cost[j] = wp.cost[j];
  for (std::size_t i = 0; i < wp.rows; ++i) eligible[wp.cols + i] = false;
  const int rc2 = simplex.run(phase2_cost, iterations, eligible);
  sol.iterations = iterations;
  if (rc2 == 1) {
    sol.status = LpStatus::unbounded;
    return sol;
  }
  simplex.refactor();

  // harvest
  for (std::size_t i = 0; i < wp.rows; ++i)
    if (simplex.basis_[i] < wp.cols)
      sol.x[wp.col_map[simplex.basis_[i]]] = std::max(simplex.xb_[i], 0.0);
  double obj = 0.0;
  for (std::size_t j = 0; j < lp.cols; ++j) obj += lp.objective[j] * sol.x[j];
  sol.objective = obj;

  std::vector<double> cb(wp.rows), y(wp.rows);
  for (std::size_t i = 0; i < wp.rows; ++i) cb[i] = phase2_cost[simplex.basis_[i]];
  simplex.btran(cb, y);
  sol.dual.assign(lp.rows, 0.0);
  for (std::size_t i = 0; i < wp.rows; ++i)
    sol.dual[wp.row_map[i]] = y[i] * wp.row_scale[i];
  sol.status = LpStatus::optimal;
  return sol;
}

}  // namespace psdmom
