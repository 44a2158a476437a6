#include "psdmom/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dense_linalg.hpp"
#include "psdmom/errors.hpp"
#include "psdmom/hermitian.hpp"

namespace psdmom {

void SemidefiniteProgram::validate() const {
  const std::size_t k = rhs.size();
  if (constraint_blocks.size() != k || constraint_free.size() != k)
    fail(Errc::bad_input, "SDP constraint count mismatch");
  if (objective_blocks.size() != block_sizes.size())
    fail(Errc::bad_input, "SDP objective block count mismatch");
  if (static_cast<int>(objective_free.size()) != free_count)
    fail(Errc::bad_input, "SDP free objective size mismatch");
  for (int n : block_sizes)
    if (n < 1) fail(Errc::bad_input, "SDP block sizes must be >= 1");
  for (std::size_t i = 0; i < k; ++i) {
    if (constraint_blocks[i].size() != block_sizes.size())
      fail(Errc::bad_input, "SDP constraint blocks mismatch");
    for (std::size_t b = 0; b < block_sizes.size(); ++b) {
      const auto n = static_cast<std::size_t>(block_sizes[b]);
      if (constraint_blocks[i][b].size() != n * n)
        fail(Errc::bad_input, "SDP constraint block size mismatch");
    }
    if (static_cast<int>(constraint_free[i].size()) != free_count)
      fail(Errc::bad_input, "SDP constraint free size mismatch");
  }
}

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::infeasible: return "infeasible";
    case SdpStatus::unbounded: return "unbounded";
    case SdpStatus::stalled: return "stalled";
  }
  return "unknown";
}

namespace {

using Mat = std::vector<double>;

void matmul(int n, const double* a, const double* b, double* out) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i * n + j] = 0.0;
    for (int k = 0; k < n; ++k) {
      const double aik = a[i * n + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) out[i * n + j] += aik * b[k * n + j];
    }
  }
}

double inner(const Mat& a, const Mat& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// tr(A W) for symmetric A and general W.
double trace_prod_sym(int n, const Mat& a, const Mat& w) {
  double s = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) s += a[r * n + c] * w[c * n + r];
  return s;
}

void symmetrize(int n, Mat& a) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a[i * n + j] + a[j * n + i]);
      a[i * n + j] = v;
      a[j * n + i] = v;
    }
}

// Largest alpha with  S + alpha * dS  psd, given pd S; +inf when unrestricted.
double max_step_length(int n, const Mat& s, const Mat& ds) {
  Mat chol = s;
  if (!detail::cholesky(n, chol)) return 0.0;
  Mat b = ds;
  std::vector<double> col(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) col[r] = b[r * n + c];
    detail::forward_subst(n, chol, col.data());
    for (int r = 0; r < n; ++r) b[r * n + c] = col[r];
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) col[c] = b[r * n + c];
    detail::forward_subst(n, chol, col.data());
    for (int c = 0; c < n; ++c) b[r * n + c] = col[c];
  }
  symmetrize(n, b);
  const auto eig = symmetric_eigenvalues(static_cast<std::size_t>(n), b.data());
  const double lam_min = eig.back();
  if (lam_min >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / lam_min;
}

struct Iterate {
  std::vector<Mat> X, Z;
  std::vector<double> y, u;
};

}  // namespace

SdpSolution solve_sdp(const SemidefiniteProgram& sdp, const SdpOptions& opt) {
  sdp.validate();
  const int nb = static_cast<int>(sdp.block_sizes.size());
  const int k = static_cast<int>(sdp.rhs.size());
  const int f = sdp.free_count;
  if (nb == 0) fail(Errc::bad_input, "SDP needs at least one block");

  double data_max = 0.0;
  for (double v : sdp.rhs) data_max = std::max(data_max, std::abs(v));
  for (double v : sdp.objective_free) data_max = std::max(data_max, std::abs(v));
  for (const auto& c : sdp.objective_blocks)
    for (double v : c) data_max = std::max(data_max, std::abs(v));
  for (const auto& row : sdp.constraint_blocks)
    for (const auto& blockmat : row)
      for (double v : blockmat) data_max = std::max(data_max, std::abs(v));
  for (const auto& row : sdp.constraint_free)
    for (double v : row) data_max = std::max(data_max, std::abs(v));

  int total_dim = 0;
  for (int n : sdp.block_sizes) total_dim += n;

  Iterate it;
  it.X.resize(static_cast<std::size_t>(nb));
  it.Z.resize(static_cast<std::size_t>(nb));
  const double eta = 1.0 + data_max;
  for (int b = 0; b < nb; ++b) {
    const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
    it.X[b].assign(static_cast<std::size_t>(n) * n, 0.0);
    it.Z[b].assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
      it.X[b][static_cast<std::size_t>(i) * n + i] = eta;
      it.Z[b][static_cast<std::size_t>(i) * n + i] = eta;
    }
  }
  it.y.assign(static_cast<std::size_t>(k), 0.0);
  it.u.assign(static_cast<std::size_t>(f), 0.0);

  SdpSolution best;
  double best_score = std::numeric_limits<double>::infinity();

  auto record = [&](const Iterate& cur, double pobj, double dobj, double gap,
                    double pinf, double dinf, int iter) {
    const double score = gap + pinf + dinf;
    if (score < best_score) {
      best_score = score;
      best.blocks = cur.X;
      best.dual_blocks = cur.Z;
      best.y = cur.y;
      best.free_values = cur.u;
      best.primal_objective = pobj;
      best.dual_objective = dobj;
      best.gap = gap;
      best.primal_infeasibility = pinf;
      best.dual_infeasibility = dinf;
      best.iterations = iter;
    }
  };

  std::vector<Mat> rd(static_cast<std::size_t>(nb));
  std::vector<double> rp(static_cast<std::size_t>(k));
  std::vector<double> rg(static_cast<std::size_t>(f));
  std::vector<Mat> zinv_chol(static_cast<std::size_t>(nb));
  std::vector<Mat> rc(static_cast<std::size_t>(nb));
  std::vector<Mat> dX(static_cast<std::size_t>(nb)), dZ(static_cast<std::size_t>(nb));
  std::vector<Mat> dXa(static_cast<std::size_t>(nb)), dZa(static_cast<std::size_t>(nb));

  const int kf = k + f;
  std::vector<double> saddle(static_cast<std::size_t>(kf) * kf);
  std::vector<double> rhs_vec(static_cast<std::size_t>(kf));
  std::vector<double> sol_vec(static_cast<std::size_t>(kf));

  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    // residuals
    double pobj = inner(sdp.objective_free, it.u);
    for (int b = 0; b < nb; ++b) pobj += inner(sdp.objective_blocks[b], it.X[b]);
    double dobj = 0.0;
    for (int i = 0; i < k; ++i) dobj += sdp.rhs[static_cast<std::size_t>(i)] * it.y[i];

    double pinf = 0.0;
    for (int i = 0; i < k; ++i) {
      double ax = inner(sdp.constraint_free[static_cast<std::size_t>(i)], it.u);
      for (int b = 0; b < nb; ++b)
        ax += inner(sdp.constraint_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)], it.X[b]);
      rp[static_cast<std::size_t>(i)] = sdp.rhs[static_cast<std::size_t>(i)] - ax;
      pinf = std::max(pinf, std::abs(rp[static_cast<std::size_t>(i)]));
    }
    pinf /= (1.0 + data_max);

    double dinf = 0.0;
    for (int b = 0; b < nb; ++b) {
      const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
      rd[b] = sdp.objective_blocks[static_cast<std::size_t>(b)];
      for (int i = 0; i < k; ++i) {
        const double yi = it.y[static_cast<std::size_t>(i)];
        if (yi == 0.0) continue;
        const auto& a = sdp.constraint_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
        for (int e = 0; e < n * n; ++e) rd[b][static_cast<std::size_t>(e)] -= yi * a[static_cast<std::size_t>(e)];
      }
      for (int e = 0; e < n * n; ++e) {
        rd[b][static_cast<std::size_t>(e)] -= it.Z[b][static_cast<std::size_t>(e)];
        dinf = std::max(dinf, std::abs(rd[b][static_cast<std::size_t>(e)]));
      }
    }
    for (int j = 0; j < f; ++j) {
      double fy = sdp.objective_free[static_cast<std::size_t>(j)];
      for (int i = 0; i < k; ++i)
        fy -= it.y[static_cast<std::size_t>(i)] *
              sdp.constraint_free[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      rg[static_cast<std::size_t>(j)] = fy;
      dinf = std::max(dinf, std::abs(fy));
    }
    dinf /= (1.0 + data_max);

    double mu = 0.0;
    for (int b = 0; b < nb; ++b) mu += inner(it.X[b], it.Z[b]);
    mu /= static_cast<double>(total_dim);
    const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    record(it, pobj, dobj, gap, pinf, dinf, iter);

    if (gap <= opt.gap_tol && pinf <= opt.feasibility_tol && dinf <= opt.feasibility_tol)
      break;
    // divergence heuristics
    if (!std::isfinite(pobj) || !std::isfinite(dobj) || !std::isfinite(mu)) break;
    const double huge = 1e12 * (1.0 + data_max);
    if (dobj > huge && dinf < 1e-8) {
      best.status = SdpStatus::infeasible;
      best.iterations = iter;
      return best;
    }
    if (pobj < -huge && pinf < 1e-8) {
      best.status = SdpStatus::unbounded;
      best.iterations = iter;
      return best;
    }
    if (mu <= 0.0) break;

    // Z factorizations
    bool chol_ok = true;
    for (int b = 0; b < nb && chol_ok; ++b) {
      const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
      zinv_chol[b] = it.Z[b];
      chol_ok = detail::cholesky(n, zinv_chol[b]);
    }
    if (!chol_ok) break;

    auto apply_zinv = [&](int b, const Mat& in, Mat& out) {
      // out = in * Z_b^{-1} via two triangular solves on rows
      const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
      out = in;
      std::vector<double> row(static_cast<std::size_t>(n));
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) row[static_cast<std::size_t>(c)] = out[r * n + c];
        detail::forward_subst(n, zinv_chol[b], row.data());
        detail::backward_subst_t(n, zinv_chol[b], row.data());
        for (int c = 0; c < n; ++c) out[r * n + c] = row[static_cast<std::size_t>(c)];
      }
    };

    // Schur complement M[i][j] = sum_b tr(A_i X A_j Z^{-1})
    std::fill(saddle.begin(), saddle.end(), 0.0);
    {
      Mat tmp, w;
      for (int j = 0; j < k; ++j) {
        for (int b = 0; b < nb; ++b) {
          const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
          const auto& aj = sdp.constraint_blocks[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
          tmp.assign(static_cast<std::size_t>(n) * n, 0.0);
          matmul(n, it.X[b].data(), aj.data(), tmp.data());
          apply_zinv(b, tmp, w);
          for (int i = 0; i < k; ++i) {
            const auto& ai = sdp.constraint_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
            saddle[static_cast<std::size_t>(i) * kf + j] += trace_prod_sym(n, ai, w);
          }
        }
      }
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < f; ++j) {
          saddle[static_cast<std::size_t>(i) * kf + (k + j)] =
              sdp.constraint_free[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
          saddle[static_cast<std::size_t>(k + j) * kf + i] =
              sdp.constraint_free[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    const detail::LuFactors lu = detail::lu_factor(kf, saddle);
    if (!lu.ok) break;

    auto solve_direction = [&](std::vector<Mat>& out_dX, std::vector<Mat>& out_dZ) {
      // rhs_vec[i] = rp[i] - sum_b tr(A_i (Rc - X Rd) Z^{-1})
      Mat tmp, g;
      for (int i = 0; i < k; ++i) rhs_vec[static_cast<std::size_t>(i)] = rp[static_cast<std::size_t>(i)];
      for (int b = 0; b < nb; ++b) {
        const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
        tmp.assign(static_cast<std::size_t>(n) * n, 0.0);
        matmul(n, it.X[b].data(), rd[b].data(), tmp.data());
        for (int e = 0; e < n * n; ++e)
          tmp[static_cast<std::size_t>(e)] = rc[b][static_cast<std::size_t>(e)] - tmp[static_cast<std::size_t>(e)];
        apply_zinv(b, tmp, g);
        for (int i = 0; i < k; ++i) {
          const auto& ai = sdp.constraint_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
          rhs_vec[static_cast<std::size_t>(i)] -= trace_prod_sym(n, ai, g);
        }
      }
      for (int j = 0; j < f; ++j) rhs_vec[static_cast<std::size_t>(k + j)] = rg[static_cast<std::size_t>(j)];
      detail::lu_solve(lu, rhs_vec.data(), sol_vec.data());

      for (int b = 0; b < nb; ++b) {
        const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
        out_dZ[b] = rd[b];
        for (int i = 0; i < k; ++i) {
          const double dy = sol_vec[static_cast<std::size_t>(i)];
          if (dy == 0.0) continue;
          const auto& a = sdp.constraint_blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)];
          for (int e = 0; e < n * n; ++e)
            out_dZ[b][static_cast<std::size_t>(e)] -= dy * a[static_cast<std::size_t>(e)];
        }
        tmp.assign(static_cast<std::size_t>(n) * n, 0.0);
        matmul(n, it.X[b].data(), out_dZ[b].data(), tmp.data());
        for (int e = 0; e < n * n; ++e)
          tmp[static_cast<std::size_t>(e)] = rc[b][static_cast<std::size_t>(e)] - tmp[static_cast<std::size_t>(e)];
        apply_zinv(b, tmp, out_dX[b]);
        symmetrize(n, out_dX[b]);
      }
    };

    // predictor (affine scaling)
    for (int b = 0; b < nb; ++b) {
      const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
      rc[b].assign(static_cast<std::size_t>(n) * n, 0.0);
      matmul(n, it.X[b].data(), it.Z[b].data(), rc[b].data());
      for (auto& v : rc[b]) v = -v;
    }
    solve_direction(dXa, dZa);

    double alpha_p = 1.0, alpha_d = 1.0;
    for (int b = 0; b < nb; ++b) {
      const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
      alpha_p = std::min(alpha_p, max_step_length(n, it.X[b], dXa[b]));
      alpha_d = std::min(alpha_d, max_step_length(n, it.Z[b], dZa[b]));
    }
    double mu_aff = 0.0;
    for (int b = 0; b < nb; ++b) {
      const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
      for (int e = 0; e < n * n; ++e)
        mu_aff += (it.X[b][static_cast<std::size_t>(e)] + alpha_p * dXa[b][static_cast<std::size_t>(e)]) *
                  (it.Z[b][static_cast<std::size_t>(e)] + alpha_d * dZa[b][static_cast<std::size_t>(e)]);
    }
    mu_aff /= static_cast<double>(total_dim);
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);
    sigma = std::clamp(sigma, 0.0, 1.0);

    // corrector
    Mat prod;
    for (int b = 0; b < nb; ++b) {
      const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
      rc[b].assign(static_cast<std::size_t>(n) * n, 0.0);
      matmul(n, it.X[b].data(), it.Z[b].data(), rc[b].data());
      prod.assign(static_cast<std::size_t>(n) * n, 0.0);
      matmul(n, dXa[b].data(), dZa[b].data(), prod.data());
      for (int e = 0; e < n * n; ++e)
        rc[b][static_cast<std::size_t>(e)] = -rc[b][static_cast<std::size_t>(e)] - prod[static_cast<std::size_t>(e)];
      for (int i = 0; i < n; ++i) rc[b][static_cast<std::size_t>(i) * n + i] += sigma * mu;
    }
    solve_direction(dX, dZ);

    alpha_p = std::numeric_limits<double>::infinity();
    alpha_d = std::numeric_limits<double>::infinity();
    for (int b = 0; b < nb; ++b) {
      const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
      alpha_p = std::min(alpha_p, max_step_length(n, it.X[b], dX[b]));
      alpha_d = std::min(alpha_d, max_step_length(n, it.Z[b], dZ[b]));
    }
    alpha_p = std::min(1.0, opt.step_fraction * alpha_p);
    alpha_d = std::min(1.0, opt.step_fraction * alpha_d);
    if (alpha_p <= 1e-14 && alpha_d <= 1e-14) break;  // jammed

    for (int b = 0; b < nb; ++b) {
      const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
      for (int e = 0; e < n * n; ++e) {
        it.X[b][static_cast<std::size_t>(e)] += alpha_p * dX[b][static_cast<std::size_t>(e)];
        it.Z[b][static_cast<std::size_t>(e)] += alpha_d * dZ[b][static_cast<std::size_t>(e)];
      }
      symmetrize(n, it.X[b]);
      symmetrize(n, it.Z[b]);
    }
    for (int i = 0; i < k; ++i) it.y[static_cast<std::size_t>(i)] += alpha_d * sol_vec[static_cast<std::size_t>(i)];
    for (int j = 0; j < f; ++j) it.u[static_cast<std::size_t>(j)] += alpha_p * sol_vec[static_cast<std::size_t>(k + j)];
  }

  best.status = (best.gap <= opt.accept_tol &&
                 best.primal_infeasibility <= opt.accept_tol &&
                 best.dual_infeasibility <= opt.accept_tol)
                    ? SdpStatus::optimal
                    : SdpStatus::stalled;
  if (best.iterations < iter) best.iterations = iter;
  return best;
}

}  // namespace psdmom
