#include "psdmom/sos.hpp"

#include <string>

#include "psdmom/errors.hpp"

namespace psdmom {

namespace {

// Gram degrees l_i for the four multipliers {1, x, (1-x), x(1-x)} under the
// rule that every summand has degree <= m; sos degrees are even, so
// l_i = floor((m - deg multiplier)/2).
std::vector<int> full4_gram_degrees(int m) {
  return {m / 2, (m - 1) / 2, (m - 1) / 2, (m - 2) / 2};
}

std::vector<int> reduced2_gram_degrees(int m) { return {m / 2, (m - 2) / 2}; }

}  // namespace

SosProgram build_sos_sdp(int p, int m, BoundSide side, SosAnsatz ansatz,
                         const MomentVector& mv) {
  if (p < 1 || m < p) fail(Errc::bad_input, "sos level requires 1 <= p <= m");
  if (ansatz == SosAnsatz::reduced2 && m < 2)
    fail(Errc::bad_input, "reduced2 ansatz requires m >= 2");

  SosProgram prog;
  prog.p = p;
  prog.m = m;
  prog.side = side;
  prog.ansatz = ansatz;

  const double side_sign = (side == BoundSide::upper) ? 1.0 : -1.0;
  std::vector<int> degrees;
  std::vector<Polynomial> sigma_mult, tau_mult;
  if (ansatz == SosAnsatz::full4) {
    degrees = full4_gram_degrees(m);
    // sigma multipliers carry the reflection x -> -x of the [0,1] ansatz
    sigma_mult = {Polynomial({side_sign}), Polynomial({0.0, -side_sign}),
                  Polynomial({side_sign, side_sign}),
                  Polynomial({0.0, -side_sign, -side_sign})};
    tau_mult = {Polynomial({side_sign}), Polynomial({0.0, side_sign}),
                Polynomial({side_sign, -side_sign}),
                Polynomial({0.0, side_sign, -side_sign})};
  } else {
    degrees = reduced2_gram_degrees(m);
    sigma_mult = {Polynomial({side_sign}), Polynomial({0.0, -side_sign, -side_sign})};
    tau_mult = {Polynomial({side_sign}), Polynomial({0.0, side_sign, -side_sign})};
  }

  SemidefiniteProgram& sdp = prog.sdp;
  sdp.free_count = m + 1;  // q_0..q_m
  const int rows = 2 * (m + 1);
  sdp.rhs.assign(static_cast<std::size_t>(rows), 0.0);

  // register blocks, skipping empty ones
  auto add_blocks = [&](const std::vector<int>& degs, std::vector<int>& out) {
    for (int l : degs) {
      if (l < 0) {
        out.push_back(-1);
        continue;
      }
      out.push_back(static_cast<int>(sdp.block_sizes.size()));
      sdp.block_sizes.push_back(l + 1);
    }
  };
  add_blocks(degrees, prog.sigma_blocks);
  add_blocks(degrees, prog.tau_blocks);
  prog.sigma_multipliers = sigma_mult;
  prog.tau_multipliers = tau_mult;

  const std::size_t nb = sdp.block_sizes.size();
  sdp.objective_blocks.resize(nb);
  for (std::size_t b = 0; b < nb; ++b)
    sdp.objective_blocks[b].assign(
        static_cast<std::size_t>(sdp.block_sizes[b]) * sdp.block_sizes[b], 0.0);
  sdp.objective_free.assign(static_cast<std::size_t>(m) + 1, 0.0);

  // objective: tr(q(M)) = sum_j q_j mu_j (mu_0 = 1); lower side maximizes,
  // which the minimizing solver sees with flipped signs.
  for (int j = 0; j <= m; ++j) {
    const double mu_j = (j == 0) ? 1.0 : mv.values[static_cast<std::size_t>(j - 1)];
    sdp.objective_free[static_cast<std::size_t>(j)] = side_sign * mu_j;
  }

  sdp.constraint_blocks.assign(static_cast<std::size_t>(rows), {});
  sdp.constraint_free.assign(static_cast<std::size_t>(rows), {});
  for (int r = 0; r < rows; ++r) {
    sdp.constraint_blocks[static_cast<std::size_t>(r)].resize(nb);
    for (std::size_t b = 0; b < nb; ++b)
      sdp.constraint_blocks[static_cast<std::size_t>(r)][b].assign(
          static_cast<std::size_t>(sdp.block_sizes[b]) * sdp.block_sizes[b], 0.0);
    sdp.constraint_free[static_cast<std::size_t>(r)].assign(
        static_cast<std::size_t>(m) + 1, 0.0);
  }

  // representation rows: for degree j, row j (sigma side) and row m+1+j (tau
  // side) state  q_j - <gram expansion>_j = rhs_j
  const double xp_coeff = (p % 2 == 0) ? 1.0 : -1.0;  // (-x)^p monomial coeff
  for (int j = 0; j <= m; ++j) {
    sdp.constraint_free[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1.0;
    sdp.constraint_free[static_cast<std::size_t>(m + 1 + j)][static_cast<std::size_t>(j)] = 1.0;
    sdp.rhs[static_cast<std::size_t>(j)] = (j == p) ? xp_coeff : 0.0;  // the fixed (-x)^p term
  }

  auto fill_rows = [&](const std::vector<int>& block_ids,
                       const std::vector<Polynomial>& mults, int row_offset) {
    for (std::size_t i = 0; i < block_ids.size(); ++i) {
      if (block_ids[i] < 0) continue;
      const int b = block_ids[i];
      const int n = sdp.block_sizes[static_cast<std::size_t>(b)];
      const auto& g = mults[i].coefficients();
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
          for (std::size_t t = 0; t < g.size(); ++t) {
            const int j = a + c + static_cast<int>(t);
            if (j > m || g[t] == 0.0) continue;
            // q_j - sum(gram terms) = rhs: gram weight enters negated
            sdp.constraint_blocks[static_cast<std::size_t>(row_offset + j)]
                                 [static_cast<std::size_t>(b)]
                                 [static_cast<std::size_t>(a) * n + c] -= g[t];
          }
    }
  };
  fill_rows(prog.sigma_blocks, prog.sigma_multipliers, 0);
  fill_rows(prog.tau_blocks, prog.tau_multipliers, m + 1);
  return prog;
}

namespace {

SosCertificate harvest(const SosProgram& prog, const SdpSolution& sol,
                       const MomentVector& mv) {
  SosCertificate cert;
  cert.side = prog.side;
  cert.p = prog.p;
  cert.m = prog.m;
  cert.ansatz = prog.ansatz;
  cert.status = sol.status;
  cert.gap = sol.gap;
  cert.iterations = sol.iterations;
  cert.q = Polynomial(sol.free_values);
  cert.objective = pair_with_moments(cert.q, mv);
  for (int b : prog.sigma_blocks)
    cert.sigma_grams.push_back(b >= 0 ? sol.blocks[static_cast<std::size_t>(b)]
                                      : std::vector<double>{});
  for (int b : prog.tau_blocks)
    cert.tau_grams.push_back(b >= 0 ? sol.blocks[static_cast<std::size_t>(b)]
                                    : std::vector<double>{});
  return cert;
}

}  // namespace

SosBoundsResult sos_bounds(const MomentVector& mv, int p, int m,
                           SosAnsatz ansatz, const SdpOptions& options) {
  if (m > mv.order())
    fail(Errc::insufficient_moments,
         "sos level " + std::to_string(m) + " needs m moments");

  const SosProgram upper_prog = build_sos_sdp(p, m, BoundSide::upper, ansatz, mv);
  const SdpSolution upper_sol = solve_sdp(upper_prog.sdp, options);
  if (upper_sol.status != SdpStatus::optimal)
    fail(Errc::sdp_stalled,
         "upper sos SDP: " + to_string(upper_sol.status) +
             " (gap " + std::to_string(upper_sol.gap) + ")");

  const SosProgram lower_prog = build_sos_sdp(p, m, BoundSide::lower, ansatz, mv);
  const SdpSolution lower_sol = solve_sdp(lower_prog.sdp, options);
  if (lower_sol.status != SdpStatus::optimal)
    fail(Errc::sdp_stalled,
         "lower sos SDP: " + to_string(lower_sol.status) +
             " (gap " + std::to_string(lower_sol.gap) + ")");

  SosBoundsResult result;
  result.upper = harvest(upper_prog, upper_sol, mv);
  result.lower = harvest(lower_prog, lower_sol, mv);
  result.bounds = make_bounds(result.lower.objective, result.upper.objective, p);
  return result;
}

}  // namespace psdmom
