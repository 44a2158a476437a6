#ifndef PSDMOM_SOS_HPP
#define PSDMOM_SOS_HPP

#include <vector>

#include "psdmom/bounds.hpp"
#include "psdmom/handelman.hpp"
#include "psdmom/poly.hpp"
#include "psdmom/sdp.hpp"

namespace psdmom {

enum class SosAnsatz { full4, reduced2 };

// One-sided sum-of-squares program at level m. q's coefficients enter as
// free scalars constrained by BOTH Positivstellensatz representations, so
// each identity stays independently checkable in the certificate:
//
//   upper:  q = (-x)^p + s0~ - s1~ x + s2~ (1+x) - s3~ x(1+x)
//             = t0 + t1 x + t2 (1-x) + t3 x(1-x)
//   lower:  q = (-x)^p - s0~ + s1~ x - s2~ (1+x) + s3~ x(1+x)
//             = -t0 - t1 x - t2 (1-x) - t3 x(1-x)
//
// with every summand of degree <= m. The reduced2 ansatz keeps only the
// {1, x(1-x)} multipliers with deg(s0) <= m, deg(s1) <= m-2, trading the
// exact level-m value for a bound between levels m and m-1.
struct SosProgram {
  int p = 1;
  int m = 1;
  BoundSide side = BoundSide::upper;
  SosAnsatz ansatz = SosAnsatz::full4;
  SemidefiniteProgram sdp;
  // block index ranges: first sigma blocks, then tau blocks
  std::vector<int> sigma_blocks;
  std::vector<int> tau_blocks;
  std::vector<Polynomial> sigma_multipliers;  // with the side's signs applied
  std::vector<Polynomial> tau_multipliers;
};

SosProgram build_sos_sdp(int p, int m, BoundSide side, SosAnsatz ansatz,
                         const MomentVector& mv);

struct SosCertificate {
  BoundSide side = BoundSide::upper;
  int p = 1;
  int m = 1;
  SosAnsatz ansatz = SosAnsatz::full4;
  Polynomial q;
  std::vector<std::vector<double>> sigma_grams;
  std::vector<std::vector<double>> tau_grams;
  double objective = 0.0;
  SdpStatus status = SdpStatus::stalled;
  double gap = 0.0;
  int iterations = 0;
};

struct SosBoundsResult {
  Bounds bounds;
  SosCertificate lower;
  SosCertificate upper;
};

// (d±_{p,m})^p within solver tolerance (full4); reduced2 upper lies between
// the level-m and level-(m-1) values. A stalled solve surfaces as
// "sdp-stalled" with diagnostics, never as a silently degraded bound.
SosBoundsResult sos_bounds(const MomentVector& mv, int p, int m,
                           SosAnsatz ansatz = SosAnsatz::full4,
                           const SdpOptions& options = {});

}  // namespace psdmom

#endif
