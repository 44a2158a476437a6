#ifndef PSDMOM_MOMENTS_HPP
#define PSDMOM_MOMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psdmom/hermitian.hpp"

namespace psdmom {

// The first m normalized power moments tr(M^k)/s of a Hermitian operator,
// with mu_0 == 1 implicit. `scale` records that the values are moments of
// M/scale; `sup_normalized` records the claim ||M/scale||_inf <= 1, which is
// what every bounding method requires of its input.
struct MomentVector {
  std::vector<double> values;
  double scale = 1.0;
  std::string source;
  bool sup_normalized = false;

  int order() const { return static_cast<int>(values.size()); }
};

// Validates the spectral-measure sanity conditions (mu_2 >= mu_1^2 - 1e-9,
// even moments nonnegative, |mu_k| <= 1 + 1e-9 when sup_normalized).
MomentVector make_moment_vector(std::vector<double> values, double scale = 1.0,
                                std::string source = "",
                                bool sup_normalized = false);

// M = sum_{j=1}^d A_j^[1] x ... x A_j^[n]; sites[i][j] holds A_j^[i+1].
struct TensorSumOperator {
  std::vector<std::vector<HermitianMatrix>> sites;

  int factors() const { return static_cast<int>(sites.size()); }
  int summands() const {
    return sites.empty() ? 0 : static_cast<int>(sites[0].size());
  }
  std::vector<std::size_t> site_sizes() const;
  double log_dimension() const;                 // ln(prod s_i)
  std::optional<std::uint64_t> dimension() const;  // prod s_i when it fits
  void validate() const;
};

// Translation-invariant matrix product operator on a ring of n sites:
// M = sum_{j_1..j_n} A_{j_1,j_2} x A_{j_2,j_3} x ... x A_{j_n,j_1}.
// blocks[j][j'] holds A_{j,j'}, all of one size s.
struct MpoRingOperator {
  int sites = 1;
  std::vector<std::vector<HermitianMatrix>> blocks;

  int bond_labels() const { return static_cast<int>(blocks.size()); }
  std::size_t block_size() const { return blocks[0][0].size(); }
  void validate() const;
};

struct DenseOperator {
  HermitianMatrix matrix;
};

struct SpectralOperator {
  Spectrum spectrum;
};

struct MomentOptions {
  std::uint64_t work_cap = std::uint64_t{1} << 24;
  std::size_t dense_cap = HermitianMatrix::kDefaultDenseCap;
};

// Moments through the structured pathways. The tensor-sum engine enumerates
// the d^k summand tuples per order with a memoized prefix-product stack and a
// fixed pairwise reduction tree keyed to the tuple index; the MPO engine
// contracts the d^k x d^k replica transfer matrix T_k and takes the plain
// trace of T_k^n by binary exponentiation. Both throw "work-cap-exceeded"
// when the tuple count (d^k, resp. d^{2k}) would exceed the cap.
MomentVector moments_tensor_sum(const TensorSumOperator& op, int m,
                                const MomentOptions& opts = {});
MomentVector moments_mpo_ring(const MpoRingOperator& op, int m,
                              const MomentOptions& opts = {});
MomentVector moments_dense(const DenseOperator& op, int m);
MomentVector moments_spectrum(const SpectralOperator& op, int m);

// Single-order tensor-sum moment with a caller-held workspace; this is the
// kernel the cost-model benchmarks time.
struct TensorMomentWorkspace {
  std::vector<int> tuple;
  std::vector<std::vector<std::vector<Complex>>> stacks;  // [site][level]
  std::vector<Complex> reduction;
};
double moments_tensor_sum_single_order(const TensorSumOperator& op, int k,
                                       TensorMomentWorkspace& ws,
                                       const MomentOptions& opts = {});

// Moments of M/c from moments of M (values[k] /= c^k).
MomentVector rescale_moments(const MomentVector& mv, double c);

// Moments of M - tI via the binomial expansion.
MomentVector shift_moments(const MomentVector& mv, double t);

// Remark-style scale suggestion c = s^(1/p) * mu_p^(1/p) for even p, which
// guarantees ||M/c||_inf <= 1. Returns 1 for the exactly-zero moment (the
// zero matrix needs no scaling).
double suggested_scale(const MomentVector& mv, double operator_size, int p);

// Dense materializations (oracle pathway); guarded by the dense cap.
HermitianMatrix materialize_dense(const TensorSumOperator& op,
                                  std::size_t dense_cap = HermitianMatrix::kDefaultDenseCap);
HermitianMatrix materialize_dense(const MpoRingOperator& op,
                                  std::size_t dense_cap = HermitianMatrix::kDefaultDenseCap);

}  // namespace psdmom

#endif
