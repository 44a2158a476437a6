#include "psdmom/moments.hpp"

#include <cmath>
#include <string>

#include "psdmom/binomial.hpp"
#include "psdmom/errors.hpp"

namespace psdmom {

namespace {

// Deterministic pairwise (tree) reduction keyed to the insertion index: the
// grouping depends only on how many terms have been added, never on their
// values or on any thread schedule.
class PairwiseAccumulator {
 public:
  void add(Complex v) {
    std::uint64_t idx = count_++;
    std::size_t level = 0;
    while (idx & 1u) {
      v += levels_[level];
      idx >>= 1;
      ++level;
    }
    if (level == levels_.size())
      levels_.push_back(v);
    else
      levels_[level] = v;
  }

  Complex total() const {
    Complex s(0.0, 0.0);
    std::uint64_t bits = count_;
    for (std::size_t level = 0; bits != 0; ++level, bits >>= 1)
      if (bits & 1u) s = levels_[level] + s;
    return s;
  }

  void reset() {
    levels_.clear();
    count_ = 0;
  }

 private:
  std::vector<Complex> levels_;
  std::uint64_t count_ = 0;
};

Complex buffer_normalized_trace(const std::vector<Complex>& a, std::size_t n) {
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) t += a[i * n + i];
  return t / static_cast<double>(n);
}

// d^k, or nullopt on overflow past cap.
std::optional<std::uint64_t> checked_pow(std::uint64_t d, int k,
                                         std::uint64_t cap) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (d != 0 && r > cap / d) return std::nullopt;
    r *= d;
    if (r > cap) return std::nullopt;
  }
  return r;
}

}  // namespace

MomentVector make_moment_vector(std::vector<double> values, double scale,
                                std::string source, bool sup_normalized) {
  if (values.empty()) fail(Errc::bad_input, "moment vector must have m >= 1");
  if (!(scale > 0.0)) fail(Errc::bad_input, "moment scale must be positive");
  for (double v : values)
    if (!std::isfinite(v)) fail(Errc::bad_input, "non-finite moment");
  if (values.size() >= 2) {
    const double mu1 = values[0], mu2 = values[1];
    if (mu2 < mu1 * mu1 - 1e-9 * std::max(1.0, mu1 * mu1))
      fail(Errc::bad_input, "mu_2 < mu_1^2: not a real spectral measure");
  }
  double max_abs = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    max_abs = std::max(max_abs, std::abs(values[k]));
    if ((k + 1) % 2 == 0 && values[k] < -1e-12 * std::max(1.0, max_abs))
      fail(Errc::bad_input, "negative even moment mu_" + std::to_string(k + 1));
  }
  if (sup_normalized && max_abs > 1.0 + 1e-9)
    fail(Errc::bad_input,
         "moments exceed 1 in magnitude; the claimed normalization "
         "||M/scale||_inf <= 1 cannot hold");
  MomentVector mv;
  mv.values = std::move(values);
  mv.scale = scale;
  mv.source = std::move(source);
  mv.sup_normalized = sup_normalized;
  return mv;
}

std::vector<std::size_t> TensorSumOperator::site_sizes() const {
  std::vector<std::size_t> out;
  out.reserve(sites.size());
  for (const auto& site : sites) out.push_back(site[0].size());
  return out;
}

double TensorSumOperator::log_dimension() const {
  double s = 0.0;
  for (const auto& site : sites) s += std::log(static_cast<double>(site[0].size()));
  return s;
}

std::optional<std::uint64_t> TensorSumOperator::dimension() const {
  std::uint64_t dim = 1;
  for (const auto& site : sites) {
    const std::uint64_t s = site[0].size();
    if (dim > UINT64_MAX / s) return std::nullopt;
    dim *= s;
  }
  return dim;
}

void TensorSumOperator::validate() const {
  if (sites.empty()) fail(Errc::bad_input, "tensor-sum operator needs n >= 1");
  const std::size_t d = sites[0].size();
  if (d == 0) fail(Errc::bad_input, "tensor-sum operator needs d >= 1");
  for (const auto& site : sites) {
    if (site.size() != d)
      fail(Errc::bad_input, "all sites must hold the same number of summands");
    for (const auto& m : site)
      if (m.size() != site[0].size())
        fail(Errc::bad_input, "matrices within a site must share one size");
  }
}

void MpoRingOperator::validate() const {
  if (sites < 1) fail(Errc::bad_input, "MPO ring needs n >= 1");
  const std::size_t d = blocks.size();
  if (d == 0) fail(Errc::bad_input, "MPO ring needs d >= 1");
  for (const auto& row : blocks) {
    if (row.size() != d) fail(Errc::bad_input, "MPO blocks must form a d x d array");
    for (const auto& m : row)
      if (m.size() != blocks[0][0].size())
        fail(Errc::bad_input, "MPO blocks must share one size");
  }
}

double moments_tensor_sum_single_order(const TensorSumOperator& op, int k,
                                       TensorMomentWorkspace& ws,
                                       const MomentOptions& opts) {
  const int n = op.factors();
  const int d = op.summands();
  if (k < 1) fail(Errc::bad_input, "moment order must be >= 1");
  const auto tuples = checked_pow(static_cast<std::uint64_t>(d), k, opts.work_cap);
  if (!tuples)
    fail(Errc::work_cap_exceeded,
         "d^k tuple count exceeds work cap at order " + std::to_string(k));

  const auto sizes = op.site_sizes();
  ws.tuple.assign(static_cast<std::size_t>(k), 0);
  ws.stacks.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ws.stacks[i].resize(static_cast<std::size_t>(k));
    for (auto& buf : ws.stacks[i]) buf.resize(sizes[i] * sizes[i]);
  }

  // stacks[i][t] = A_{j_0}^[i] ... A_{j_t}^[i]; rebuilding from level t after
  // a lexicographic step costs one multiply per remaining level.
  auto rebuild = [&](int from) {
    for (int i = 0; i < n; ++i) {
      const std::size_t s = sizes[i];
      for (int t = from; t < k; ++t) {
        const auto& factor = op.sites[i][static_cast<std::size_t>(ws.tuple[t])];
        if (t == 0)
          ws.stacks[i][0] = factor.entries();
        else
          complex_matmul(s, ws.stacks[i][t - 1].data(), factor.entries().data(),
                         ws.stacks[i][t].data());
      }
    }
  };

  PairwiseAccumulator sum;
  rebuild(0);
  for (std::uint64_t idx = 0;; ++idx) {
    Complex term(1.0, 0.0);
    for (int i = 0; i < n; ++i)
      term *= buffer_normalized_trace(ws.stacks[i][k - 1], sizes[i]);
    sum.add(term);

    int t = k - 1;
    while (t >= 0 && ws.tuple[t] == d - 1) --t;
    if (t < 0) break;
    ++ws.tuple[t];
    for (int r = t + 1; r < k; ++r) ws.tuple[r] = 0;
    rebuild(t);
  }
  return sum.total().real();
}

MomentVector moments_tensor_sum(const TensorSumOperator& op, int m,
                                const MomentOptions& opts) {
  op.validate();
  if (m < 1) fail(Errc::bad_input, "moment order must be >= 1");
  TensorMomentWorkspace ws;
  std::vector<double> values(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k)
    values[k - 1] = moments_tensor_sum_single_order(op, k, ws, opts);
  return make_moment_vector(std::move(values), 1.0, "tensor_sum");
}

namespace {

// Replica transfer matrix T_k[(j^1..j^k),(l^1..l^k)] = tr(A_{j^1 l^1} ...
// A_{j^k l^k}) / s, filled in lexicographic order of the interleaved digits
// (j^1, l^1, j^2, l^2, ...) so factor-level prefix products are reused.
std::vector<Complex> mpo_transfer_matrix(const MpoRingOperator& op, int k) {
  const int d = op.bond_labels();
  const std::size_t s = op.block_size();
  const std::uint64_t dim = [&] {
    std::uint64_t r = 1;
    for (int i = 0; i < k; ++i) r *= static_cast<std::uint64_t>(d);
    return r;
  }();

  std::vector<Complex> transfer(dim * dim);
  std::vector<int> digits(static_cast<std::size_t>(2 * k), 0);
  std::vector<std::vector<Complex>> stack(static_cast<std::size_t>(k));
  for (auto& buf : stack) buf.resize(s * s);

  auto rebuild = [&](int from_factor) {
    for (int t = from_factor; t < k; ++t) {
      const auto& factor =
          op.blocks[static_cast<std::size_t>(digits[2 * t])]
                   [static_cast<std::size_t>(digits[2 * t + 1])];
      if (t == 0)
        stack[0] = factor.entries();
      else
        complex_matmul(s, stack[t - 1].data(), factor.entries().data(),
                       stack[t].data());
    }
  };

  rebuild(0);
  for (;;) {
    std::uint64_t row = 0, col = 0;
    for (int t = 0; t < k; ++t) {
      row = row * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(digits[2 * t]);
      col = col * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(digits[2 * t + 1]);
    }
    transfer[row * dim + col] = buffer_normalized_trace(stack[k - 1], s);

    int g = 2 * k - 1;
    while (g >= 0 && digits[g] == d - 1) --g;
    if (g < 0) break;
    ++digits[g];
    for (int r = g + 1; r < 2 * k; ++r) digits[r] = 0;
    rebuild(g / 2);
  }
  return transfer;
}

std::vector<Complex> complex_matpow(std::vector<Complex> base, std::size_t n,
                                    int exp) {
  std::vector<Complex> result(n * n, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) result[i * n + i] = 1.0;
  std::vector<Complex> tmp(n * n);
  while (exp > 0) {
    if (exp & 1) {
      complex_matmul(n, result.data(), base.data(), tmp.data());
      result.swap(tmp);
    }
    exp >>= 1;
    if (exp) {
      complex_matmul(n, base.data(), base.data(), tmp.data());
      base.swap(tmp);
    }
  }
  return result;
}

}  // namespace

MomentVector moments_mpo_ring(const MpoRingOperator& op, int m,
                              const MomentOptions& opts) {
  op.validate();
  if (m < 1) fail(Errc::bad_input, "moment order must be >= 1");
  const int d = op.bond_labels();
  std::vector<double> values(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    if (!checked_pow(static_cast<std::uint64_t>(d), 2 * k, opts.work_cap))
      fail(Errc::work_cap_exceeded,
           "d^(2k) transfer entries exceed work cap at order " + std::to_string(k));
    auto transfer = mpo_transfer_matrix(op, k);
    std::uint64_t dim = 1;
    for (int i = 0; i < k; ++i) dim *= static_cast<std::uint64_t>(d);
    const auto powered = complex_matpow(std::move(transfer), dim, op.sites);
    // Ring trace over replica indices is a plain sum: the physical traces in
    // T_k are already normalized and the bond space carries no normalization.
    Complex t(0.0, 0.0);
    for (std::uint64_t i = 0; i < dim; ++i) t += powered[i * dim + i];
    values[k - 1] = t.real();
  }
  return make_moment_vector(std::move(values), 1.0, "mpo_ring");
}

MomentVector moments_dense(const DenseOperator& op, int m) {
  if (m < 1) fail(Errc::bad_input, "moment order must be >= 1");
  const std::size_t s = op.matrix.size();
  std::vector<double> values(static_cast<std::size_t>(m));
  std::vector<Complex> cur(op.matrix.entries());
  std::vector<Complex> tmp(s * s);
  for (int k = 1; k <= m; ++k) {
    values[k - 1] = buffer_normalized_trace(cur, s).real();
    if (k < m) {
      complex_matmul(s, cur.data(), op.matrix.entries().data(), tmp.data());
      cur.swap(tmp);
    }
  }
  return make_moment_vector(std::move(values), 1.0, "dense");
}

MomentVector moments_spectrum(const SpectralOperator& op, int m) {
  if (m < 1) fail(Errc::bad_input, "moment order must be >= 1");
  const auto& lam = op.spectrum.values();
  std::vector<double> values(static_cast<std::size_t>(m), 0.0);
  std::vector<double> powers(lam.size(), 1.0);
  for (int k = 1; k <= m; ++k) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      powers[i] *= lam[i];
      acc += powers[i];
    }
    values[k - 1] = static_cast<double>(acc / static_cast<long double>(lam.size()));
  }
  return make_moment_vector(std::move(values), 1.0, "spectrum");
}

MomentVector rescale_moments(const MomentVector& mv, double c) {
  if (!(c > 0.0)) fail(Errc::bad_input, "rescale factor must be positive");
  std::vector<double> values(mv.values);
  double ck = 1.0;
  for (auto& v : values) {
    ck *= c;
    v /= ck;
  }
  return make_moment_vector(std::move(values), mv.scale * c, mv.source,
                            mv.sup_normalized);
}

MomentVector shift_moments(const MomentVector& mv, double t) {
  const int m = mv.order();
  std::vector<double> out(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    long double acc = 0.0L;
    for (int j = 0; j <= k; ++j) {
      const double mu_j = (j == 0) ? 1.0 : mv.values[j - 1];
      acc += static_cast<long double>(exact_binomial(k, j)) *
             std::pow(-t, k - j) * mu_j;
    }
    out[k - 1] = static_cast<double>(acc);
  }
  // The shifted matrix no longer carries the sup-norm claim.
  return make_moment_vector(std::move(out), mv.scale, mv.source, false);
}

double suggested_scale(const MomentVector& mv, double operator_size, int p) {
  if (p < 2 || p % 2 != 0)
    fail(Errc::bad_input, "scale suggestion requires even p >= 2");
  if (p > mv.order())
    fail(Errc::insufficient_moments, "scale suggestion needs mu_p, p <= m");
  if (!(operator_size >= 1.0)) fail(Errc::bad_input, "operator size must be >= 1");
  const double mu_p = mv.values[p - 1];
  if (mu_p < -1e-12) fail(Errc::invalid_even_moment, "negative even moment");
  if (mu_p <= 0.0) return 1.0;
  return std::pow(operator_size, 1.0 / p) * std::pow(mu_p, 1.0 / p);
}

HermitianMatrix materialize_dense(const TensorSumOperator& op,
                                  std::size_t dense_cap) {
  op.validate();
  const auto dim = op.dimension();
  if (!dim || *dim > dense_cap)
    fail(Errc::dense_too_large, "tensor-sum logical dimension exceeds dense cap");
  const int n = op.factors();
  const int d = op.summands();
  HermitianMatrix acc(static_cast<std::size_t>(*dim));
  for (int j = 0; j < d; ++j) {
    HermitianMatrix chain = op.sites[0][static_cast<std::size_t>(j)];
    for (int i = 1; i < n; ++i)
      chain = kron(chain, op.sites[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], dense_cap);
    acc = acc.plus(chain);
  }
  return acc;
}

HermitianMatrix materialize_dense(const MpoRingOperator& op,
                                  std::size_t dense_cap) {
  op.validate();
  const int n = op.sites;
  const int d = op.bond_labels();
  const std::size_t s = op.block_size();
  std::uint64_t dim = 1;
  for (int i = 0; i < n; ++i) {
    if (dim > dense_cap / s) fail(Errc::dense_too_large, "MPO logical dimension exceeds dense cap");
    dim *= s;
  }

  HermitianMatrix acc(static_cast<std::size_t>(dim));
  std::vector<int> j(static_cast<std::size_t>(n), 0);
  for (;;) {
    HermitianMatrix chain = op.blocks[static_cast<std::size_t>(j[0])]
                                     [static_cast<std::size_t>(j[n > 1 ? 1 : 0])];
    for (int l = 1; l < n; ++l) {
      const int jl = j[static_cast<std::size_t>(l)];
      const int jnext = j[static_cast<std::size_t>((l + 1) % n)];
      chain = kron(chain, op.blocks[static_cast<std::size_t>(jl)][static_cast<std::size_t>(jnext)], dense_cap);
    }
    acc = acc.plus(chain);
    int t = n - 1;
    while (t >= 0 && j[static_cast<std::size_t>(t)] == d - 1) --t;
    if (t < 0) break;
    ++j[static_cast<std::size_t>(t)];
    for (int r = t + 1; r < n; ++r) j[static_cast<std::size_t>(r)] = 0;
  }
  return acc;
}

}  // namespace psdmom
