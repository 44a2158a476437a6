#include "psdmom/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psdmom/errors.hpp"

namespace psdmom {

namespace {

void check_size(std::size_t size) {
  if (size < 1) fail(Errc::bad_input, "matrix size must be >= 1");
}

}  // namespace

HermitianMatrix::HermitianMatrix(std::size_t size) : size_(size) {
  check_size(size);
  a_.assign(size * size, Complex(0.0, 0.0));
}

HermitianMatrix HermitianMatrix::identity(std::size_t size) {
  HermitianMatrix m(size);
  for (std::size_t i = 0; i < size; ++i) m.a_[i * size + i] = 1.0;
  return m;
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& entries) {
  HermitianMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    m.a_[i * entries.size() + i] = entries[i];
  return m;
}

HermitianMatrix HermitianMatrix::from_entries(
    std::size_t size, const std::vector<Complex>& entries) {
  check_size(size);
  if (entries.size() != size * size)
    fail(Errc::bad_input, "entry count does not match size*size");

  double max_abs = 0.0;
  for (const auto& e : entries) max_abs = std::max(max_abs, std::abs(e));

  double max_asym = 0.0;
  std::vector<Complex> sym(size * size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const Complex aij = entries[i * size + j];
      const Complex aji = std::conj(entries[j * size + i]);
      max_asym = std::max(max_asym, std::abs(aij - aji));
      sym[i * size + j] = 0.5 * (aij + aji);
    }
    sym[i * size + i] = Complex(sym[i * size + i].real(), 0.0);
  }
  if (max_asym > 1e-8 * std::max(1.0, max_abs))
    fail(Errc::bad_input,
         "input is not Hermitian (asymmetry " + std::to_string(max_asym) + ")");
  return HermitianMatrix(size, std::move(sym));
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < size_; ++i) t += a_[i * size_ + i].real();
  return t;
}

double HermitianMatrix::normalized_trace() const {
  return trace() / static_cast<double>(size_);
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& e : a_) s += std::norm(e);
  return std::sqrt(s);
}

double HermitianMatrix::max_abs_entry() const {
  double m = 0.0;
  for (const auto& e : a_) m = std::max(m, std::abs(e));
  return m;
}

HermitianMatrix HermitianMatrix::scaled(double factor) const {
  std::vector<Complex> out(a_);
  for (auto& e : out) e *= factor;
  return HermitianMatrix(size_, std::move(out));
}

HermitianMatrix HermitianMatrix::plus(const HermitianMatrix& other) const {
  if (other.size_ != size_) fail(Errc::bad_input, "size mismatch in plus()");
  std::vector<Complex> out(a_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.a_[i];
  return HermitianMatrix(size_, std::move(out));
}

HermitianMatrix HermitianMatrix::plus_scaled_identity(double shift) const {
  std::vector<Complex> out(a_);
  for (std::size_t i = 0; i < size_; ++i) out[i * size_ + i] += shift;
  return HermitianMatrix(size_, std::move(out));
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) fail(Errc::bad_input, "empty spectrum");
  std::stable_sort(values_.begin(), values_.end(), std::greater<double>());
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b,
                     std::size_t dense_cap) {
  const std::size_t sa = a.size(), sb = b.size();
  if (sa > dense_cap / sb)
    fail(Errc::dense_too_large, "kron result exceeds dense cap " +
                                    std::to_string(dense_cap));
  const std::size_t s = sa * sb;
  std::vector<Complex> out(s * s);
  for (std::size_t i1 = 0; i1 < sa; ++i1)
    for (std::size_t i2 = 0; i2 < sb; ++i2)
      for (std::size_t j1 = 0; j1 < sa; ++j1)
        for (std::size_t j2 = 0; j2 < sb; ++j2)
          out[(i1 * sb + i2) * s + (j1 * sb + j2)] = a(i1, j1) * b(i2, j2);
  return HermitianMatrix::from_entries(s, out);
}

namespace {

double offdiag_frobenius(std::size_t n, const std::vector<Complex>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a[i * n + j]);
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing the (p,q) entry.
void jacobi_rotate(std::size_t n, std::vector<Complex>& a, std::size_t p,
                   std::size_t q) {
  const Complex apq = a[p * n + q];
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;

  const double app = a[p * n + p].real();
  const double aqq = a[q * n + q].real();
  const double tau = (app - aqq) / (2.0 * mag);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // U has columns p,q: (c, s*conj(phase)) and (-s*phase, c).
  for (std::size_t r = 0; r < n; ++r) {
    const Complex arp = a[r * n + p];
    const Complex arq = a[r * n + q];
    a[r * n + p] = c * arp + s * std::conj(phase) * arq;
    a[r * n + q] = -s * phase * arp + c * arq;
  }
  for (std::size_t col = 0; col < n; ++col) {
    const Complex apc = a[p * n + col];
    const Complex aqc = a[q * n + col];
    a[p * n + col] = c * apc + s * phase * aqc;
    a[q * n + col] = -s * std::conj(phase) * apc + c * aqc;
  }
  a[p * n + q] = 0.0;
  a[q * n + p] = 0.0;
  a[p * n + p] = Complex(a[p * n + p].real(), 0.0);
  a[q * n + q] = Complex(a[q * n + q].real(), 0.0);
}

std::vector<double> jacobi_eigenvalues(std::size_t n, std::vector<Complex> a) {
  double norm = 0.0;
  for (const auto& e : a) norm += std::norm(e);
  norm = std::sqrt(norm);
  const double tol = 1e-12 * norm;

  if (n == 1) return {a[0].real()};
  constexpr int kSweepCap = 100;
  for (int sweep = 0; sweep < kSweepCap; ++sweep) {
    if (offdiag_frobenius(n, a) <= tol || norm == 0.0) {
      std::vector<double> vals(n);
      for (std::size_t i = 0; i < n; ++i) vals[i] = a[i * n + i].real();
      return vals;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(n, a, p, q);
  }
  if (offdiag_frobenius(n, a) <= tol) {
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = a[i * n + i].real();
    return vals;
  }
  fail(Errc::eig_no_convergence,
       "Jacobi sweeps exhausted before reaching tolerance");
}

}  // namespace

Spectrum eig_hermitian(const HermitianMatrix& a) {
  return Spectrum(jacobi_eigenvalues(a.size(), a.entries()));
}

double schatten_norm(const Spectrum& spec, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : spec.values()) m = std::max(m, std::abs(v));
    return m;
  }
  if (p < 1.0) fail(Errc::bad_input, "Schatten norm requires p >= 1");
  double s = 0.0;
  for (double v : spec.values()) s += std::pow(std::abs(v), p);
  return std::pow(s / static_cast<double>(spec.size()), 1.0 / p);
}

double distance_oracle(const Spectrum& spec, int p) {
  if (p < 1) fail(Errc::bad_input, "distance oracle requires integer p >= 1");
  double s = 0.0;
  bool any_negative = false;
  for (double v : spec.values()) {
    if (v < 0.0) {
      any_negative = true;
      s += std::pow(-v, static_cast<double>(p));
    }
  }
  if (!any_negative) return 0.0;
  return std::pow(s / static_cast<double>(spec.size()), 1.0 / p);
}

Spectrum quantile_discretize(
    const std::vector<std::pair<double, double>>& weights, int t) {
  if (t < 1) fail(Errc::bad_input, "quantile count must be >= 1");
  if (weights.empty()) fail(Errc::not_a_probability_measure, "no atoms");
  double mass = 0.0;
  for (const auto& [atom, w] : weights) {
    if (w < -1e-12) fail(Errc::not_a_probability_measure, "negative mass");
    if (atom < -1.0 - 1e-12 || atom > 1.0 + 1e-12)
      fail(Errc::bad_input, "atom outside [-1,1]");
    mass += w;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    fail(Errc::not_a_probability_measure,
         "masses sum to " + std::to_string(mass));

  std::vector<std::pair<double, double>> sorted(weights);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<double> out(static_cast<std::size_t>(t));
  double cum = 0.0;
  std::size_t j = 0;
  for (int i = 1; i <= t; ++i) {
    const double target = static_cast<double>(i) / static_cast<double>(t);
    while (cum < target - 1e-12 && j < sorted.size()) {
      cum += sorted[j].second;
      ++j;
    }
    // j > 0 is guaranteed: total mass is 1 >= target within tolerance.
    out[static_cast<std::size_t>(i - 1)] = sorted[j == 0 ? 0 : j - 1].first;
  }
  return Spectrum(std::move(out));
}

std::vector<double> symmetric_eigenvalues(std::size_t n, const double* a) {
  std::vector<Complex> c(n * n);
  for (std::size_t i = 0; i < n * n; ++i) c[i] = a[i];
  auto vals = jacobi_eigenvalues(n, std::move(c));
  std::stable_sort(vals.begin(), vals.end(), std::greater<double>());
  return vals;
}

void complex_matmul(std::size_t n, const Complex* a, const Complex* b,
                    Complex* out) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = Complex(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a[i * n + k];
      if (aik == Complex(0.0, 0.0)) continue;
      const Complex* brow = b + k * n;
      Complex* orow = out + i * n;
      for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
    }
  }
}

}  // namespace psdmom
