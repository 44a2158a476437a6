#ifndef PSDMOM_HERMITIAN_HPP
#define PSDMOM_HERMITIAN_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace psdmom {

using Complex = std::complex<double>;

// Dense complex Hermitian matrix, row-major. Construction symmetrizes the
// input as (A + A*)/2 and rejects it when the correction exceeds 1e-8
// relative to the largest entry, so genuinely non-Hermitian data surfaces as
// an error instead of being silently averaged away. Diagonal imaginary parts
// are exactly zero after construction.
class HermitianMatrix {
 public:
  static constexpr std::size_t kDefaultDenseCap = 4096;

  explicit HermitianMatrix(std::size_t size);  // zero matrix
  static HermitianMatrix identity(std::size_t size);
  static HermitianMatrix diagonal(const std::vector<double>& entries);
  // Arbitrary square complex data, row-major, size*size entries.
  static HermitianMatrix from_entries(std::size_t size,
                                      const std::vector<Complex>& entries);

  std::size_t size() const { return size_; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return a_[i * size_ + j];
  }
  const std::vector<Complex>& entries() const { return a_; }

  double trace() const;
  double normalized_trace() const;  // trace / size
  double frobenius_norm() const;
  double max_abs_entry() const;

  HermitianMatrix scaled(double factor) const;
  HermitianMatrix plus(const HermitianMatrix& other) const;
  HermitianMatrix plus_scaled_identity(double shift) const;

 private:
  HermitianMatrix(std::size_t size, std::vector<Complex> entries)
      : size_(size), a_(std::move(entries)) {}
  std::size_t size_;
  std::vector<Complex> a_;
};

// Eigenvalues of a Hermitian matrix, sorted non-increasing.
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> values);
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return values_.back(); }
  double max() const { return values_.front(); }

 private:
  std::vector<double> values_;
};

// Kronecker product with lexicographic index flattening. Throws
// "dense-too-large" when the result would exceed dense_cap.
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b,
                     std::size_t dense_cap = HermitianMatrix::kDefaultDenseCap);

// Cyclic complex Jacobi eigensolver. Converges when the off-diagonal
// Frobenius norm drops below 1e-12 * ||A||_F; throws "eig-no-convergence"
// after 100 sweeps.
Spectrum eig_hermitian(const HermitianMatrix& a);

// Normalized Schatten p-norm, (s^-1 sum |lambda_i|^p)^(1/p); p may be
// +infinity for the operator norm. Normalization makes ||I||_p = 1.
double schatten_norm(const Spectrum& spec, double p);

// Distance to the psd cone in normalized Schatten p-norm:
// (s^-1 sum_{lambda<0} |lambda|^p)^(1/p). Zero exactly when min(spec) >= 0.
double distance_oracle(const Spectrum& spec, int p);

// Replaces an atomic probability measure on [-1,1] by t uniform atoms at its
// right t-quantiles a_i = sup{ r : mu([r,1]) >= i/t }. The output's
// cumulative distribution dominates the input's, so expectations of monotone
// nonincreasing functions never decrease.
Spectrum quantile_discretize(const std::vector<std::pair<double, double>>& weights,
                             int t);

// Plumbing shared with the solver cores: eigenvalues (non-increasing) of a
// dense real symmetric matrix, and a raw complex dense multiply.
std::vector<double> symmetric_eigenvalues(std::size_t n, const double* a);
void complex_matmul(std::size_t n, const Complex* a, const Complex* b,
                    Complex* out);

}  // namespace psdmom

#endif
