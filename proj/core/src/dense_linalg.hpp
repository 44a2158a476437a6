#ifndef PSDMOM_DENSE_LINALG_HPP
#define PSDMOM_DENSE_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace psdmom::detail {

// LU with partial pivoting on a dense row-major matrix.
struct LuFactors {
  int n = 0;
  std::vector<double> lu;
  std::vector<int> perm;
  bool ok = false;
};

inline LuFactors lu_factor(int n, std::vector<double> a) {
  LuFactors f;
  f.n = n;
  f.lu = std::move(a);
  f.perm.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) f.perm[static_cast<std::size_t>(i)] = i;
  auto& lu = f.lu;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu[static_cast<std::size_t>(k) * n + k]);
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(lu[static_cast<std::size_t>(i) * n + k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0 || !std::isfinite(best)) return f;  // singular
    if (piv != k) {
      for (int j = 0; j < n; ++j)
        std::swap(lu[static_cast<std::size_t>(piv) * n + j],
                  lu[static_cast<std::size_t>(k) * n + j]);
      std::swap(f.perm[static_cast<std::size_t>(piv)],
                f.perm[static_cast<std::size_t>(k)]);
    }
    const double inv = 1.0 / lu[static_cast<std::size_t>(k) * n + k];
    for (int i = k + 1; i < n; ++i) {
      const double l = lu[static_cast<std::size_t>(i) * n + k] * inv;
      lu[static_cast<std::size_t>(i) * n + k] = l;
      if (l != 0.0)
        for (int j = k + 1; j < n; ++j)
          lu[static_cast<std::size_t>(i) * n + j] -=
              l * lu[static_cast<std::size_t>(k) * n + j];
    }
  }
  f.ok = true;
  return f;
}

inline void lu_solve(const LuFactors& f, const double* rhs, double* x) {
  const int n = f.n;
  for (int i = 0; i < n; ++i) x[i] = rhs[f.perm[static_cast<std::size_t>(i)]];
  for (int i = 1; i < n; ++i) {
    double acc = x[i];
    for (int j = 0; j < i; ++j) acc -= f.lu[static_cast<std::size_t>(i) * n + j] * x[j];
    x[i] = acc;
  }
  for (int i = n - 1; i >= 0; --i) {
    double acc = x[i];
    for (int j = i + 1; j < n; ++j) acc -= f.lu[static_cast<std::size_t>(i) * n + j] * x[j];
    x[i] = acc / f.lu[static_cast<std::size_t>(i) * n + i];
  }
}

// In-place inverse; false when singular.
inline bool invert(int n, std::vector<double>& a) {
  LuFactors f = lu_factor(n, a);
  if (!f.ok) return false;
  std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
  std::vector<double> col(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::fill(rhs.begin(), rhs.end(), 0.0);
    rhs[static_cast<std::size_t>(j)] = 1.0;
    lu_solve(f, rhs.data(), col.data());
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i) * n + j] = col[i];
  }
  return true;
}

// In-place lower Cholesky of a symmetric matrix; false when not pd.
inline bool cholesky(int n, std::vector<double>& a) {
  for (int j = 0; j < n; ++j) {
    double d = a[static_cast<std::size_t>(j) * n + j];
    for (int k = 0; k < j; ++k) {
      const double l = a[static_cast<std::size_t>(j) * n + k];
      d -= l * l;
    }
    if (!(d > 0.0)) return false;
    const double root = std::sqrt(d);
    a[static_cast<std::size_t>(j) * n + j] = root;
    for (int i = j + 1; i < n; ++i) {
      double v = a[static_cast<std::size_t>(i) * n + j];
      for (int k = 0; k < j; ++k)
        v -= a[static_cast<std::size_t>(i) * n + k] *
             a[static_cast<std::size_t>(j) * n + k];
      a[static_cast<std::size_t>(i) * n + j] = v / root;
    }
    for (int k = j + 1; k < n; ++k) a[static_cast<std::size_t>(j) * n + k] = 0.0;
  }
  return true;
}

// Solves L y = b in place given lower-triangular L.
inline void forward_subst(int n, const std::vector<double>& lower, double* b) {
  for (int i = 0; i < n; ++i) {
    double acc = b[i];
    for (int j = 0; j < i; ++j) acc -= lower[static_cast<std::size_t>(i) * n + j] * b[j];
    b[i] = acc / lower[static_cast<std::size_t>(i) * n + i];
  }
}

// Solves L^T y = b in place given lower-triangular L.
inline void backward_subst_t(int n, const std::vector<double>& lower, double* b) {
  for (int i = n - 1; i >= 0; --i) {
    double acc = b[i];
    for (int j = i + 1; j < n; ++j) acc -= lower[static_cast<std::size_t>(j) * n + i] * b[j];
    b[i] = acc / lower[static_cast<std::size_t>(i) * n + i];
  }
}

}  // namespace psdmom::detail

#endif
