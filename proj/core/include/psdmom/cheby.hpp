#ifndef PSDMOM_CHEBY_HPP
#define PSDMOM_CHEBY_HPP

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "psdmom/bounds.hpp"
#include "psdmom/poly.hpp"

namespace psdmom {

// Degree-m Chebyshev interpolant of f_p with its sup-norm split. The bounds
// it yields cost one dot product with the moment vector; the polynomial
// itself does not depend on the operator, which is why certificates are
// cached.
struct ChebyshevCertificate {
  int p = 1;
  int m = 0;
  std::vector<double> cheb_coefficients;  // c_0..c_m of eq-style expansion
  Polynomial q;                           // sum c_k t_k - c_0/2, monomial form
  double sup_plus = 0.0;                  // ||(q - f_p)_+||_inf
  double sup_minus = 0.0;                 // ||(q - f_p)_-||_inf
};

// Chebyshev nodes cos(pi (k+1/2)/(m+1)), k = 0..m, strictly decreasing.
std::vector<double> cheb_nodes(int m);

ChebyshevCertificate cheb_interpolant(int p, int m);

// Reference envelope 6 (1 - (1 - 1/m)^p) <= 6 p/m for the best degree-m
// approximation; reported as metadata, never used in place of computed sup
// norms.
double minimax_gap_envelope(int p, int m);

// Disk-backed, write-once-per-key certificate cache. One JSON file per p
// ("cheby_p<p>.json") with a versioned header; an empty directory string
// keeps the cache in memory only.
class ChebyshevCache {
 public:
  explicit ChebyshevCache(std::string directory = "");
  const ChebyshevCertificate& get(int p, int m);
  const std::string& directory() const { return directory_; }

  static std::string serialize_records(
      int p, const std::vector<ChebyshevCertificate>& records);
  static std::vector<ChebyshevCertificate> parse_records(const std::string& text);

 private:
  void load_file(int p);
  void store_file(int p);
  std::string path_for(int p) const;

  std::string directory_;
  std::mutex mutex_;
  std::map<std::pair<int, int>, ChebyshevCertificate> records_;
  std::map<int, bool> loaded_;
};

struct ChebyBoundsResult {
  Bounds bounds;
  ChebyshevCertificate certificate;
};

// Two-sided bounds on d_p(M)^p from the interpolant:
//   lower = tr(q_m(M)) - ||(q_m - f_p)_+||_inf  (clamped at 0 in bounds)
//   upper = tr(q_m(M)) + ||(q_m - f_p)_-||_inf
// Requires moments to order m and a sup-normalized operator (the caller's
// responsibility, flagged in the report).
ChebyBoundsResult cheby_bounds(const MomentVector& mv, int p, int m,
                               ChebyshevCache* cache = nullptr);

}  // namespace psdmom

#endif
