#ifndef PSDMOM_BOUNDS_HPP
#define PSDMOM_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace psdmom {

// A validated bracket for d_p(M)^p. raw_lower/raw_upper are the method
// outputs before clamping; lower_p/upper_p clamp at zero (d_p >= 0 always);
// lower/upper are the p-th roots. Detection decisions use raw_lower.
struct Bounds {
  double lower_p = 0.0;
  double upper_p = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double raw_lower = 0.0;
  double raw_upper = 0.0;
};

inline Bounds make_bounds(double raw_lower, double raw_upper, int p) {
  Bounds b;
  b.raw_lower = raw_lower;
  b.raw_upper = raw_upper;
  b.lower_p = std::max(0.0, raw_lower);
  b.upper_p = std::max(b.lower_p, raw_upper);
  b.lower = std::pow(b.lower_p, 1.0 / p);
  b.upper = std::pow(b.upper_p, 1.0 / p);
  return b;
}

// One certificate polynomial per side, in monomial coefficients, plus the
// scalars a verifier needs to replay the side's inequality.
struct SideCertificate {
  std::vector<double> q;
  double objective = 0.0;
  double slack = 0.0;  // ||(q - f_p)_-||_inf for upper sides, _+ for lower
};

// The CLI's output record.
struct BoundsReport {
  std::string method;
  int p = 1;
  int m = 1;
  double scale = 1.0;
  Bounds bounds;
  bool not_psd = false;
  bool psd_certified = false;
  SideCertificate lower_certificate;
  SideCertificate upper_certificate;
  // Solver diagnostics in fixed insertion order so serialization is stable.
  std::vector<std::pair<std::string, double>> diagnostics;
  std::vector<std::pair<std::string, std::string>> labels;
  double wall_time_ms = 0.0;

  void diag(const std::string& key, double value) {
    diagnostics.emplace_back(key, value);
  }
  void label(const std::string& key, const std::string& value) {
    labels.emplace_back(key, value);
  }
};

inline constexpr double kDetectionTolerance = 1e-9;

}  // namespace psdmom

#endif
