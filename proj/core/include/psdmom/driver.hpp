#ifndef PSDMOM_DRIVER_HPP
#define PSDMOM_DRIVER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psdmom/bounds.hpp"
#include "psdmom/cheby.hpp"
#include "psdmom/handelman.hpp"
#include "psdmom/moments.hpp"
#include "psdmom/sos.hpp"

namespace psdmom {

enum class Method { sos, handelman, cheby };

Method parse_method(const std::string& name);
std::string to_string(Method method);

struct ScalePolicy {
  enum class Kind { automatic, none, fixed };
  Kind kind = Kind::automatic;
  double value = 1.0;

  static ScalePolicy automatic() { return {Kind::automatic, 1.0}; }
  static ScalePolicy none() { return {Kind::none, 1.0}; }
  static ScalePolicy fixed(double c) { return {Kind::fixed, c}; }
  static ScalePolicy parse(const std::string& text);
};

struct BoundOptions {
  Method method = Method::sos;
  int p = 2;
  int m = 2;
  ScalePolicy scale = ScalePolicy::automatic();
  SosAnsatz ansatz = SosAnsatz::full4;
  ChebyshevCache* cache = nullptr;
};

// Rescales per policy (the automatic policy applies the even-moment scale
// suggestion with p' = max(2, 2*floor(m/4)) and needs the operator size),
// dispatches to the requested method, and reports bounds in the scaled
// operator's units with the applied scale recorded. d_p of the original
// operator equals scale * reported d_p.
BoundsReport bound_from_moments(const MomentVector& mv,
                                std::optional<double> operator_size,
                                const BoundOptions& options);

// Positivity certification via the shift M_eps = M - s^(1/p) eps I. The
// input moments must be sup-normalized; the shifted operator is internally
// rescaled by 1 + s^(1/p) eps before the upper bound U on d_p(M_eps)^p is
// formed, and psd_certified is set when U <= eps^p.
BoundsReport certify_psd(const MomentVector& mv, double epsilon,
                         double operator_size, const BoundOptions& options);

// Free-spectrahedron membership: builds the n=2 operator sum A_i x B_i and
// behaves as bound; not_psd = true certifies (A_1..A_d) outside FS(B_1..B_d).
BoundsReport spectrahedron_check(const std::vector<HermitianMatrix>& a,
                                 const std::vector<HermitianMatrix>& b,
                                 const BoundOptions& options,
                                 const MomentOptions& moment_options = {});

struct BenchResult {
  double epsilon = 0.0;
  int count = 0;
  Method method = Method::sos;
  int p = 2;
  int max_order = 0;
  std::uint64_t seed = 0;
  std::optional<int> detection_order;  // smallest m with raw lower > 1e-9
  std::string note;                    // e.g. "none <= 32 (degree ceiling)"
  std::vector<std::pair<int, double>> raw_lower_trace;
};

// Table-style detection experiment: count eigenvalues uniform in [-eps, 1]
// from the seeded generator, moments to max_order, then an upward sweep in m
// per method until the raw lower bound crosses the detection tolerance.
BenchResult bench_table3(double epsilon, int count, Method method, int p,
                         int max_order, std::uint64_t seed,
                         ChebyshevCache* cache = nullptr);

struct PlotRow {
  int p = 1;
  int m = 0;
  double supnorm = 0.0;  // ||q_m - f_p||_inf
};

std::vector<PlotRow> plotdata_fig3(const std::vector<int>& ps, int m_from,
                                   int m_to, ChebyshevCache* cache = nullptr);

}  // namespace psdmom

#endif
