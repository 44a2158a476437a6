#include "psdmom/driver.hpp"

#include <chrono>
#include <cmath>

#include "psdmom/errors.hpp"
#include "psdmom/rng.hpp"

namespace psdmom {

Method parse_method(const std::string& name) {
  if (name == "sos") return Method::sos;
  if (name == "handelman") return Method::handelman;
  if (name == "cheby") return Method::cheby;
  fail(Errc::bad_input, "unknown method '" + name + "'");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::sos: return "sos";
    case Method::handelman: return "handelman";
    case Method::cheby: return "cheby";
  }
  return "unknown";
}

ScalePolicy ScalePolicy::parse(const std::string& text) {
  if (text == "auto") return automatic();
  if (text == "none") return none();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && v > 0.0) return fixed(v);
  } catch (const std::exception&) {
  }
  fail(Errc::bad_input, "scale must be 'auto', 'none', or a positive number");
}

namespace {

int auto_scale_exponent(int m) {
  // largest even integer <= m/2, floored at 2 (needs mu_2)
  return std::max(2, 2 * (m / 4));
}

struct Scaled {
  MomentVector mv;
  double applied = 1.0;
};

Scaled apply_scale_policy(const MomentVector& mv, std::optional<double> size,
                          const ScalePolicy& policy, int m) {
  Scaled out{mv, 1.0};
  switch (policy.kind) {
    case ScalePolicy::Kind::none:
      out.mv.sup_normalized = true;
      out.mv = make_moment_vector(out.mv.values, out.mv.scale, out.mv.source, true);
      return out;
    case ScalePolicy::Kind::fixed:
      out.applied = policy.value;
      out.mv = rescale_moments(mv, policy.value);
      out.mv = make_moment_vector(out.mv.values, out.mv.scale, out.mv.source, true);
      return out;
    case ScalePolicy::Kind::automatic: {
      if (!size)
        fail(Errc::cannot_scale,
             "automatic scaling needs the operator size; supply it or use "
             "--scale none|C");
      if (m < 2)
        fail(Errc::cannot_scale, "automatic scaling needs m >= 2 (uses mu_2)");
      const int pprime = auto_scale_exponent(m);
      const double c = suggested_scale(mv, *size, pprime);
      out.applied = c;
      out.mv = rescale_moments(mv, c);
      out.mv = make_moment_vector(out.mv.values, out.mv.scale, out.mv.source, true);
      return out;
    }
  }
  fail(Errc::bad_input, "unreachable scale policy");
}

struct MethodRun {
  Bounds bounds;
  SideCertificate lower_cert;
  SideCertificate upper_cert;
  std::vector<std::pair<std::string, double>> diagnostics;
  std::vector<std::pair<std::string, std::string>> labels;
};

MethodRun run_method(const MomentVector& mv, const BoundOptions& opt) {
  MethodRun run;
  switch (opt.method) {
    case Method::cheby: {
      const auto r = cheby_bounds(mv, opt.p, opt.m, opt.cache);
      run.bounds = r.bounds;
      run.lower_cert.q = r.certificate.q.coefficients();
      run.lower_cert.objective = r.bounds.raw_lower;
      run.lower_cert.slack = r.certificate.sup_plus;
      run.upper_cert.q = r.certificate.q.coefficients();
      run.upper_cert.objective = r.bounds.raw_upper;
      run.upper_cert.slack = r.certificate.sup_minus;
      run.diagnostics.emplace_back("supPlus", r.certificate.sup_plus);
      run.diagnostics.emplace_back("supMinus", r.certificate.sup_minus);
      run.diagnostics.emplace_back("gapEnvelope",
                                   opt.m >= 1 ? minimax_gap_envelope(opt.p, opt.m) : 6.0);
      return run;
    }
    case Method::handelman: {
      const auto r = handelman_bounds(mv, opt.p, opt.m);
      run.bounds = r.bounds;
      run.lower_cert.q = r.lower.q.coefficients();
      run.lower_cert.objective = r.lower.objective;
      run.upper_cert.q = r.upper.q.coefficients();
      run.upper_cert.objective = r.upper.objective;
      run.diagnostics.emplace_back("lpIterationsLower",
                                   static_cast<double>(r.lower.iterations));
      run.diagnostics.emplace_back("lpIterationsUpper",
                                   static_cast<double>(r.upper.iterations));
      return run;
    }
    case Method::sos: {
      const auto r = sos_bounds(mv, opt.p, opt.m, opt.ansatz);
      run.bounds = r.bounds;
      run.lower_cert.q = r.lower.q.coefficients();
      run.lower_cert.objective = r.lower.objective;
      run.upper_cert.q = r.upper.q.coefficients();
      run.upper_cert.objective = r.upper.objective;
      run.labels.emplace_back("ansatz", opt.ansatz == SosAnsatz::full4
                                            ? "full4"
                                            : "reduced2");
      run.diagnostics.emplace_back("sdpGapLower", r.lower.gap);
      run.diagnostics.emplace_back("sdpGapUpper", r.upper.gap);
      run.diagnostics.emplace_back("sdpIterationsLower",
                                   static_cast<double>(r.lower.iterations));
      run.diagnostics.emplace_back("sdpIterationsUpper",
                                   static_cast<double>(r.upper.iterations));
      return run;
    }
  }
  fail(Errc::bad_input, "unreachable method");
}

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

BoundsReport bound_from_moments(const MomentVector& mv,
                                std::optional<double> operator_size,
                                const BoundOptions& opt) {
  WallTimer timer;
  if (opt.m < 1) fail(Errc::bad_input, "order must be >= 1");
  if (opt.m > mv.order())
    fail(Errc::insufficient_moments,
         "order " + std::to_string(opt.m) + " exceeds available moments " +
             std::to_string(mv.order()));

  const Scaled scaled = apply_scale_policy(mv, operator_size, opt.scale, opt.m);
  MethodRun run = run_method(scaled.mv, opt);

  BoundsReport report;
  report.method = to_string(opt.method);
  report.p = opt.p;
  report.m = opt.m;
  report.scale = scaled.applied;
  report.bounds = run.bounds;
  report.not_psd = run.bounds.raw_lower > kDetectionTolerance;
  report.psd_certified = false;
  report.lower_certificate = std::move(run.lower_cert);
  report.upper_certificate = std::move(run.upper_cert);
  report.diagnostics = std::move(run.diagnostics);
  report.labels = std::move(run.labels);
  report.label("normalized", scaled.mv.sup_normalized ? "yes" : "no");
  report.diag("descaledLower", scaled.applied * run.bounds.lower);
  report.diag("descaledUpper", scaled.applied * run.bounds.upper);
  report.wall_time_ms = timer.ms();
  return report;
}

BoundsReport certify_psd(const MomentVector& mv, double epsilon,
                         double operator_size, const BoundOptions& opt) {
  WallTimer timer;
  if (!(epsilon > 0.0)) fail(Errc::bad_input, "epsilon must be positive");
  if (!mv.sup_normalized && [&] {
        double mx = 0.0;
        for (double v : mv.values) mx = std::max(mx, std::abs(v));
        return mx > 1.0 + 1e-9;
      }())
    fail(Errc::cannot_scale,
         "certify-psd needs sup-normalized moments (||M||_inf <= 1)");
  if (opt.m > mv.order())
    fail(Errc::insufficient_moments, "order exceeds available moments");

  // M_eps = M - s^(1/p) eps I; ||M_eps||_inf <= 1 + shift, so divide by
  // c = 1 + shift before bounding and undo the homogeneity afterwards.
  const double shift = std::pow(operator_size, 1.0 / opt.p) * epsilon;
  const MomentVector shifted = shift_moments(mv, shift);
  const double c = 1.0 + shift;
  MomentVector scaled = rescale_moments(shifted, c);
  scaled = make_moment_vector(scaled.values, scaled.scale, scaled.source, true);

  BoundOptions inner = opt;
  inner.scale = ScalePolicy::none();
  MethodRun run = run_method(scaled, inner);

  const double upper_eps = std::pow(c, opt.p) * run.bounds.raw_upper;
  const double eps_p = std::pow(epsilon, opt.p);

  BoundsReport report;
  report.method = to_string(opt.method);
  report.p = opt.p;
  report.m = opt.m;
  report.scale = c;
  report.bounds = run.bounds;
  report.not_psd = false;  // this command only produces upper-side evidence
  report.psd_certified = upper_eps <= eps_p;
  report.lower_certificate = std::move(run.lower_cert);
  report.upper_certificate = std::move(run.upper_cert);
  report.diagnostics = std::move(run.diagnostics);
  report.labels = std::move(run.labels);
  report.diag("epsilon", epsilon);
  report.diag("shift", shift);
  report.diag("shiftedUpperBound", upper_eps);
  report.diag("epsilonPower", eps_p);
  report.wall_time_ms = timer.ms();
  return report;
}

BoundsReport spectrahedron_check(const std::vector<HermitianMatrix>& a,
                                 const std::vector<HermitianMatrix>& b,
                                 const BoundOptions& opt,
                                 const MomentOptions& moment_options) {
  if (a.empty() || a.size() != b.size())
    fail(Errc::bad_input, "spectrahedron check needs equal-length tuples");
  TensorSumOperator op;
  op.sites.resize(2);
  op.sites[0] = a;
  op.sites[1] = b;
  op.validate();
  const MomentVector mv = moments_tensor_sum(op, opt.m, moment_options);
  const double size = static_cast<double>(a[0].size()) *
                      static_cast<double>(b[0].size());
  BoundsReport report = bound_from_moments(mv, size, opt);
  report.label("query", "spectrahedron");
  return report;
}

BenchResult bench_table3(double epsilon, int count, Method method, int p,
                         int max_order, std::uint64_t seed,
                         ChebyshevCache* cache) {
  if (!(epsilon > 0.0)) fail(Errc::bad_input, "epsilon must be positive");
  if (count < 1 || max_order < 1) fail(Errc::bad_input, "count and order must be >= 1");

  BenchResult result;
  result.epsilon = epsilon;
  result.count = count;
  result.method = method;
  result.p = p;
  result.max_order = max_order;
  result.seed = seed;

  Xoshiro256StarStar rng(seed);
  std::vector<double> eigenvalues(static_cast<std::size_t>(count));
  for (auto& v : eigenvalues) v = rng.uniform_in(-epsilon, 1.0);
  const SpectralOperator op{Spectrum(std::move(eigenvalues))};
  MomentVector mv = moments_spectrum(op, max_order);
  mv = make_moment_vector(mv.values, mv.scale, mv.source, true);

  const int ceiling = std::min(max_order, kChebDegreeCeiling);
  const int m_hi = (method == Method::cheby) ? ceiling : max_order;
  for (int m = std::max(1, p); m <= m_hi; ++m) {
    MomentVector head = make_moment_vector(
        std::vector<double>(mv.values.begin(), mv.values.begin() + m), 1.0,
        mv.source, true);
    double raw_lower = 0.0;
    switch (method) {
      case Method::cheby:
        raw_lower = cheby_bounds(head, p, m, cache).bounds.raw_lower;
        break;
      case Method::handelman:
        raw_lower = handelman_bounds(head, p, m).bounds.raw_lower;
        break;
      case Method::sos:
        raw_lower = sos_bounds(head, p, m).bounds.raw_lower;
        break;
    }
    result.raw_lower_trace.emplace_back(m, raw_lower);
    if (raw_lower > kDetectionTolerance) {
      result.detection_order = m;
      return result;
    }
  }
  if (method == Method::cheby && max_order > ceiling)
    result.note = "none <= " + std::to_string(ceiling) + " (degree ceiling)";
  else
    result.note = "none <= " + std::to_string(m_hi);
  return result;
}

std::vector<PlotRow> plotdata_fig3(const std::vector<int>& ps, int m_from,
                                   int m_to, ChebyshevCache* cache) {
  if (m_from < 0 || m_to < m_from) fail(Errc::bad_input, "bad order range");
  if (m_to > kChebDegreeCeiling)
    fail(Errc::cheb_degree_ceiling, "order range exceeds degree ceiling");
  std::vector<PlotRow> rows;
  for (int p : ps)
    for (int m = m_from; m <= m_to; ++m) {
      const ChebyshevCertificate cert =
          cache ? cache->get(p, m) : cheb_interpolant(p, m);
      rows.push_back({p, m, std::max(cert.sup_plus, cert.sup_minus)});
    }
  return rows;
}

}  // namespace psdmom
