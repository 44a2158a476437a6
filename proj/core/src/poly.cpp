#include "psdmom/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psdmom/binomial.hpp"
#include "psdmom/errors.hpp"

namespace psdmom {

Polynomial::Polynomial(std::vector<double> coefficients)
    : c_(std::move(coefficients)) {
  for (double v : c_)
    if (!std::isfinite(v)) fail(Errc::bad_input, "non-finite coefficient");
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

Polynomial Polynomial::constant(double c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int degree, double coefficient) {
  if (degree < 0) fail(Errc::bad_input, "monomial degree must be >= 0");
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coefficient;
  return Polynomial(std::move(c));
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> out(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  return *this + o.scaled(-1.0);
}

Polynomial Polynomial::scaled(double factor) const {
  std::vector<double> out(c_);
  for (auto& v : out) v *= factor;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::times(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial();
  std::vector<double> out(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<double> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    out[i - 1] = static_cast<double>(i) * c_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::reflected() const {
  std::vector<double> out(c_);
  for (std::size_t i = 1; i < out.size(); i += 2) out[i] = -out[i];
  return Polynomial(std::move(out));
}

double eval_fp(int p, double x) {
  if (p < 1) fail(Errc::bad_input, "f_p requires p >= 1");
  if (x >= 0.0) return 0.0;
  return std::pow(-x, static_cast<double>(p));
}

double pair_with_moments(const Polynomial& q, const MomentVector& mv) {
  if (q.degree() > mv.order())
    fail(Errc::insufficient_moments,
         "deg(q) = " + std::to_string(q.degree()) + " exceeds available order " +
             std::to_string(mv.order()));
  const auto& c = q.coefficients();
  if (c.empty()) return 0.0;
  double acc = c[0];
  for (std::size_t j = 1; j < c.size(); ++j) acc += c[j] * mv.values[j - 1];
  return acc;
}

Polynomial handelman_product(int alpha1, int alpha2, HandelmanVariant variant) {
  if (alpha1 < 0 || alpha2 < 0 || alpha1 + alpha2 > 64)
    fail(Errc::bad_input, "handelman exponent pair outside |alpha| <= 64");
  std::vector<double> c(static_cast<std::size_t>(alpha1 + alpha2) + 1, 0.0);
  const double lead = (variant == HandelmanVariant::reflected && alpha1 % 2 != 0)
                          ? -1.0
                          : 1.0;
  for (int i = 0; i <= alpha2; ++i) {
    // (1 -+ x)^a2 term of degree i
    double term = exact_binomial(alpha2, i);
    if (variant == HandelmanVariant::positive_x && i % 2 != 0) term = -term;
    c[static_cast<std::size_t>(alpha1 + i)] = lead * term;
  }
  return Polynomial(std::move(c));
}

Polynomial cheb_to_monomial(const std::vector<double>& cheb_coefficients) {
  if (static_cast<int>(cheb_coefficients.size()) - 1 > kChebDegreeCeiling)
    fail(Errc::cheb_degree_ceiling,
         "Chebyshev conversion validated only to degree " +
             std::to_string(kChebDegreeCeiling));
  if (cheb_coefficients.empty()) return Polynomial();

  std::vector<double> out(cheb_coefficients.size(), 0.0);
  std::vector<double> prev{1.0};        // t_0
  std::vector<double> cur{0.0, 1.0};    // t_1
  out[0] += cheb_coefficients[0];
  if (cheb_coefficients.size() > 1) out[1] += cheb_coefficients[1];
  for (std::size_t k = 2; k < cheb_coefficients.size(); ++k) {
    std::vector<double> next(k + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    for (std::size_t i = 0; i <= k; ++i) out[i] += cheb_coefficients[k] * next[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return Polynomial(std::move(out));
}

namespace {

constexpr int kSeedIntervals = 512;

// Sign-change roots of deriv inside (lo, hi), polished by bisection + Newton.
// Even-multiplicity roots carry no sign change and are not local extrema of
// the antiderivative, so skipping them is safe for sup-norm purposes.
void collect_extremum_candidates(const Polynomial& piece, double lo, double hi,
                                 std::vector<double>& candidates) {
  const Polynomial deriv = piece.derivative();
  if (deriv.degree() < 1) return;  // constant derivative: no interior extrema

  const double mid = 0.5 * (lo + hi);
  const double rad = 0.5 * (hi - lo);
  double xs_prev = lo;
  double fs_prev = deriv(lo);
  for (int i = 1; i <= kSeedIntervals; ++i) {
    // Chebyshev-distributed seeds, densest near the endpoints.
    const double theta = M_PI * static_cast<double>(kSeedIntervals - i) /
                         static_cast<double>(kSeedIntervals);
    const double x = mid + rad * std::cos(theta);
    const double fx = deriv(x);
    if (!std::isfinite(fx)) fail(Errc::supnorm_failed, "non-finite derivative value");
    if ((fs_prev < 0.0 && fx > 0.0) || (fs_prev > 0.0 && fx < 0.0)) {
      double a = xs_prev, b = x, fa = fs_prev;
      for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
        const double c = 0.5 * (a + b);
        const double fc = deriv(c);
        if (fc == 0.0) {
          a = b = c;
          break;
        }
        if ((fa < 0.0) == (fc < 0.0)) {
          a = c;
          fa = fc;
        } else {
          b = c;
        }
      }
      double root = 0.5 * (a + b);
      const Polynomial second = deriv.derivative();
      for (int it = 0; it < 3; ++it) {
        const double d1 = deriv(root);
        const double d2 = second(root);
        if (d2 == 0.0) break;
        const double step = d1 / d2;
        const double next = root - step;
        if (next <= lo || next >= hi) break;
        root = next;
      }
      candidates.push_back(root);
    } else if (fx == 0.0) {
      candidates.push_back(x);
    }
    xs_prev = x;
    fs_prev = fx;
  }
}

}  // namespace

SupNormReport sup_norm_vs_fp(const Polynomial& q, int p) {
  if (q.degree() < 0 && p < 1) fail(Errc::bad_input, "empty polynomial");
  if (p < 1) fail(Errc::bad_input, "f_p requires p >= 1");
  for (double c : q.coefficients())
    if (!std::isfinite(c)) fail(Errc::supnorm_failed, "non-finite coefficient");

  // piece on [-1,0]: q(x) - (-x)^p; piece on [0,1]: q(x)
  const Polynomial neg_piece =
      q - Polynomial::monomial(p, (p % 2 == 0) ? 1.0 : -1.0);
  const Polynomial pos_piece = q;

  SupNormReport report;
  auto consider = [&report](double x, double value) {
    if (value > report.plus) {
      report.plus = value;
      report.argmax_plus = x;
    }
    if (-value > report.minus) {
      report.minus = -value;
      report.argmax_minus = x;
    }
  };

  std::vector<double> candidates;
  candidates.reserve(64);
  for (int side = 0; side < 2; ++side) {
    const double lo = (side == 0) ? -1.0 : 0.0;
    const double hi = (side == 0) ? 0.0 : 1.0;
    const Polynomial& piece = (side == 0) ? neg_piece : pos_piece;
    candidates.clear();
    candidates.push_back(lo);
    candidates.push_back(hi);
    collect_extremum_candidates(piece, lo, hi, candidates);
    for (double x : candidates) {
      const double xi = std::clamp(x, lo, hi);
      consider(xi, piece(xi));
    }
    // Seed-grid values as extra candidates; any point value only tightens
    // the reported suprema toward the true ones.
    for (int i = 0; i <= kSeedIntervals; ++i) {
      const double theta = M_PI * static_cast<double>(kSeedIntervals - i) /
                           static_cast<double>(kSeedIntervals);
      const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(theta);
      consider(x, piece(x));
    }
  }
  report.total = std::max(report.plus, report.minus);
  return report;
}

}  // namespace psdmom
