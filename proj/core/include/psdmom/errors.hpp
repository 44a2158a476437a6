#ifndef PSDMOM_ERRORS_HPP
#define PSDMOM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace psdmom {

// Stable failure tokens. Exit-code categories: 1 usage/format, 2 numerical
// failure, 3 work cap exceeded.
enum class Errc {
  bad_input,
  cannot_scale,
  insufficient_moments,
  invalid_even_moment,
  not_a_probability_measure,
  eig_no_convergence,
  cheb_degree_ceiling,
  supnorm_failed,
  lp_stalled,
  sdp_stalled,
  handelman_infeasible_bug,
  work_cap_exceeded,
  dense_too_large,
};

const char* errc_token(Errc code);
int errc_exit_code(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_token(code)) + ": " + detail),
        code_(code) {}
  Errc code() const { return code_; }
  const char* token() const { return errc_token(code_); }
  int exit_code() const { return errc_exit_code(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) {
  throw Error(code, detail);
}

inline const char* errc_token(Errc code) {
  switch (code) {
    case Errc::bad_input: return "bad-input";
    case Errc::cannot_scale: return "cannot-scale";
    case Errc::insufficient_moments: return "insufficient-moments";
    case Errc::invalid_even_moment: return "invalid-even-moment";
    case Errc::not_a_probability_measure: return "not-a-probability-measure";
    case Errc::eig_no_convergence: return "eig-no-convergence";
    case Errc::cheb_degree_ceiling: return "cheb-degree-ceiling";
    case Errc::supnorm_failed: return "supnorm-failed";
    case Errc::lp_stalled: return "lp-stalled";
    case Errc::sdp_stalled: return "sdp-stalled";
    case Errc::handelman_infeasible_bug: return "handelman-infeasible-bug";
    case Errc::work_cap_exceeded: return "work-cap-exceeded";
    case Errc::dense_too_large: return "dense-too-large";
  }
  return "unknown-error";
}

inline int errc_exit_code(Errc code) {
  switch (code) {
    case Errc::bad_input:
    case Errc::cannot_scale:
    case Errc::insufficient_moments:
    case Errc::invalid_even_moment:
    case Errc::not_a_probability_measure:
      return 1;
    case Errc::eig_no_convergence:
    case Errc::cheb_degree_ceiling:
    case Errc::supnorm_failed:
    case Errc::lp_stalled:
    case Errc::sdp_stalled:
    case Errc::handelman_infeasible_bug:
      return 2;
    case Errc::work_cap_exceeded:
    case Errc::dense_too_large:
      return 3;
  }
  return 1;
}

}  // namespace psdmom

#endif
