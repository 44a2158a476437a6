#ifndef PSDMOM_BINOMIAL_HPP
#define PSDMOM_BINOMIAL_HPP

#include "psdmom/errors.hpp"

namespace psdmom {

// Binomial coefficient evaluated in 128-bit integers, exact through n = 64.
inline double exact_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (n > 64) fail(Errc::bad_input, "binomial table limited to n <= 64");
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i);
    acc /= static_cast<unsigned>(i);
  }
  return static_cast<double>(acc);
}

}  // namespace psdmom

#endif
