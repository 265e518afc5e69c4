#ifndef TITS_GAUSSIAN_HPP
#define TITS_GAUSSIAN_HPP

#include <vector>

#include "tits/arith.hpp"

namespace tits {

/// Coefficients of the Gaussian binomial (n choose d)_t, lowest degree first.
/// Degree is d(n-d); the value at t = 1 is the ordinary binomial.
inline std::vector<Int> gaussian_binomial(Int n, Int d) {
  if (n < 0 || d < 0 || d > n) throw domain_error("gaussian_binomial: need 0 <= d <= n");
  // row[k] holds (m choose k)_t while m runs from 0 to n.
  std::vector<std::vector<Int>> row(static_cast<std::size_t>(d + 1));
  row[0] = {1};
  for (Int m = 1; m <= n; ++m) {
    for (Int k = std::min(m, d); k >= 1; --k) {
      // (m choose k) = (m-1 choose k-1) + t^k (m-1 choose k)
      const auto& lower = row[static_cast<std::size_t>(k - 1)];
      const auto& same = row[static_cast<std::size_t>(k)];
      std::vector<Int> next(static_cast<std::size_t>(k * (m - k) + 1), 0);
      for (std::size_t j = 0; j < lower.size(); ++j) next[j] = checked_add(next[j], lower[j]);
      for (std::size_t j = 0; j < same.size(); ++j) {
        next[j + static_cast<std::size_t>(k)] = checked_add(next[j + static_cast<std::size_t>(k)], same[j]);
      }
      row[static_cast<std::size_t>(k)] = std::move(next);
    }
  }
  return row[static_cast<std::size_t>(d)];
}

inline Int gauss_coeff(Int n, Int d, Int j) {
  auto g = gaussian_binomial(n, d);
  return (j < 0 || j >= static_cast<Int>(g.size())) ? 0 : g[static_cast<std::size_t>(j)];
}

inline Int binomial(Int n, Int d) {
  if (d < 0 || d > n) return 0;
  d = std::min(d, n - d);
  Int r = 1;
  for (Int i = 1; i <= d; ++i) r = checked_mul(r, n - d + i) / i;
  return r;
}

}  // namespace tits

#endif  // TITS_GAUSSIAN_HPP
