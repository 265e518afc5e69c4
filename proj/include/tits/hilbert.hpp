#ifndef TITS_HILBERT_HPP
#define TITS_HILBERT_HPP

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "tits/arith.hpp"
#include "tits/square_class.hpp"

namespace tits {

/// A place of Q: the real place (prime == 0) or a finite prime.
/// Orders the real place first, then primes ascending.
struct Place {
  Int prime = 0;

  static Place real() { return Place{0}; }
  static Place finite(Int p) {
    if (!is_prime(p)) throw domain_error("place: " + std::to_string(p) + " is not prime");
    return Place{p};
  }
  bool is_real() const { return prime == 0; }
  std::string str() const { return is_real() ? "oo" : std::to_string(prime); }

  friend bool operator==(const Place&, const Place&) = default;
  friend auto operator<=>(const Place&, const Place&) = default;
};

namespace detail {

// (u-1)/2 mod 2 and (u^2-1)/8 mod 2 for odd u.
inline int eps2(Int u) { return mod(u, 4) == 3 ? 1 : 0; }
inline int omega2(Int u) {
  Int r = mod(u, 8);
  return (r == 3 || r == 5) ? 1 : 0;
}

// Local symbol of square-free integers a, b at p.
inline int hilbert_local(Int a, Int b, Int p) {
  if (p == 0) return (a < 0 && b < 0) ? -1 : 1;
  int alpha = 0, beta = 0;
  if (a % p == 0) {
    alpha = 1;
    a /= p;
  }
  if (b % p == 0) {
    beta = 1;
    b /= p;
  }
  if (p == 2) {
    int e = eps2(a) * eps2(b) + alpha * omega2(b) + beta * omega2(a);
    return e % 2 == 0 ? 1 : -1;
  }
  int s = (alpha * beta * ((p - 1) / 2)) % 2 == 0 ? 1 : -1;
  if (beta == 1) s *= legendre(a, p);
  if (alpha == 1) s *= legendre(b, p);
  return s;
}

}  // namespace detail

/// Local Hilbert symbol (a,b)_v over Q.
inline int hilbert_symbol(const SquareClass& a, const SquareClass& b, const Place& v) {
  if (a.is_real() || b.is_real()) throw capability_error("hilbert_symbol: requires the rational backend");
  return detail::hilbert_local(a.rep(), b.rep(), v.prime);
}

/// Places where (a,b) can be nontrivial: oo, 2, and primes dividing a or b.
inline std::vector<Place> relevant_places(const std::vector<SquareClass>& classes) {
  std::set<Int> primes{2};
  for (const auto& c : classes) {
    if (c.rep() != 1 && c.rep() != -1) {
      for (Int p : prime_divisors(c.rep())) primes.insert(p);
    }
  }
  std::vector<Place> out{Place::real()};
  for (Int p : primes) out.push_back(Place{p});
  return out;
}

/// Real-field symbol: -1 exactly when both signs are negative.
inline int hilbert_symbol_real(const SquareClass& a, const SquareClass& b) {
  return (a.rep() < 0 && b.rep() < 0) ? -1 : 1;
}

}  // namespace tits

#endif  // TITS_HILBERT_HPP
