#ifndef TITS_QZ_HPP
#define TITS_QZ_HPP

#include <compare>
#include <numeric>
#include <string>

#include "tits/arith.hpp"

namespace tits {

/// An element of Q/Z stored as a reduced fraction num/den with 0 <= num < den.
///
/// This is the value group of local Hasse invariants. The zero element is 0/1.
class QZ {
 public:
  constexpr QZ() = default;

  QZ(Int num, Int den) {
    if (den == 0) throw domain_error("QZ: zero denominator");
    if (den < 0) {
      num = checked_neg(num);
      den = checked_neg(den);
    }
    num = mod(num, den);
    Int g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  static QZ half() { return QZ(1, 2); }

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  /// Order of the element in Q/Z.
  Int order() const { return den_; }

  friend QZ operator+(QZ a, QZ b) {
    Int g = std::gcd(a.den_, b.den_);
    Int den = checked_mul(a.den_ / g, b.den_);
    Int num = checked_add(checked_mul(a.num_, den / a.den_), checked_mul(b.num_, den / b.den_));
    return QZ(num, den);
  }
  QZ operator-() const { return QZ(den_ - num_, den_); }
  friend QZ operator-(QZ a, QZ b) { return a + (-b); }

  /// Scalar multiple n*x.
  QZ times(Int n) const {
    Int r = mod(n, den_);
    return QZ(static_cast<Int>(mulmod(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(num_),
                                      static_cast<std::uint64_t>(den_))),
              den_);
  }

  /// Component in the p-primary subgroup Q_p/Z_p.
  QZ p_part(Int p) const {
    if (is_zero()) return {};
    return QZ(p_primary_residue(num_, den_, p), den_);
  }

  std::string str() const {
    if (num_ == 0) return "0";
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "a/b", "a" or "0".
  static QZ parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        Int a = std::stoll(s, &used);
        if (used != s.size()) throw schema_error("bad fraction: " + s);
        return QZ(a, 1);
      }
      std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
      Int a = std::stoll(ns, &used);
      if (used != ns.size()) throw schema_error("bad fraction: " + s);
      Int b = std::stoll(ds, &used);
      if (used != ds.size()) throw schema_error("bad fraction: " + s);
      if (b == 0) throw schema_error("bad fraction (zero denominator): " + s);
      return QZ(a, b);
    } catch (const std::invalid_argument&) {
      throw schema_error("bad fraction: " + s);
    } catch (const std::out_of_range&) {
      throw schema_error("fraction out of range: " + s);
    }
  }

  friend bool operator==(const QZ&, const QZ&) = default;
  friend auto operator<=>(const QZ&, const QZ&) = default;

 private:
  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace tits

#endif  // TITS_QZ_HPP
