#ifndef TITS_SQUARE_CLASS_HPP
#define TITS_SQUARE_CLASS_HPP

#include <compare>
#include <cstdlib>
#include <string>

#include "tits/arith.hpp"
#include "tits/field.hpp"

namespace tits {

/// Element of k^× / (k^×)^2 for k = Q (signed square-free integer) or
/// k = R (a sign).
class SquareClass {
 public:
  SquareClass() = default;

  /// Square class of num/den in the given field.
  static SquareClass of(Int num, Int den, const Field& field) {
    if (!field.supports_square_classes()) {
      throw capability_error("square classes are unavailable over " + field.name());
    }
    if (num == 0 || den == 0) throw domain_error("square class of zero is undefined");
    if (field.is_real()) return SquareClass((num < 0) != (den < 0) ? -1 : 1, true);
    return SquareClass(square_free_part(num), false).mul(SquareClass(square_free_part(den), false));
  }
  static SquareClass of(Int x, const Field& field) { return of(x, 1, field); }
  static SquareClass rational(Int x) { return of(x, 1, Field::rational()); }

  /// Signed square-free part of a nonzero integer.
  static Int square_free_part(Int x) {
    if (x == 0) throw domain_error("square class of zero is undefined");
    Int r = x < 0 ? -1 : 1;
    for (auto [p, e] : factorize(x)) {
      if (e % 2 == 1) r = checked_mul(r, p);
    }
    return r;
  }

  Int rep() const { return rep_; }
  bool is_real() const { return real_; }
  bool is_one() const { return rep_ == 1; }
  Field field() const { return real_ ? Field::real() : Field::rational(); }

  SquareClass mul(const SquareClass& o) const {
    if (real_ != o.real_) throw capability_error("square class backend mismatch");
    if (real_) return SquareClass(rep_ * o.rep_, true);
    Int g = std::gcd(rep_, o.rep_);
    return SquareClass(checked_mul(rep_ / g, o.rep_ / g), false);
  }
  friend SquareClass operator*(const SquareClass& a, const SquareClass& b) { return a.mul(b); }
  SquareClass neg() const { return mul(real_ ? SquareClass(-1, true) : SquareClass(-1, false)); }

  std::string str() const { return std::to_string(rep_); }

  friend bool operator==(const SquareClass&, const SquareClass&) = default;
  friend auto operator<=>(const SquareClass&, const SquareClass&) = default;

 private:
  SquareClass(Int rep, bool real) : rep_(rep), real_(real) {}
  Int rep_ = 1;
  bool real_ = false;
};

/// Unique square-free representative of num/den times squares.
inline SquareClass squareclass_normalize(Int num, Int den, const Field& field) {
  return SquareClass::of(num, den, field);
}

}  // namespace tits

#endif  // TITS_SQUARE_CLASS_HPP
