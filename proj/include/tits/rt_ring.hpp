#ifndef TITS_RT_RING_HPP
#define TITS_RT_RING_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tits/brauer_class.hpp"
#include "tits/csa.hpp"

namespace tits {

/// Formal Z-combination of Brauer classes, an element of the group ring
/// Z[Br(k)] read modulo [k] + [B⊗C] - [B] - [C] for coprime indexes.
///
/// The stored terms are a representative; use normalize()/rt_equal() to
/// compare in the quotient.
class RTElement {
 public:
  using Terms = std::map<BrauerClass, Int>;

  explicit RTElement(Field field) : field_(std::move(field)) {}

  static RTElement zero(const Field& field) { return RTElement(field); }
  static RTElement unit(const Field& field) { return of(BrauerClass::zero(field)); }
  static RTElement of(const BrauerClass& c, Int mult = 1) {
    RTElement e(c.field());
    e.add_term(c, mult);
    return e;
  }

  const Field& field() const { return field_; }
  const Terms& terms() const { return terms_; }

  Int multiplicity(const BrauerClass& c) const {
    auto it = terms_.find(c);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const BrauerClass& c, Int mult) {
    require_same_field(field_, c.field(), "RTElement");
    if (mult == 0) return;
    Int m = checked_add(multiplicity(c), mult);
    if (m == 0) terms_.erase(c);
    else terms_[c] = m;
  }

  friend RTElement operator+(const RTElement& a, const RTElement& b) {
    require_same_field(a.field_, b.field_, "rt_add");
    RTElement r = a;
    for (const auto& [c, m] : b.terms_) r.add_term(c, m);
    return r;
  }

  RTElement operator-() const {
    RTElement r(field_);
    for (const auto& [c, m] : terms_) r.terms_.emplace(c, checked_neg(m));
    return r;
  }

  friend RTElement operator-(const RTElement& a, const RTElement& b) { return a + (-b); }

  /// Product induced by [B]·[C] = [B⊗C].
  friend RTElement operator*(const RTElement& a, const RTElement& b) {
    require_same_field(a.field_, b.field_, "rt_mul");
    RTElement r(a.field_);
    for (const auto& [c1, m1] : a.terms_) {
      for (const auto& [c2, m2] : b.terms_) r.add_term(c1.add(c2), checked_mul(m1, m2));
    }
    return r;
  }

  RTElement scaled(Int n) const {
    RTElement r(field_);
    if (n == 0) return r;
    for (const auto& [c, m] : terms_) r.terms_.emplace(c, checked_mul(m, n));
    return r;
  }

  /// Sum of coefficients.
  Int augmentation() const {
    Int s = 0;
    for (const auto& [c, m] : terms_) s = checked_add(s, m);
    return s;
  }

  bool is_positive() const {
    for (const auto& [c, m] : terms_) {
      if (m < 0) return false;
    }
    return true;
  }

  /// Structural equality of representatives (not equality in the quotient).
  friend bool operator==(const RTElement&, const RTElement&) = default;

 private:
  Field field_;
  Terms terms_;
};

inline RTElement rt_add(const RTElement& a, const RTElement& b) { return a + b; }
inline RTElement rt_neg(const RTElement& a) { return -a; }
inline RTElement rt_mul(const RTElement& a, const RTElement& b) { return a * b; }
inline Int augmentation(const RTElement& e) { return e.augmentation(); }

/// Complete invariant of an element of R_T(k): the augmentation together
/// with the multiplicity of every nontrivial p-primary class.
struct RTCanonical {
  Int augmentation = 0;
  std::map<std::pair<Int, BrauerClass>, Int> primary;

  friend bool operator==(const RTCanonical&, const RTCanonical&) = default;
};

/// Each nontrivial [B] becomes Σ_p [B^p] - (ω(B) - 1)[k], ω(B) the number of
/// primes dividing the period; [k] is then implied by the augmentation.
inline RTCanonical normalize(const RTElement& e) {
  RTCanonical out;
  for (const auto& [c, m] : e.terms()) {
    out.augmentation = checked_add(out.augmentation, m);
    if (c.is_zero()) continue;
    for (Int p : prime_divisors(c.order())) {
      auto key = std::make_pair(p, c.p_part(p));
      Int v = checked_add(out.primary[key], m);
      if (v == 0) out.primary.erase(key);
      else out.primary[key] = v;
    }
  }
  return out;
}

inline bool rt_equal(const RTElement& a, const RTElement& b) {
  require_same_field(a.field(), b.field(), "rt_equal");
  return normalize(a) == normalize(b);
}

/// Subgroup generated by the support of a positive element.
inline BrauerSubgroup subgroup_of_positive(const RTElement& e, std::size_t cap = kDefaultSubgroupCap) {
  if (!e.is_positive()) throw domain_error("subgroup_of_positive: element has a negative multiplicity (not in R_T^+)");
  std::vector<BrauerClass> support;
  for (const auto& [c, m] : e.terms()) support.push_back(c);
  return subgroup_generated(e.field(), support, cap);
}

}  // namespace tits

#endif  // TITS_RT_RING_HPP
