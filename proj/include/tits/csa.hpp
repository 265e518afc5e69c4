#ifndef TITS_CSA_HPP
#define TITS_CSA_HPP

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tits/brauer_class.hpp"
#include "tits/hilbert.hpp"
#include "tits/square_class.hpp"

namespace tits {

/// Central simple algebra up to isomorphism: a Brauer class and a degree.
/// Two algebras with the same class and degree are isomorphic, so equality
/// here is isomorphism.
class CSA {
 public:
  CSA(BrauerClass cls, Int degree) : cls_(std::move(cls)), degree_(degree) {
    if (degree_ < 1) throw domain_error("CSA: degree must be positive");
    if (degree_ % cls_.index() != 0) {
      throw domain_error("CSA: index " + std::to_string(cls_.index()) + " does not divide degree " +
                         std::to_string(degree_));
    }
  }

  static CSA split(const Field& field, Int degree = 1) { return CSA(BrauerClass::zero(field), degree); }

  const BrauerClass& brauer_class() const { return cls_; }
  const Field& field() const { return cls_.field(); }
  Int degree() const { return degree_; }
  Int period() const { return cls_.order(); }
  Int index() const { return cls_.index(); }
  bool is_split() const { return cls_.is_zero(); }
  bool is_division() const { return index() == degree_; }

  friend bool operator==(const CSA&, const CSA&) = default;

 private:
  BrauerClass cls_;
  Int degree_;
};

/// Brauer class of the quaternion algebra (a,b).
inline BrauerClass quaternion_class(const SquareClass& a, const SquareClass& b) {
  if (a.is_real() != b.is_real()) throw capability_error("quaternion: square class backend mismatch");
  if (a.is_real()) return BrauerClass::real(hilbert_symbol_real(a, b) == -1);
  BrauerClass::LocalInvariants inv;
  for (const Place& v : relevant_places({a, b})) {
    if (hilbert_symbol(a, b, v) == -1) inv.emplace(v, QZ::half());
  }
  return BrauerClass::rational(inv);
}

/// Quaternion algebra (a,b) as a degree-2 CSA over Q or R.
inline CSA quaternion(const SquareClass& a, const SquareClass& b) { return CSA(quaternion_class(a, b), 2); }

inline CSA quaternion(Int a, Int b, const Field& field) {
  if (!field.supports_square_classes()) throw capability_error("quaternion: unsupported backend " + field.name());
  return quaternion(SquareClass::of(a, field), SquareClass::of(b, field));
}

inline CSA tensor(const CSA& a, const CSA& b) {
  require_same_field(a.field(), b.field(), "tensor");
  return CSA(a.brauer_class().add(b.brauer_class()), checked_mul(a.degree(), b.degree()));
}

inline CSA biquaternion(Int a1, Int b1, Int a2, Int b2, const Field& field) {
  return tensor(quaternion(a1, b1, field), quaternion(a2, b2, field));
}

/// Class of A^{⊗i}.
inline BrauerClass tensor_power(const CSA& a, Int i) {
  if (i < 0) throw domain_error("tensor_power: exponent must be non-negative");
  return a.brauer_class().times(i);
}

inline bool coprime_indexes(const CSA& a, const CSA& b) { return std::gcd(a.index(), b.index()) == 1; }

/// Finite subgroup of Br(k), stored as a sorted list of its elements.
class BrauerSubgroup {
 public:
  BrauerSubgroup(Field field, std::vector<BrauerClass> elements) : field_(std::move(field)), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
  }

  const std::vector<BrauerClass>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(const BrauerClass& c) const { return std::binary_search(elements_.begin(), elements_.end(), c); }

  friend bool operator==(const BrauerSubgroup& a, const BrauerSubgroup& b) {
    return a.field_ == b.field_ && a.elements_ == b.elements_;
  }

 private:
  Field field_;
  std::vector<BrauerClass> elements_;
};

inline constexpr std::size_t kDefaultSubgroupCap = 4096;

/// Subgroup generated by the given classes, enumerated by closure. Throws
/// once more than `cap` elements have been produced.
inline BrauerSubgroup subgroup_generated(const Field& field, const std::vector<BrauerClass>& generators,
                                         std::size_t cap = kDefaultSubgroupCap) {
  for (const auto& g : generators) require_same_field(field, g.field(), "subgroup_generated");
  std::set<BrauerClass> seen{BrauerClass::zero(field)};
  std::vector<BrauerClass> frontier{BrauerClass::zero(field)};
  while (!frontier.empty()) {
    std::vector<BrauerClass> next;
    for (const auto& x : frontier) {
      for (const auto& g : generators) {
        BrauerClass y = x.add(g);
        if (seen.insert(y).second) {
          if (seen.size() > cap) {
            throw capability_error("subgroup_generated: subgroup exceeds " + std::to_string(cap) + " elements");
          }
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  return BrauerSubgroup(field, std::vector<BrauerClass>(seen.begin(), seen.end()));
}

/// <x> = <y>: equal orders and y = m x for some m coprime to the order.
inline bool same_cyclic_subgroup(const BrauerClass& x, const BrauerClass& y) {
  require_same_field(x.field(), y.field(), "same_cyclic_subgroup");
  Int n = x.order();
  if (n != y.order()) return false;
  if (n > 10'000'000) throw capability_error("same_cyclic_subgroup: period too large to search");
  for (Int m = 1; m <= n; ++m) {
    if (std::gcd(m, n) == 1 && x.times(m) == y) return true;
  }
  return false;
}

inline bool same_cyclic_subgroup(const CSA& a, const CSA& b) {
  return same_cyclic_subgroup(a.brauer_class(), b.brauer_class());
}

}  // namespace tits

#endif  // TITS_CSA_HPP
