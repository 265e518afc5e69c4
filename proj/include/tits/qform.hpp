#ifndef TITS_QFORM_HPP
#define TITS_QFORM_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "tits/brauer_class.hpp"
#include "tits/csa.hpp"
#include "tits/hilbert.hpp"
#include "tits/square_class.hpp"

namespace tits {

/// Non-degenerate diagonal quadratic form <a_1, ..., a_n> over Q or R.
class QuadraticForm {
 public:
  explicit QuadraticForm(std::vector<SquareClass> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw domain_error("quadratic form: dimension must be at least 1");
    for (const auto& c : coeffs_) {
      if (c.is_real() != coeffs_.front().is_real()) throw capability_error("quadratic form: mixed backends");
    }
  }

  static QuadraticForm of(const std::vector<Int>& coeffs, const Field& field) {
    if (!field.supports_square_classes()) {
      throw capability_error("quadratic forms are unavailable over " + field.name());
    }
    std::vector<SquareClass> cs;
    cs.reserve(coeffs.size());
    for (Int c : coeffs) cs.push_back(SquareClass::of(c, field));
    return QuadraticForm(std::move(cs));
  }

  const std::vector<SquareClass>& coeffs() const { return coeffs_; }
  std::size_t dim() const { return coeffs_.size(); }
  Field field() const { return coeffs_.front().field(); }
  bool is_rational() const { return !coeffs_.front().is_real(); }

  SquareClass one() const { return SquareClass::of(1, field()); }
  SquareClass minus_one() const { return SquareClass::of(-1, field()); }

  SquareClass determinant() const {
    SquareClass d = one();
    for (const auto& c : coeffs_) d = d * c;
    return d;
  }

  /// Signed discriminant (-1)^{n(n-1)/2} det(q) as a square class.
  SquareClass discriminant() const {
    std::size_t n = dim();
    SquareClass d = determinant();
    return (n * (n - 1) / 2) % 2 == 1 ? d.neg() : d;
  }

  QuadraticForm scaled(const SquareClass& lambda) const {
    std::vector<SquareClass> cs;
    for (const auto& c : coeffs_) cs.push_back(c * lambda);
    return QuadraticForm(std::move(cs));
  }

  QuadraticForm perp(const QuadraticForm& o) const {
    std::vector<SquareClass> cs = coeffs_;
    cs.insert(cs.end(), o.coeffs_.begin(), o.coeffs_.end());
    return QuadraticForm(std::move(cs));
  }

  QuadraticForm tail(std::size_t from) const {
    return QuadraticForm(std::vector<SquareClass>(coeffs_.begin() + static_cast<std::ptrdiff_t>(from), coeffs_.end()));
  }

  std::string str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s += (i ? "," : "") + coeffs_[i].str();
    return s + ">";
  }

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  std::vector<SquareClass> coeffs_;
};

inline SquareClass discriminant(const QuadraticForm& q) { return q.discriminant(); }

/// Brauer class of the full Clifford algebra C(q) of an even-dimensional form,
/// peeling binary blocks: C(<u,v> ⊥ rest) = (u,v) ⊗ C(-uv · rest).
inline BrauerClass clifford_full_even(const QuadraticForm& q) {
  if (q.dim() % 2 != 0) throw domain_error("clifford_full_even: dimension must be even");
  BrauerClass acc = BrauerClass::zero(q.field());
  SquareClass scale = q.one();
  const auto& c = q.coeffs();
  for (std::size_t i = 0; i + 1 < c.size(); i += 2) {
    SquareClass u = c[i] * scale, v = c[i + 1] * scale;
    acc = acc.add(quaternion_class(u, v));
    scale = scale * (u * v).neg();
  }
  return acc;
}

/// Class of the even Clifford algebra C_0(q) for odd dim(q):
/// C_0(<a> ⊥ rest) = C(-a · rest).
inline BrauerClass clifford_odd(const QuadraticForm& q) {
  if (q.dim() % 2 == 0) throw domain_error("clifford_odd: dimension must be odd, got " + std::to_string(q.dim()));
  if (q.dim() == 1) return BrauerClass::zero(q.field());
  return clifford_full_even(q.tail(1).scaled(q.coeffs().front().neg()));
}

/// Common class of the two factors C_0^±(q) for even dim(q) with trivial
/// discriminant: C_0(q) = C(-a_1 <a_2..a_n>) splits over the split center.
inline BrauerClass clifford_even_half(const QuadraticForm& q) {
  if (q.dim() % 2 != 0) throw domain_error("clifford_even_half: dimension must be even, got " + std::to_string(q.dim()));
  if (!q.discriminant().is_one()) {
    throw domain_error("clifford_even_half: discriminant must be trivial, got " + q.discriminant().str());
  }
  return clifford_odd(q.tail(1).scaled(q.coeffs().front().neg()));
}

/// Albert form <a1, b1, -a1 b1, -a2, -b2, a2 b2> of (a1,b1) ⊗ (a2,b2).
inline QuadraticForm albert_form(const SquareClass& a1, const SquareClass& b1, const SquareClass& a2,
                                 const SquareClass& b2) {
  return QuadraticForm({a1, b1, (a1 * b1).neg(), a2.neg(), b2.neg(), a2 * b2});
}

inline QuadraticForm albert_form(Int a1, Int b1, Int a2, Int b2, const Field& field) {
  auto s = [&](Int x) { return SquareClass::of(x, field); };
  return albert_form(s(a1), s(b1), s(a2), s(b2));
}

/// Odd-dimensional form of dimension 2r+1 and trivial discriminant whose even
/// Clifford algebra is (a_1,b_1) ⊗ ... ⊗ (a_r,b_r).
///
/// Built as q_1 ⊥ ... ⊥ q_r with q_1 = <a_1, b_1, -a_1 b_1>, q_2 = -<a_2, b_2>,
/// q_j = (-1)^{j-1} (a_2 b_2 ... a_{j-1} b_{j-1}) <a_j, b_j>, then rescaled by
/// its own discriminant. Scaling an odd form by λ multiplies the discriminant
/// by λ and leaves C_0 unchanged.
inline QuadraticForm prop_last_form(const std::vector<std::pair<SquareClass, SquareClass>>& quaternions) {
  if (quaternions.empty()) throw domain_error("prop_last_form: need at least one quaternion algebra");
  const auto& [a1, b1] = quaternions.front();
  QuadraticForm q({a1, b1, (a1 * b1).neg()});
  SquareClass prefix = q.one();
  for (std::size_t j = 2; j <= quaternions.size(); ++j) {
    const auto& [a, b] = quaternions[j - 1];
    SquareClass lambda = (j - 1) % 2 == 1 ? prefix.neg() : prefix;
    q = q.perp(QuadraticForm({a * lambda, b * lambda}));
    prefix = prefix * a * b;
  }
  return q.scaled(q.discriminant());
}

inline QuadraticForm prop_last_form(const std::vector<std::pair<Int, Int>>& quaternions, const Field& field) {
  std::vector<std::pair<SquareClass, SquareClass>> qs;
  for (auto [a, b] : quaternions) qs.emplace_back(SquareClass::of(a, field), SquareClass::of(b, field));
  return prop_last_form(qs);
}

/// Ternary forms are similar iff their even Clifford algebras agree.
/// Every ternary form is similar to one of trivial discriminant, so no
/// discriminant condition is imposed.
inline bool similar_dim3(const QuadraticForm& q, const QuadraticForm& q2) {
  if (q.dim() != 3 || q2.dim() != 3) throw domain_error("similar_dim3: both forms must have dimension 3");
  return clifford_odd(q) == clifford_odd(q2);
}

/// Six-dimensional trivial-discriminant forms are similar iff C_0^+ agree.
inline bool similar_dim6(const QuadraticForm& q, const QuadraticForm& q2) {
  if (q.dim() != 6 || q2.dim() != 6) throw domain_error("similar_dim6: both forms must have dimension 6");
  if (!q.discriminant().is_one() || !q2.discriminant().is_one()) {
    throw domain_error("similar_dim6: both forms must have trivial discriminant");
  }
  return clifford_even_half(q) == clifford_even_half(q2);
}

namespace detail {

inline void require_rational(const QuadraticForm& q, const char* what) {
  if (!q.is_rational()) throw capability_error(std::string(what) + ": requires the rational backend");
}

// Hasse invariant prod_{i<j} (a_i, a_j)_v.
inline int hasse_invariant(const QuadraticForm& q, const Place& v) {
  int s = 1;
  const auto& c = q.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) s *= hilbert_symbol(c[i], c[j], v);
  }
  return s;
}

// Whether the square-free integer x is a square in Q_v.
inline bool is_local_square(Int x, const Place& v) {
  if (v.is_real()) return x > 0;
  Int p = v.prime;
  if (x % p == 0) return false;
  if (p == 2) return mod(x, 8) == 1;
  return legendre(x, p) == 1;
}

inline std::vector<Place> places_of(const std::vector<const QuadraticForm*>& forms) {
  std::vector<SquareClass> cs;
  for (const auto* f : forms) cs.insert(cs.end(), f->coeffs().begin(), f->coeffs().end());
  return relevant_places(cs);
}

// Local isotropy of q over Q_v by the rank-wise criteria.
inline bool isotropic_at(const QuadraticForm& q, const Place& v) {
  std::size_t n = q.dim();
  if (n == 1) return false;
  if (v.is_real()) {
    bool pos = false, neg = false;
    for (const auto& c : q.coeffs()) (c.rep() > 0 ? pos : neg) = true;
    return pos && neg;
  }
  Int d = q.determinant().rep();
  if (n == 2) return is_local_square(SquareClass::rational(-d).rep(), v);
  SquareClass m1 = SquareClass::rational(-1);
  int eps = hasse_invariant(q, v);
  if (n == 3) return eps == hilbert_symbol(m1, SquareClass::rational(-d), v);
  if (n == 4) return !is_local_square(d, v) || eps == hilbert_symbol(m1, m1, v);
  return true;
}

}  // namespace detail

/// Hasse-Minkowski isometry test over Q: dimension, determinant, signature
/// and local Hasse invariants.
inline bool isometric_over_Q(const QuadraticForm& q, const QuadraticForm& q2) {
  detail::require_rational(q, "isometric_over_Q");
  detail::require_rational(q2, "isometric_over_Q");
  if (q.dim() != q2.dim()) return false;
  if (q.determinant() != q2.determinant()) return false;
  auto positives = [](const QuadraticForm& f) {
    return std::count_if(f.coeffs().begin(), f.coeffs().end(), [](const SquareClass& c) { return c.rep() > 0; });
  };
  if (positives(q) != positives(q2)) return false;
  for (const Place& v : detail::places_of({&q, &q2})) {
    if (detail::hasse_invariant(q, v) != detail::hasse_invariant(q2, v)) return false;
  }
  return true;
}

/// True iff q has no nontrivial rational zero.
inline bool anisotropic_over_Q(const QuadraticForm& q) {
  detail::require_rational(q, "anisotropic_over_Q");
  if (q.dim() == 1) return true;
  // Binary forms are isotropic over Q exactly when -det is a rational square.
  if (q.dim() == 2) return !SquareClass::rational(-q.determinant().rep()).is_one();
  for (const Place& v : detail::places_of({&q})) {
    if (!detail::isotropic_at(q, v)) return true;
  }
  return false;
}

}  // namespace tits

#endif  // TITS_QFORM_HPP
