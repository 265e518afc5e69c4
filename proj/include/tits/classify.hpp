#ifndef TITS_CLASSIFY_HPP
#define TITS_CLASSIFY_HPP

// Decision procedures comparing two twisted varieties (or products) through
// their Tits measures. Each verdict records the implications it used in
// `chain`, so a conclusion can be traced back to the measure, count and
// subgroup computations that produced it.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tits/measure.hpp"

namespace tits {

enum class Tri { no, yes, unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    default: return "unknown";
  }
}

struct Verdict {
  bool measure_equal = false;
  bool count_equal = false;
  std::optional<bool> subgroup_equal;
  Tri isomorphic = Tri::unknown;
  Tri birational = Tri::unknown;
  Tri stably_birational = Tri::unknown;
  std::vector<std::string> chain;
  // (left factor, right factor) pairs shown isomorphic, for product families.
  std::vector<std::pair<int, int>> factor_matches;
};

/// Implication ordering: isomorphic ⇒ birational ⇒ stably birational ⇒ equal
/// measures, and unequal measures ⇒ not isomorphic.
inline bool verdict_consistent(const Verdict& v) {
  if (v.isomorphic == Tri::yes && v.birational != Tri::yes) return false;
  if (v.birational == Tri::yes && v.stably_birational != Tri::yes) return false;
  if (v.stably_birational == Tri::yes && !v.measure_equal) return false;
  if (!v.measure_equal && v.isomorphic != Tri::no) return false;
  if (v.measure_equal && !v.count_equal) return false;
  return true;
}

namespace detail {

inline void check(bool cond, const char* what) {
  if (!cond) throw std::logic_error(std::string("classification inconsistency: ") + what);
}

// Propagate isomorphic=yes down the chain.
inline void close_upward(Verdict& v) {
  if (v.isomorphic == Tri::yes) v.birational = Tri::yes;
  if (v.birational == Tri::yes) v.stably_birational = Tri::yes;
}

inline bool same_pair_up_to_swap(const BrauerClass& a, const BrauerClass& b, const BrauerClass& c,
                                 const BrauerClass& d) {
  return (a == c && b == d) || (a == d && b == c);
}

template <class T>
bool same_multiset(std::vector<T> a, std::vector<T> b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a) {
    auto it = std::find(b.begin(), b.end(), x);
    if (it == b.end()) return false;
    b.erase(it);
  }
  return true;
}

}  // namespace detail

/// Severi-Brauer varieties SB(A), SB(A').
inline Verdict compare_sb(const CSA& a, const CSA& a2) {
  require_same_field(a.field(), a2.field(), "compare_sb");
  Verdict v;
  v.measure_equal = rt_equal(measure(severi_brauer(a)), measure(severi_brauer(a2)));
  v.count_equal = a.degree() == a2.degree();
  v.subgroup_equal = same_cyclic_subgroup(a, a2);
  detail::check(v.measure_equal == (v.count_equal && *v.subgroup_equal), "SB measure vs degree/subgroup");
  v.chain.push_back("measures equal <=> equal degree and <[A]> = <[A']>");
  if (!v.measure_equal) {
    v.isomorphic = Tri::no;
    v.chain.push_back("isomorphic => equal measures; measures differ, so not isomorphic");
    if (!v.count_equal) {
      v.birational = Tri::no;
      v.chain.push_back("different degrees give different dimensions, so not birational");
    }
    return v;
  }
  v.stably_birational = Tri::yes;
  v.chain.push_back("<[A]> = <[A']> with equal degree => stably birational");
  bool same_class = a.brauer_class() == a2.brauer_class();
  v.isomorphic = same_class ? Tri::yes : Tri::no;
  v.chain.push_back(same_class ? "equal class and degree => A = A' => SB(A) = SB(A')"
                               : "SB(A) = SB(A') <=> A = A', and [A] != [A']");
  Int per = a.period();
  if (per <= 2) v.chain.push_back("period <= 2: equal measures => isomorphic");
  if (v.isomorphic == Tri::yes) {
    v.birational = Tri::yes;
  } else if (per == 2 || per == 3 || per == 4 || per == 6 || (per == 5 && a.degree() % 2 == 0)) {
    v.birational = Tri::yes;
    v.chain.push_back("period in {2,3,4,6}, or 5 with even degree: equal measures => birational");
  }
  detail::close_upward(v);
  return v;
}

/// Twisted Grassmannians Gr(d;A), Gr(d';A').
inline Verdict compare_gr(Int d, const CSA& a, Int d2, const CSA& a2) {
  require_same_field(a.field(), a2.field(), "compare_gr");
  auto g1 = grassmannian(d, a);
  auto g2 = grassmannian(d2, a2);
  Int n = a.degree();
  auto is_sb_like = [](Int dd, Int nn) { return dd == 1 || dd == nn - 1; };
  if (is_sb_like(d, n) && is_sb_like(d2, a2.degree())) {
    Verdict v = compare_sb(a, a2);
    v.chain.insert(v.chain.begin(), "Gr(1;A) = Gr(deg A - 1;A) = SB(A): reduced to Severi-Brauer comparison");
    return v;
  }
  Verdict v;
  v.measure_equal = rt_equal(measure(g1), measure(g2));
  v.count_equal = count_measure(g1) == count_measure(g2);
  v.subgroup_equal = same_cyclic_subgroup(a, a2);
  bool d_match = n == a2.degree() && (d2 == d || d2 == n - d);
  detail::check(v.measure_equal == (d_match && *v.subgroup_equal), "Gr measure vs degree/d/subgroup");
  v.chain.push_back("measures equal <=> equal degree, d' in {d, deg - d}, and <[A]> = <[A']>");
  bool iso = d_match && a.brauer_class() == a2.brauer_class();
  v.isomorphic = iso ? Tri::yes : Tri::no;
  if (!v.measure_equal) {
    v.chain.push_back("measures differ, so not isomorphic");
  } else {
    v.chain.push_back(iso ? "d' in {d, deg - d} and A = A' => Gr(d;A) = Gr(d';A')"
                          : "Gr(d;A) = Gr(d';A') => A = A', and [A] != [A']");
    if (a.period() <= 2) v.chain.push_back("period <= 2: equal measures => isomorphic");
  }
  detail::close_upward(v);
  return v;
}

/// Quadrics Q_q, Q_q'.
inline Verdict compare_quadrics(const QuadraticForm& q, const QuadraticForm& q2) {
  auto v1 = quadric(q);
  auto v2 = quadric(q2);
  Verdict v;
  v.measure_equal = rt_equal(measure(v1), measure(v2));
  v.count_equal = count_measure(v1) == count_measure(v2);
  v.subgroup_equal = subgroup_of_positive(measure(v1)) == subgroup_of_positive(measure(v2));
  auto cliff = [](const QuadraticForm& f) { return f.dim() % 2 == 1 ? clifford_odd(f) : clifford_even_half(f); };
  detail::check(v.measure_equal == (q.dim() == q2.dim() && cliff(q) == cliff(q2)), "quadric measure vs Clifford class");
  v.chain.push_back("measures equal <=> equal dimension and isomorphic C_0 (odd) / C_0^+ (even)");
  if (!v.measure_equal) {
    v.isomorphic = Tri::no;
    v.chain.push_back("measures differ, so not isomorphic");
    return v;
  }
  if (q.dim() == 3 || q.dim() == 6) {
    v.isomorphic = Tri::yes;
    v.chain.push_back("dimension 3 or 6: isomorphic Clifford algebras => similar forms => Q_q = Q_q'");
  } else if (q.is_rational() && isometric_over_Q(q, q2)) {
    v.isomorphic = Tri::yes;
    v.chain.push_back("forms isometric over Q => Q_q = Q_q'");
  } else {
    v.chain.push_back("dimension not 3 or 6: isomorphism not decided by the measure");
  }
  detail::close_upward(v);
  return v;
}

/// Twisted quaternion projective spaces HP(A,*), HP(A',*').
inline Verdict compare_hp(const CSA& a, const CSA& a2) {
  require_same_field(a.field(), a2.field(), "compare_hp");
  auto v1 = quaternion_projective(a);
  auto v2 = quaternion_projective(a2);
  Verdict v;
  v.measure_equal = rt_equal(measure(v1), measure(v2));
  v.count_equal = count_measure(v1) == count_measure(v2);
  v.subgroup_equal = same_cyclic_subgroup(a, a2);
  // In degree 2 the class term has multiplicity floor(2/4) = 0 and HP(A,*) = Spec k.
  const bool points = a.degree() == 2 && a2.degree() == 2;
  detail::check(v.measure_equal == (points || (a.degree() == a2.degree() && a.brauer_class() == a2.brauer_class())),
                "HP measure vs degree/class");
  v.chain.push_back("measures equal <=> equal degree and A = A' (degree >= 4)");
  if (!v.measure_equal) {
    v.isomorphic = Tri::no;
    v.chain.push_back("measures differ, so not isomorphic");
  } else if (points) {
    v.isomorphic = Tri::yes;
    v.chain.push_back("degree 2: both varieties are Spec k");
  } else {
    v.chain.push_back("A = A' does not determine the symplectic involution: isomorphism unknown");
  }
  detail::close_upward(v);
  return v;
}

/// Involution varieties Iv(A,*), Iv(A',*').
inline Verdict compare_involution(const TwistedVariety& x, const TwistedVariety& y) {
  const auto* ix = std::get_if<InvolutionVariety>(&x.kind);
  const auto* iy = std::get_if<InvolutionVariety>(&y.kind);
  if (!ix || !iy) throw domain_error("compare_involution: both arguments must be involution varieties");
  require_same_field(x.field(), y.field(), "compare_involution");
  Verdict v;
  v.measure_equal = rt_equal(measure(x), measure(y));
  v.count_equal = count_measure(x) == count_measure(y);
  v.subgroup_equal = subgroup_of_positive(measure(x)) == subgroup_of_positive(measure(y));
  Int n = ix->algebra.degree();
  bool same_degree = n == iy->algebra.degree();
  bool clifford_match =
      same_degree && detail::same_pair_up_to_swap(ix->c_plus, ix->c_minus, iy->c_plus, iy->c_minus);
  if (clifford_match) detail::check(v.measure_equal, "matching C_0^± must give equal measures");
  if (!v.measure_equal) {
    v.isomorphic = Tri::no;
    v.chain.push_back("measures differ, so not isomorphic");
    return v;
  }
  bool division = (n == 4) && (ix->algebra.is_division() || iy->algebra.is_division());
  if (n != 4 || division) {
    detail::check(clifford_match, "equal measures must force matching C_0^± here");
    v.chain.push_back(n != 4 ? "deg != 4: equal measures => C_0^± match (up to swap)"
                             : "deg 4 division algebra: equal measures => C_0^± match (up to swap)");
  } else {
    v.chain.push_back("deg 4 non-division: C_0^± compared directly");
  }
  if (!clifford_match) {
    v.isomorphic = Tri::no;
    v.chain.push_back("isomorphic => C_0^± match; they do not, so not isomorphic");
  } else if (n == 4 || n == 6) {
    v.isomorphic = Tri::yes;
    v.chain.push_back("deg 4 or 6: matching C_0^± => (A,*) = (A',*')");
  } else {
    v.chain.push_back("deg not 4 or 6: matching C_0^± does not decide isomorphism");
  }
  detail::close_upward(v);
  return v;
}

/// Products Q_q × Q_q' vs Q_q'' × Q_q''' of six-dimensional
/// trivial-discriminant quadrics: equal measures <=> isomorphic.
inline Verdict compare_product_quadrics(const QuadraticForm& q, const QuadraticForm& q1, const QuadraticForm& q2,
                                        const QuadraticForm& q3) {
  for (const auto* f : {&q, &q1, &q2, &q3}) {
    if (f->dim() != 6 || !f->discriminant().is_one()) {
      throw domain_error("compare_product_quadrics: all forms must have dimension 6 and trivial discriminant");
    }
  }
  auto left = product({quadric(q), quadric(q1)});
  auto right = product({quadric(q2), quadric(q3)});
  Verdict v;
  v.measure_equal = rt_equal(measure(left), measure(right));
  v.count_equal = count_measure(left) == count_measure(right);
  v.subgroup_equal = subgroup_of_positive(measure(left)) == subgroup_of_positive(measure(right));
  BrauerClass c = clifford_even_half(q), c1 = clifford_even_half(q1);
  BrauerClass c2 = clifford_even_half(q2), c3 = clifford_even_half(q3);
  if (c.is_zero() && c1.is_zero()) {
    v.chain.push_back("case: both C_0^+ split (36 copies of [k])");
  } else if (c.is_zero() || c1.is_zero()) {
    v.chain.push_back("case: exactly one C_0^+ split (24 [k] + 12 [C])");
  } else if (c == c1) {
    v.chain.push_back("case: equal nontrivial C_0^+ (20 [k] + 16 [C])");
  } else {
    v.chain.push_back("case: distinct nontrivial C_0^+ (16 [k] + 8 [C] + 8 [C'] + 4 [C ⊗ C'])");
  }
  bool paired = detail::same_pair_up_to_swap(c, c1, c2, c3);
  detail::check(v.measure_equal == paired, "product-of-quadrics measure vs Clifford pairing");
  if (v.measure_equal) {
    v.isomorphic = Tri::yes;
    v.chain.push_back("C_0^+ match pairwise (up to swap) => factors isomorphic => products isomorphic");
    if (c == c2 && c1 == c3) {
      v.factor_matches = {{0, 0}, {1, 1}};
    } else {
      v.factor_matches = {{0, 1}, {1, 0}};
    }
  } else {
    v.isomorphic = Tri::no;
    v.chain.push_back("measures differ, so products not isomorphic");
  }
  detail::close_upward(v);
  return v;
}

namespace detail {

// Shared logic for SB(A) × SB(A') vs SB(A'') × SB(A''') and the
// Grassmannian analogue: left factors are indices 0,1 and right 0,1.
inline void match_period2_factors(Verdict& v, const std::vector<CSA>& left, const std::vector<CSA>& right,
                                  bool d_match) {
  if (!v.measure_equal) {
    v.isomorphic = Tri::no;
    v.chain.push_back("measures differ, so products not isomorphic");
    return;
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (d_match && left[i] == right[j]) v.factor_matches.emplace_back(i, j);
    }
  }
  check(!v.factor_matches.empty(), "equal measures of period-2 products must match a factor");
  v.chain.push_back("period 2: <[A],[A']> = <[A''],[A''']> forces [A] or [A'] to equal [A''] or [A''']");
  if (d_match && same_multiset(left, right)) {
    v.isomorphic = Tri::yes;
    v.chain.push_back("factors agree up to order => products isomorphic");
  } else {
    v.chain.push_back("one factor pair matches; isomorphism of the products not decided");
  }
  close_upward(v);
}

inline void require_period2_pairs(const std::vector<const CSA*>& as, const char* what) {
  for (const auto* a : as) {
    if (a->period() > 2) throw domain_error(std::string(what) + ": all algebras must have period at most 2");
    require_same_field(a->field(), as.front()->field(), what);
  }
  if (as[0]->degree() != as[1]->degree() || as[2]->degree() != as[3]->degree()) {
    throw domain_error(std::string(what) + ": need deg(A) = deg(A') and deg(A'') = deg(A''')");
  }
}

}  // namespace detail

inline Verdict compare_product_sb(const CSA& a, const CSA& a1, const CSA& a2, const CSA& a3) {
  detail::require_period2_pairs({&a, &a1, &a2, &a3}, "compare_product_sb");
  auto left = product({severi_brauer(a), severi_brauer(a1)});
  auto right = product({severi_brauer(a2), severi_brauer(a3)});
  Verdict v;
  v.measure_equal = rt_equal(measure(left), measure(right));
  v.count_equal = count_measure(left) == count_measure(right);
  v.subgroup_equal = subgroup_generated(a.field(), {a.brauer_class(), a1.brauer_class()}) ==
                     subgroup_generated(a.field(), {a2.brauer_class(), a3.brauer_class()});
  detail::match_period2_factors(v, {a, a1}, {a2, a3}, true);
  return v;
}

inline Verdict compare_product_gr(Int d, const CSA& a, const CSA& a1, Int d2, const CSA& a2, const CSA& a3) {
  detail::require_period2_pairs({&a, &a1, &a2, &a3}, "compare_product_gr");
  auto left = product({grassmannian(d, a), grassmannian(d, a1)});
  auto right = product({grassmannian(d2, a2), grassmannian(d2, a3)});
  Verdict v;
  Int b1 = binomial(a.degree(), d), b2 = binomial(a2.degree(), d2);
  v.count_equal = checked_mul(b1, b1) == checked_mul(b2, b2);
  v.chain.push_back("count: binom(deg A, d)^2 vs binom(deg A'', d'')^2");
  v.measure_equal = v.count_equal && rt_equal(measure(left), measure(right));
  v.subgroup_equal = subgroup_generated(a.field(), {a.brauer_class(), a1.brauer_class()}) ==
                     subgroup_generated(a.field(), {a2.brauer_class(), a3.brauer_class()});
  bool d_match = a.degree() == a2.degree() && (d2 == d || d2 == a.degree() - d);
  detail::match_period2_factors(v, {a, a1}, {a2, a3}, d_match);
  return v;
}

/// Products of conics C(Q1) × C(Q2) vs C(Q1') × C(Q2'), given by their
/// quaternion classes. `left_division` says whether Q1 ⊗ Q2 is a division
/// algebra (anisotropic Albert form).
inline Verdict kollar_products(const BrauerClass& c1, const BrauerClass& c2, const BrauerClass& c1p,
                               const BrauerClass& c2p, bool left_division) {
  for (const auto* c : {&c2, &c1p, &c2p}) require_same_field(c1.field(), c->field(), "kollar_products");
  for (const auto* c : {&c1, &c2, &c1p, &c2p}) {
    if (!c->times(2).is_zero()) throw domain_error("kollar_products: quaternion classes must have period at most 2");
  }
  auto conic = [](const BrauerClass& c) { return severi_brauer(CSA(c, 2)); };
  auto left = product({conic(c1), conic(c2)});
  auto right = product({conic(c1p), conic(c2p)});
  Verdict v;
  v.measure_equal = rt_equal(measure(left), measure(right));
  v.count_equal = count_measure(left) == count_measure(right);
  bool sub = subgroup_generated(c1.field(), {c1, c2}) == subgroup_generated(c1.field(), {c1p, c2p});
  v.subgroup_equal = sub;
  detail::check(v.measure_equal == sub, "products of conics: measure equality vs generated subgroup");
  v.chain.push_back("products of conics: equal classes <=> birational <=> <[Q1],[Q2]> = <[Q1'],[Q2']>");
  v.birational = sub ? Tri::yes : Tri::no;
  v.stably_birational = sub ? Tri::yes : Tri::no;
  if (!v.measure_equal) {
    v.isomorphic = Tri::no;
    v.chain.push_back("measures differ, so not isomorphic");
    return v;
  }
  if (detail::same_pair_up_to_swap(c1, c2, c1p, c2p)) {
    v.isomorphic = Tri::yes;
    v.chain.push_back("conic classes agree up to order => products isomorphic");
  } else if (left_division) {
    v.isomorphic = Tri::yes;
    v.chain.push_back("Albert form anisotropic (division biquaternion): equal classes => isomorphic");
  } else {
    v.chain.push_back("Albert form isotropic: isomorphism not decided");
  }
  detail::close_upward(v);
  return v;
}

/// Square-class version over Q or R. Over Q the division test is the
/// anisotropy of the Albert form of (a1,b1,a2,b2).
inline Verdict kollar_products(const std::array<SquareClass, 4>& left, const std::array<SquareClass, 4>& right) {
  BrauerClass c1 = quaternion_class(left[0], left[1]), c2 = quaternion_class(left[2], left[3]);
  BrauerClass c1p = quaternion_class(right[0], right[1]), c2p = quaternion_class(right[2], right[3]);
  bool division = false;
  if (!left[0].is_real()) {
    division = anisotropic_over_Q(albert_form(left[0], left[1], left[2], left[3]));
  } else {
    division = CSA(c1.add(c2), 4).is_division();
  }
  return kollar_products(c1, c2, c1p, c2p, division);
}

/// Classes-only version for declared backends: division iff the declared
/// index of [Q1 ⊗ Q2] is 4.
inline Verdict kollar_products(const BrauerClass& c1, const BrauerClass& c2, const BrauerClass& c1p,
                               const BrauerClass& c2p) {
  return kollar_products(c1, c2, c1p, c2p, c1.add(c2).index() == 4);
}

}  // namespace tits

#endif  // TITS_CLASSIFY_HPP
