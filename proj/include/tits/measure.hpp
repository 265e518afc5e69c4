#ifndef TITS_MEASURE_HPP
#define TITS_MEASURE_HPP

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tits/csa.hpp"
#include "tits/gaussian.hpp"
#include "tits/qform.hpp"
#include "tits/rt_ring.hpp"

namespace tits {

struct TwistedVariety;

struct SeveriBrauer {
  CSA algebra;
};

struct Grassmannian {
  Int d;
  CSA algebra;
};

struct Quadric {
  QuadraticForm form;
};

/// HP(A,*) for A of even degree carrying a symplectic involution.
struct QuaternionProjective {
  CSA algebra;
};

/// Iv(A,*) for (A,*) orthogonal with trivial discriminant; the classes of
/// C_0^±(A,*) are part of the data since they depend on the involution.
struct InvolutionVariety {
  CSA algebra;
  BrauerClass c_plus;
  BrauerClass c_minus;
};

struct Product {
  std::vector<TwistedVariety> factors;
};

/// Twisted projective homogeneous variety from one of the supported families,
/// or a finite product of them.
struct TwistedVariety {
  std::variant<SeveriBrauer, Grassmannian, Quadric, QuaternionProjective, InvolutionVariety, Product> kind;

  Field field() const;
  std::string family() const;
};

inline Field TwistedVariety::field() const {
  return std::visit(
      [](const auto& v) -> Field {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, Quadric>) return v.form.field();
        else if constexpr (std::is_same_v<V, Product>) return v.factors.front().field();
        else return v.algebra.field();
      },
      kind);
}

inline std::string TwistedVariety::family() const {
  static const char* names[] = {"sb", "gr", "quadric", "hp", "iv", "product"};
  return names[kind.index()];
}

// Family invariants. Each throws domain_error naming the violated condition.

inline void validate(const TwistedVariety& v);

inline void validate_involution(const CSA& a, const BrauerClass& cp, const BrauerClass& cm) {
  require_same_field(a.field(), cp.field(), "involution variety");
  require_same_field(a.field(), cm.field(), "involution variety");
  Int n = a.degree();
  if (n % 2 != 0) throw domain_error("involution variety: deg(A) must be even");
  if (a.period() > 2) throw domain_error("involution variety: A must have period at most 2");
  const BrauerClass& A = a.brauer_class();
  if (n % 4 == 2) {
    if (!(cp.times(2) == A) || !(cp.times(3) == cm) || !cp.times(4).is_zero()) {
      throw domain_error("involution variety: deg(A) = 2 mod 4 requires 2[C+] = [A], 3[C+] = [C-], 4[C+] = 0");
    }
  } else {
    if (!cp.times(2).is_zero() || !cm.times(2).is_zero() || !(cp.add(cm) == A)) {
      throw domain_error("involution variety: deg(A) = 0 mod 4 requires 2[C+] = 0, 2[C-] = 0, [C+] + [C-] = [A]");
    }
  }
}

inline void validate(const TwistedVariety& v) {
  std::visit(
      [](const auto& x) {
        using V = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<V, Grassmannian>) {
          if (x.d < 1 || x.d >= x.algebra.degree()) {
            throw domain_error("Grassmannian: need 1 <= d < deg(A), got d = " + std::to_string(x.d));
          }
        } else if constexpr (std::is_same_v<V, Quadric>) {
          if (x.form.dim() < 3) throw domain_error("quadric: dim(q) must be at least 3");
          if (x.form.dim() % 2 == 0 && !x.form.discriminant().is_one()) {
            throw domain_error("quadric: even-dimensional form must have trivial discriminant");
          }
        } else if constexpr (std::is_same_v<V, QuaternionProjective>) {
          if (x.algebra.degree() % 2 != 0) throw domain_error("quaternion projective space: deg(A) must be even");
          if (x.algebra.period() > 2) {
            throw domain_error("quaternion projective space: A ⊗ A must split (period at most 2)");
          }
        } else if constexpr (std::is_same_v<V, InvolutionVariety>) {
          validate_involution(x.algebra, x.c_plus, x.c_minus);
        } else if constexpr (std::is_same_v<V, Product>) {
          if (x.factors.empty()) throw domain_error("product: needs at least one factor");
          for (const auto& f : x.factors) {
            validate(f);
            require_same_field(f.field(), x.factors.front().field(), "product");
          }
        }
      },
      v.kind);
}

inline TwistedVariety severi_brauer(CSA a) { return TwistedVariety{SeveriBrauer{std::move(a)}}; }

inline TwistedVariety grassmannian(Int d, CSA a) {
  TwistedVariety v{Grassmannian{d, std::move(a)}};
  validate(v);
  return v;
}

inline TwistedVariety quadric(QuadraticForm q) {
  TwistedVariety v{Quadric{std::move(q)}};
  validate(v);
  return v;
}

inline TwistedVariety quaternion_projective(CSA a) {
  TwistedVariety v{QuaternionProjective{std::move(a)}};
  validate(v);
  return v;
}

inline TwistedVariety involution_variety(CSA a, BrauerClass c_plus, BrauerClass c_minus) {
  TwistedVariety v{InvolutionVariety{std::move(a), std::move(c_plus), std::move(c_minus)}};
  validate(v);
  return v;
}

inline TwistedVariety product(std::vector<TwistedVariety> factors) {
  TwistedVariety v{Product{std::move(factors)}};
  validate(v);
  return v;
}

/// Split case: (M_n(k), adjoint involution of q), so Iv = Q_q.
inline TwistedVariety involution_from_form(const QuadraticForm& q) {
  if (q.dim() % 2 != 0) throw domain_error("involution_from_form: dim(q) must be even");
  BrauerClass c = clifford_even_half(q);
  return involution_variety(CSA::split(q.field(), static_cast<Int>(q.dim())), c, c);
}

/// Degree-4 case built from two quaternion classes: A = Q1 ⊗ Q2 with
/// C_0^+ = Q1 and C_0^- = Q2.
inline TwistedVariety involution_from_quaternion_classes(const BrauerClass& q1, const BrauerClass& q2) {
  require_same_field(q1.field(), q2.field(), "involution_from_quaternion_classes");
  if (!q1.times(2).is_zero() || !q2.times(2).is_zero()) {
    throw domain_error("involution_from_quaternion_classes: quaternion classes must have period at most 2");
  }
  BrauerClass a = q1.add(q2);
  return involution_variety(CSA(a, 4), q1, q2);
}

inline TwistedVariety involution_from_biquaternion(const SquareClass& a1, const SquareClass& b1, const SquareClass& a2,
                                                   const SquareClass& b2) {
  return involution_from_quaternion_classes(quaternion_class(a1, b1), quaternion_class(a2, b2));
}

/// Tits motivic measure μ_T: the sum of the Tits algebras in R_T(k).
inline RTElement measure(const TwistedVariety& v) {
  validate(v);
  return std::visit(
      [&v](const auto& x) -> RTElement {
        using V = std::decay_t<decltype(x)>;
        const Field field = v.field();
        RTElement e(field);
        if constexpr (std::is_same_v<V, SeveriBrauer>) {
          for (Int i = 0; i < x.algebra.degree(); ++i) e.add_term(tensor_power(x.algebra, i), 1);
        } else if constexpr (std::is_same_v<V, Grassmannian>) {
          auto coeffs = gaussian_binomial(x.algebra.degree(), x.d);
          for (std::size_t j = 0; j < coeffs.size(); ++j) {
            e.add_term(tensor_power(x.algebra, static_cast<Int>(j)), coeffs[j]);
          }
        } else if constexpr (std::is_same_v<V, Quadric>) {
          Int n = static_cast<Int>(x.form.dim());
          e.add_term(BrauerClass::zero(field), n - 2);
          if (n % 2 == 1) e.add_term(clifford_odd(x.form), 1);
          else e.add_term(clifford_even_half(x.form), 2);
        } else if constexpr (std::is_same_v<V, QuaternionProjective>) {
          Int n = x.algebra.degree();
          e.add_term(BrauerClass::zero(field), (n + 3) / 4);
          e.add_term(x.algebra.brauer_class(), n / 4);
        } else if constexpr (std::is_same_v<V, InvolutionVariety>) {
          Int half = x.algebra.degree() / 2 - 1;
          e.add_term(BrauerClass::zero(field), half);
          e.add_term(x.algebra.brauer_class(), half);
          e.add_term(x.c_plus, 1);
          e.add_term(x.c_minus, 1);
        } else {
          e = RTElement::unit(field);
          for (const auto& f : x.factors) e = e * measure(f);
        }
        return e;
      },
      v.kind);
}

/// n(F): number of Tits algebras, from the family formulas.
inline Int count_measure(const TwistedVariety& v) {
  validate(v);
  return std::visit(
      [](const auto& x) -> Int {
        using V = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<V, SeveriBrauer>) return x.algebra.degree();
        else if constexpr (std::is_same_v<V, Grassmannian>) return binomial(x.algebra.degree(), x.d);
        else if constexpr (std::is_same_v<V, Quadric>) {
          Int n = static_cast<Int>(x.form.dim());
          return n % 2 == 1 ? n - 1 : n;
        } else if constexpr (std::is_same_v<V, QuaternionProjective>) return x.algebra.degree() / 2;
        else if constexpr (std::is_same_v<V, InvolutionVariety>) return x.algebra.degree();
        else {
          Int c = 1;
          for (const auto& f : x.factors) c = checked_mul(c, count_measure(f));
          return c;
        }
      },
      v.kind);
}

}  // namespace tits

#endif  // TITS_MEASURE_HPP
