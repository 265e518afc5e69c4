#ifndef TITS_FIELD_HPP
#define TITS_FIELD_HPP

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tits/arith.hpp"

namespace tits {

/// Declared Brauer group ⊕ Z/order_i of a base field we cannot compute with
/// directly (e.g. a function field). Relations are consistency checks: each
/// must already vanish under the orders. Indexes default to the period unless
/// declared per element.
struct AbstractPresentation {
  std::vector<Int> orders;
  std::vector<std::vector<Int>> relations;
  std::vector<std::pair<std::vector<Int>, Int>> declared_index;
  std::vector<std::string> names;

  std::size_t rank() const { return orders.size(); }

  std::vector<Int> reduce(std::vector<Int> exps) const {
    if (exps.size() != orders.size()) {
      throw domain_error("abstract class has " + std::to_string(exps.size()) + " exponents, presentation has " +
                         std::to_string(orders.size()) + " generators");
    }
    for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = mod(exps[i], orders[i]);
    return exps;
  }

  Int element_order(const std::vector<Int>& exps) const {
    Int n = 1;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      Int oi = orders[i] / std::gcd(mod(exps[i], orders[i]), orders[i]);
      n = lcm_checked(n, oi);
    }
    return n;
  }

  Int index_of(const std::vector<Int>& exps) const {
    auto r = reduce(exps);
    for (const auto& [e, idx] : declared_index) {
      if (e == r) return idx;
    }
    return element_order(r);
  }

  void validate() {
    for (Int o : orders) {
      if (o < 1) throw domain_error("abstract presentation: generator orders must be >= 1");
    }
    for (const auto& rel : relations) {
      if (rel.size() != orders.size()) throw domain_error("abstract presentation: relation has wrong length");
      for (std::size_t i = 0; i < rel.size(); ++i) {
        if (mod(rel[i], orders[i]) != 0) {
          throw domain_error("abstract presentation: relation does not vanish under the declared orders");
        }
      }
    }
    for (auto& [e, idx] : declared_index) {
      e = reduce(e);
      Int per = element_order(e);
      if (idx < 1 || idx % per != 0) {
        throw domain_error("abstract presentation: declared index must be a positive multiple of the period");
      }
      if (prime_divisors(idx) != prime_divisors(per)) {
        throw domain_error("abstract presentation: index and period must have the same prime factors");
      }
    }
  }

  friend bool operator==(const AbstractPresentation&, const AbstractPresentation&) = default;
};

/// Base field descriptor. Selects the Brauer-group backend.
class Field {
 public:
  struct Rational {
    friend bool operator==(const Rational&, const Rational&) = default;
  };
  struct Real {
    friend bool operator==(const Real&, const Real&) = default;
  };
  struct PAdic {
    Int p;
    friend bool operator==(const PAdic&, const PAdic&) = default;
  };
  struct Finite {
    Int q;
    friend bool operator==(const Finite&, const Finite&) = default;
  };
  struct AbstractTorsion {
    std::shared_ptr<const AbstractPresentation> presentation;
    friend bool operator==(const AbstractTorsion& a, const AbstractTorsion& b) {
      return a.presentation == b.presentation || (a.presentation && b.presentation && *a.presentation == *b.presentation);
    }
  };
  using Kind = std::variant<Rational, Real, PAdic, Finite, AbstractTorsion>;

  Field() : kind_(Rational{}) {}

  static Field rational() { return Field(Rational{}); }
  static Field real() { return Field(Real{}); }
  static Field padic(Int p) {
    if (!is_prime(p)) throw domain_error("p-adic field requires a prime, got " + std::to_string(p));
    return Field(PAdic{p});
  }
  static Field finite(Int q) {
    if (prime_power_base(q) == 0) throw domain_error("finite field requires a prime power, got " + std::to_string(q));
    return Field(Finite{q});
  }
  static Field abstract(AbstractPresentation presentation) {
    presentation.validate();
    return Field(AbstractTorsion{std::make_shared<const AbstractPresentation>(std::move(presentation))});
  }

  const Kind& kind() const { return kind_; }
  bool is_rational() const { return std::holds_alternative<Rational>(kind_); }
  bool is_real() const { return std::holds_alternative<Real>(kind_); }
  bool is_padic() const { return std::holds_alternative<PAdic>(kind_); }
  bool is_finite() const { return std::holds_alternative<Finite>(kind_); }
  bool is_abstract() const { return std::holds_alternative<AbstractTorsion>(kind_); }

  /// Square classes (and hence quadratic forms) are available over Q and R.
  bool supports_square_classes() const { return is_rational() || is_real(); }

  const AbstractPresentation& presentation() const {
    if (!is_abstract()) throw capability_error("field " + name() + " has no abstract presentation");
    return *std::get<AbstractTorsion>(kind_).presentation;
  }

  Int padic_prime() const { return std::get<PAdic>(kind_).p; }

  std::string name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Rational>) return "Q";
          else if constexpr (std::is_same_v<K, Real>) return "R";
          else if constexpr (std::is_same_v<K, PAdic>) return "Qp:" + std::to_string(k.p);
          else if constexpr (std::is_same_v<K, Finite>) return "Fq:" + std::to_string(k.q);
          else return "abstract";
        },
        kind_);
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

inline void require_same_field(const Field& a, const Field& b, const char* what) {
  if (!(a == b)) throw capability_error(std::string(what) + ": backend mismatch (" + a.name() + " vs " + b.name() + ")");
}

}  // namespace tits

#endif  // TITS_FIELD_HPP
