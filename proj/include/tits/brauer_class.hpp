#ifndef TITS_BRAUER_CLASS_HPP
#define TITS_BRAUER_CLASS_HPP

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tits/arith.hpp"
#include "tits/field.hpp"
#include "tits/hilbert.hpp"
#include "tits/qz.hpp"

namespace tits {

/// Element of Br(k) in the exact representation of its field backend.
///
///   Q         sparse map place -> Hasse invariant, invariants summing to 0
///   R         invariant in {0, 1/2}
///   Qp        invariant in Q/Z
///   Fq        trivial group
///   abstract  exponent vector modulo the declared generator orders
///
/// Values are canonical, so equality is structural.
class BrauerClass {
 public:
  using LocalInvariants = std::map<Place, QZ>;
  using Payload = std::variant<std::monostate, LocalInvariants, QZ, std::vector<Int>>;

  BrauerClass() : BrauerClass(Field::rational()) {}

  static BrauerClass zero(const Field& field) { return BrauerClass(field); }

  static BrauerClass rational(const LocalInvariants& inv) {
    LocalInvariants clean;
    QZ total;
    for (const auto& [v, x] : inv) {
      if (v.is_real() && !(x.is_zero() || x == QZ::half())) {
        throw domain_error("Brauer class over Q: invariant at the real place must be 0 or 1/2");
      }
      if (!v.is_real() && !is_prime(v.prime)) {
        throw domain_error("Brauer class over Q: place " + std::to_string(v.prime) + " is not prime");
      }
      total = total + x;
      if (!x.is_zero()) clean.emplace(v, x);
    }
    if (!total.is_zero()) {
      throw domain_error("Brauer class over Q: local invariants must sum to 0 in Q/Z (sum is " + total.str() + ")");
    }
    BrauerClass c(Field::rational());
    c.payload_ = std::move(clean);
    return c;
  }

  static BrauerClass real(bool nontrivial) {
    BrauerClass c(Field::real());
    c.payload_ = nontrivial ? QZ::half() : QZ();
    return c;
  }

  static BrauerClass local(const Field& field, QZ inv) {
    if (field.is_real()) {
      if (!(inv.is_zero() || inv == QZ::half())) throw domain_error("Br(R) invariant must be 0 or 1/2");
    } else if (!field.is_padic()) {
      throw capability_error("local invariant classes require the R or Qp backend, got " + field.name());
    }
    BrauerClass c(field);
    c.payload_ = inv;
    return c;
  }

  static BrauerClass abstract(const Field& field, std::vector<Int> exps) {
    BrauerClass c(field);
    c.payload_ = field.presentation().reduce(std::move(exps));
    return c;
  }

  const Field& field() const { return field_; }
  const Payload& payload() const { return payload_; }

  const LocalInvariants& invariants() const {
    if (!field_.is_rational()) throw capability_error("local invariant map is only defined over Q");
    return std::get<LocalInvariants>(payload_);
  }
  QZ local_invariant() const {
    if (!(field_.is_real() || field_.is_padic())) throw capability_error("single invariant requires R or Qp");
    return std::get<QZ>(payload_);
  }
  const std::vector<Int>& exponents() const { return std::get<std::vector<Int>>(payload_); }

  /// Invariant at one place over Q (0 when absent).
  QZ invariant_at(const Place& v) const {
    const auto& m = invariants();
    auto it = m.find(v);
    return it == m.end() ? QZ() : it->second;
  }

  bool is_zero() const {
    return std::visit(
        [](const auto& p) -> bool {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, std::monostate>) return true;
          else if constexpr (std::is_same_v<P, LocalInvariants>) return p.empty();
          else if constexpr (std::is_same_v<P, QZ>) return p.is_zero();
          else {
            for (Int e : p) {
              if (e != 0) return false;
            }
            return true;
          }
        },
        payload_);
  }

  /// Order in Br(k) (the period of any algebra in this class).
  Int order() const {
    return std::visit(
        [this](const auto& p) -> Int {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, std::monostate>) return 1;
          else if constexpr (std::is_same_v<P, LocalInvariants>) {
            Int n = 1;
            for (const auto& [v, x] : p) n = lcm_checked(n, x.den());
            return n;
          } else if constexpr (std::is_same_v<P, QZ>) return p.den();
          else return field_.presentation().element_order(p);
        },
        payload_);
  }

  /// Index of an algebra in this class: equal to the period except over
  /// an abstract backend, where it may be declared larger.
  Int index() const {
    if (field_.is_abstract()) return field_.presentation().index_of(exponents());
    return order();
  }

  BrauerClass add(const BrauerClass& o) const {
    require_same_field(field_, o.field_, "brauer_add");
    BrauerClass r(field_);
    if (field_.is_rational()) {
      LocalInvariants m = invariants();
      for (const auto& [v, x] : o.invariants()) {
        QZ s = (m.count(v) ? m[v] : QZ()) + x;
        if (s.is_zero()) m.erase(v);
        else m[v] = s;
      }
      r.payload_ = std::move(m);
    } else if (field_.is_real() || field_.is_padic()) {
      r.payload_ = local_invariant() + o.local_invariant();
    } else if (field_.is_abstract()) {
      std::vector<Int> e = exponents();
      const auto& oe = o.exponents();
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = checked_add(e[i], oe[i]);
      r.payload_ = field_.presentation().reduce(std::move(e));
    }
    return r;
  }

  /// n-fold sum (n may be negative).
  BrauerClass times(Int n) const {
    BrauerClass r(field_);
    if (field_.is_rational()) {
      LocalInvariants m;
      for (const auto& [v, x] : invariants()) {
        QZ y = x.times(n);
        if (!y.is_zero()) m.emplace(v, y);
      }
      r.payload_ = std::move(m);
    } else if (field_.is_real() || field_.is_padic()) {
      r.payload_ = local_invariant().times(n);
    } else if (field_.is_abstract()) {
      std::vector<Int> e = exponents();
      const auto& ords = field_.presentation().orders;
      for (std::size_t i = 0; i < e.size(); ++i) {
        e[i] = static_cast<Int>(mulmod(static_cast<std::uint64_t>(e[i]), static_cast<std::uint64_t>(mod(n, ords[i])),
                                       static_cast<std::uint64_t>(ords[i])));
      }
      r.payload_ = std::move(e);
    }
    return r;
  }

  BrauerClass neg() const { return times(-1); }

  /// Component in Br(k){p}.
  BrauerClass p_part(Int p) const {
    BrauerClass r(field_);
    if (field_.is_rational()) {
      LocalInvariants m;
      for (const auto& [v, x] : invariants()) {
        QZ y = x.p_part(p);
        if (!y.is_zero()) m.emplace(v, y);
      }
      r.payload_ = std::move(m);
    } else if (field_.is_real() || field_.is_padic()) {
      r.payload_ = local_invariant().p_part(p);
    } else if (field_.is_abstract()) {
      std::vector<Int> e = exponents();
      const auto& ords = field_.presentation().orders;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = p_primary_residue(e[i], ords[i], p);
      r.payload_ = std::move(e);
    }
    return r;
  }

  /// Compact human-readable rendering, e.g. "{oo:1/2, 3:1/2}" or "0".
  std::string str() const {
    if (is_zero()) return "0";
    if (field_.is_rational()) {
      std::string s = "{";
      bool first = true;
      for (const auto& [v, x] : invariants()) {
        if (!first) s += ", ";
        first = false;
        s += v.str() + ":" + x.str();
      }
      return s + "}";
    }
    if (field_.is_real() || field_.is_padic()) return local_invariant().str();
    std::string s = "(";
    const auto& e = exponents();
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
  }

  friend bool operator==(const BrauerClass& a, const BrauerClass& b) {
    return a.field_ == b.field_ && a.payload_ == b.payload_;
  }
  friend bool operator<(const BrauerClass& a, const BrauerClass& b) { return a.payload_ < b.payload_; }

 private:
  explicit BrauerClass(const Field& field) : field_(field) {
    if (field.is_rational()) payload_ = LocalInvariants{};
    else if (field.is_real() || field.is_padic()) payload_ = QZ();
    else if (field.is_abstract()) payload_ = std::vector<Int>(field.presentation().rank(), 0);
  }

  Field field_;
  Payload payload_;
};

inline BrauerClass brauer_add(const BrauerClass& a, const BrauerClass& b) { return a.add(b); }
inline Int brauer_order(const BrauerClass& c) { return c.order(); }
inline BrauerClass p_primary_part(const BrauerClass& c, Int p) { return c.p_part(p); }

}  // namespace tits

#endif  // TITS_BRAUER_CLASS_HPP
