#ifndef TITS_JSON_IO_HPP
#define TITS_JSON_IO_HPP

// JSON encoding of every domain type. Serialization is canonical: object
// keys are sorted (nlohmann's default std::map), fractions are reduced
// strings, places and terms are emitted in their sorted order. Parsing
// throws schema_error on malformed input and leaves domain checks to the
// constructors, so a parsed value always satisfies its invariants.
//
// Every parser takes the ambient field: class payloads must match it.

#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tits/classify.hpp"

namespace tits {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& what) { throw schema_error(what); }

inline void require_object(const Json& j, const char* what) {
  if (!j.is_object()) schema_fail(std::string(what) + ": expected an object");
}

inline void require_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  require_object(j, what);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) schema_fail(std::string(what) + ": unexpected key \"" + it.key() + "\"");
  }
}

inline const Json& member(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) schema_fail(std::string(what) + ": missing key \"" + key + "\"");
  return *it;
}

inline Int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) schema_fail(std::string(what) + ": expected an integer");
  return j.get<Int>();
}

inline std::vector<Int> as_int_list(const Json& j, const char* what) {
  if (!j.is_array()) schema_fail(std::string(what) + ": expected an array of integers");
  std::vector<Int> out;
  for (const auto& x : j) out.push_back(as_int(x, what));
  return out;
}

inline const Json& as_array(const Json& j, std::size_t size, const char* what) {
  if (!j.is_array() || (size != 0 && j.size() != size)) {
    schema_fail(std::string(what) + ": expected an array" + (size ? " of length " + std::to_string(size) : ""));
  }
  return j;
}

/// Integer "a", rational "a/b" (as string) or a JSON integer; no reduction mod 1.
inline std::pair<Int, Int> as_fraction(const Json& j, const char* what) {
  if (j.is_number_integer()) return {j.get<Int>(), 1};
  if (!j.is_string()) schema_fail(std::string(what) + ": expected an integer or a string \"a\" / \"a/b\"");
  std::string s = j.get<std::string>();
  auto parse_int = [&](const std::string& t) {
    try {
      std::size_t used = 0;
      Int v = std::stoll(t, &used);
      if (used != t.size()) schema_fail(std::string(what) + ": bad number \"" + s + "\"");
      return v;
    } catch (const std::logic_error&) {
      schema_fail(std::string(what) + ": bad number \"" + s + "\"");
    }
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return {parse_int(s), 1};
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) schema_fail(std::string(what) + ": zero denominator in \"" + s + "\"");
  return {parse_int(s.substr(0, slash)), den};
}

inline SquareClass as_square_class(const Json& j, const Field& field, const char* what) {
  auto [num, den] = as_fraction(j, what);
  return SquareClass::of(num, den, field);
}

inline std::string dump(const Json& j) { return j.dump(); }

}  // namespace detail

// ---- fields -------------------------------------------------------------

inline Json to_json(const AbstractPresentation& p) {
  Json idx = Json::array();
  for (const auto& [e, n] : p.declared_index) idx.push_back({{"exp", e}, {"index", n}});
  Json j = {{"orders", p.orders}, {"relations", p.relations}, {"index", idx}};
  if (!p.names.empty()) j["names"] = p.names;
  return j;
}

inline AbstractPresentation presentation_from_json(const Json& j) {
  using namespace detail;
  require_keys(j, {"orders", "relations", "index", "names"}, "abstract field");
  AbstractPresentation p;
  p.orders = as_int_list(member(j, "orders", "abstract field"), "abstract field orders");
  if (j.contains("relations")) {
    if (!j["relations"].is_array()) schema_fail("abstract field relations: expected an array");
    for (const auto& r : j["relations"]) {
      p.relations.push_back(as_int_list(r, "abstract field relation"));
      if (p.relations.back().size() != p.orders.size()) schema_fail("abstract field relation: wrong length");
    }
  }
  if (j.contains("index")) {
    if (!j["index"].is_array()) schema_fail("abstract field index: expected an array");
    for (const auto& e : j["index"]) {
      require_keys(e, {"exp", "index"}, "abstract field index entry");
      auto exps = as_int_list(member(e, "exp", "abstract field index entry"), "abstract field index exp");
      if (exps.size() != p.orders.size()) schema_fail("abstract field index entry: wrong exponent length");
      p.declared_index.emplace_back(std::move(exps), as_int(member(e, "index", "index entry"), "index"));
    }
  }
  if (j.contains("names")) {
    if (!j["names"].is_array()) schema_fail("abstract field names: expected an array of strings");
    for (const auto& n : j["names"]) {
      if (!n.is_string()) schema_fail("abstract field names: expected strings");
      p.names.push_back(n.get<std::string>());
    }
  }
  p.validate();
  return p;
}

/// Parses Q | R | Qp:<p> | Fq:<q> | abstract:<file>. The file loader is a
/// parameter so callers can redirect it in tests.
inline Field parse_field(const std::string& desc,
                         const std::function<std::string(const std::string&)>& load_file = {}) {
  auto suffix_int = [&](std::size_t from) {
    try {
      std::size_t used = 0;
      std::string t = desc.substr(from);
      Int v = std::stoll(t, &used);
      if (used != t.size()) throw schema_error("bad field descriptor: " + desc);
      return v;
    } catch (const std::logic_error&) {
      throw schema_error("bad field descriptor: " + desc);
    }
  };
  if (desc == "Q") return Field::rational();
  if (desc == "R") return Field::real();
  if (desc.rfind("Qp:", 0) == 0) return Field::padic(suffix_int(3));
  if (desc.rfind("Fq:", 0) == 0) return Field::finite(suffix_int(3));
  if (desc.rfind("abstract:", 0) == 0) {
    std::string path = desc.substr(9);
    std::string text;
    if (load_file) {
      text = load_file(path);
    } else {
      std::ifstream in(path);
      if (!in) throw schema_error("cannot read abstract field file: " + path);
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw schema_error("abstract field file is not valid JSON: " + path);
    return Field::abstract(presentation_from_json(j));
  }
  throw schema_error("unknown field descriptor \"" + desc + "\" (expected Q, R, Qp:<p>, Fq:<q> or abstract:<file>)");
}

// ---- Brauer classes ---------------------------------------------------------

inline Json to_json(const BrauerClass& c) {
  const Field& f = c.field();
  Json j = {{"backend", f.name()}};
  if (f.is_rational()) {
    Json inv = Json::array();
    for (const auto& [v, x] : c.invariants()) inv.push_back(Json::array({v.str(), x.str()}));
    j["inv"] = inv;
  } else if (f.is_real() || f.is_padic()) {
    j["inv"] = c.local_invariant().str();
  } else if (f.is_abstract()) {
    j["exp"] = c.exponents();
  }
  return j;
}

inline BrauerClass brauer_class_from_json(const Json& j, const Field& field) {
  using namespace detail;
  require_object(j, "Brauer class");
  if (j.contains("quat")) {
    require_keys(j, {"quat"}, "Brauer class");
    const Json& q = as_array(j["quat"], 2, "quat");
    return quaternion_class(as_square_class(q[0], field, "quat"), as_square_class(q[1], field, "quat"));
  }
  require_keys(j, {"backend", "inv", "exp"}, "Brauer class");
  if (j.contains("backend")) {
    if (!j["backend"].is_string()) schema_fail("Brauer class backend: expected a string");
    std::string b = j["backend"].get<std::string>();
    if (b != field.name()) throw capability_error("Brauer class backend " + b + " does not match field " + field.name());
  }
  if (field.is_finite()) {
    if (j.contains("inv") || j.contains("exp")) schema_fail("Brauer class over a finite field carries no payload");
    return BrauerClass::zero(field);
  }
  if (field.is_abstract()) {
    if (j.contains("inv")) schema_fail("abstract Brauer class: use \"exp\", not \"inv\"");
    auto exps = as_int_list(member(j, "exp", "abstract Brauer class"), "exp");
    if (exps.size() != field.presentation().rank()) schema_fail("abstract Brauer class: exponent vector has wrong length");
    return BrauerClass::abstract(field, std::move(exps));
  }
  if (j.contains("exp")) schema_fail("Brauer class: \"exp\" is only valid over an abstract field");
  const Json& inv = member(j, "inv", "Brauer class");
  if (field.is_real() || field.is_padic()) {
    if (!inv.is_string()) schema_fail("Brauer class invariant: expected a fraction string");
    return BrauerClass::local(field, QZ::parse(inv.get<std::string>()));
  }
  if (!inv.is_array()) schema_fail("Brauer class over Q: \"inv\" must be a list of [place, fraction]");
  BrauerClass::LocalInvariants m;
  for (const auto& e : inv) {
    const Json& pair = as_array(e, 2, "Brauer class invariant entry");
    if (!pair[1].is_string()) schema_fail("Brauer class invariant: expected a fraction string");
    Place v;
    if (pair[0].is_string() && pair[0].get<std::string>() == "oo") {
      v = Place::real();
    } else {
      auto [p, d] = as_fraction(pair[0], "place");
      if (d != 1) schema_fail("place must be \"oo\" or a prime");
      v = Place::finite(p);
    }
    if (m.count(v)) schema_fail("Brauer class over Q: duplicate place " + v.str());
    m[v] = QZ::parse(pair[1].get<std::string>());
  }
  return BrauerClass::rational(m);
}

// ---- CSAs -------------------------------------------------------------------

inline Json to_json(const CSA& a) { return {{"class", to_json(a.brauer_class())}, {"deg", a.degree()}}; }

/// Accepts {"class":..,"deg":n} plus the shorthands {"quat":[a,b]},
/// {"biquat":[a1,b1,a2,b2]}, {"split":n}, {"inv":[..],"deg":n} and
/// {"exp":[..],"deg":n}.
inline CSA csa_from_json(const Json& j, const Field& field) {
  using namespace detail;
  require_object(j, "CSA");
  if (j.contains("quat")) {
    require_keys(j, {"quat"}, "CSA");
    return CSA(brauer_class_from_json(j, field), 2);
  }
  if (j.contains("biquat")) {
    require_keys(j, {"biquat"}, "CSA");
    const Json& q = as_array(j["biquat"], 4, "biquat");
    auto s = [&](std::size_t i) { return as_square_class(q[i], field, "biquat"); };
    return tensor(quaternion(s(0), s(1)), quaternion(s(2), s(3)));
  }
  if (j.contains("split")) {
    require_keys(j, {"split"}, "CSA");
    return CSA::split(field, as_int(j["split"], "split degree"));
  }
  Int deg = as_int(member(j, "deg", "CSA"), "CSA degree");
  if (j.contains("class")) {
    require_keys(j, {"class", "deg"}, "CSA");
    return CSA(brauer_class_from_json(j["class"], field), deg);
  }
  require_keys(j, {"inv", "exp", "deg"}, "CSA");
  Json cls = j;
  cls.erase("deg");
  return CSA(brauer_class_from_json(cls, field), deg);
}

// ---- quadratic forms --------------------------------------------------------

inline Json to_json(const QuadraticForm& q) {
  Json cs = Json::array();
  for (const auto& c : q.coeffs()) cs.push_back(c.str());
  return {{"coeffs", cs}};
}

/// {"coeffs":[..]}, {"albert":[a1,b1,a2,b2]} or {"prop_last":[[a,b],..]}.
inline QuadraticForm form_from_json(const Json& j, const Field& field) {
  using namespace detail;
  require_keys(j, {"coeffs", "albert", "prop_last"}, "quadratic form");
  if (j.size() != 1) schema_fail("quadratic form: exactly one of coeffs, albert, prop_last");
  if (!field.supports_square_classes()) throw capability_error("quadratic forms are unavailable over " + field.name());
  if (j.contains("albert")) {
    const Json& a = as_array(j["albert"], 4, "albert");
    auto s = [&](std::size_t i) { return as_square_class(a[i], field, "albert"); };
    return albert_form(s(0), s(1), s(2), s(3));
  }
  if (j.contains("prop_last")) {
    const Json& list = j["prop_last"];
    if (!list.is_array() || list.empty()) schema_fail("prop_last: expected a nonempty list of [a,b]");
    std::vector<std::pair<SquareClass, SquareClass>> qs;
    for (const auto& e : list) {
      const Json& ab = as_array(e, 2, "prop_last entry");
      qs.emplace_back(as_square_class(ab[0], field, "prop_last"), as_square_class(ab[1], field, "prop_last"));
    }
    return prop_last_form(qs);
  }
  const Json& cs = j["coeffs"];
  if (!cs.is_array() || cs.empty()) schema_fail("quadratic form: coeffs must be a nonempty array");
  std::vector<SquareClass> v;
  for (const auto& c : cs) v.push_back(as_square_class(c, field, "coefficient"));
  return QuadraticForm(std::move(v));
}

// ---- R_T elements -----------------------------------------------------------

inline Json to_json(const RTElement& e) {
  Json out = Json::array();
  for (const auto& [c, m] : e.terms()) out.push_back(Json::array({m, to_json(c)}));
  return out;
}

inline RTElement rt_from_json(const Json& j, const Field& field) {
  using namespace detail;
  if (!j.is_array()) schema_fail("R_T element: expected a list of [multiplicity, class]");
  RTElement e(field);
  for (const auto& t : j) {
    const Json& pair = as_array(t, 2, "R_T term");
    e.add_term(brauer_class_from_json(pair[1], field), as_int(pair[0], "R_T multiplicity"));
  }
  return e;
}

inline Json to_json(const RTCanonical& c) {
  // Order: prime, then the class's serialized text.
  std::vector<std::tuple<Int, std::string, Json, Int>> rows;
  for (const auto& [key, m] : c.primary) {
    Json cls = to_json(key.second);
    rows.emplace_back(key.first, cls.dump(), cls, m);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  Json comps = Json::array();
  for (const auto& [p, s, cls, m] : rows) comps.push_back({{"prime", p}, {"class", cls}, {"mult", m}});
  return {{"augmentation", c.augmentation}, {"components", comps}};
}

inline RTCanonical canonical_from_json(const Json& j, const Field& field) {
  using namespace detail;
  require_keys(j, {"augmentation", "components"}, "canonical R_T element");
  RTCanonical c;
  c.augmentation = as_int(member(j, "augmentation", "canonical R_T element"), "augmentation");
  const Json& comps = member(j, "components", "canonical R_T element");
  if (!comps.is_array()) schema_fail("canonical R_T element: components must be an array");
  for (const auto& e : comps) {
    require_keys(e, {"prime", "class", "mult"}, "canonical component");
    Int p = as_int(member(e, "prime", "canonical component"), "prime");
    BrauerClass cls = brauer_class_from_json(member(e, "class", "canonical component"), field);
    if (cls.is_zero() || p_power_part(cls.order(), p) != cls.order()) {
      throw domain_error("canonical component: class must be nontrivial and " + std::to_string(p) + "-primary");
    }
    Int m = as_int(member(e, "mult", "canonical component"), "mult");
    if (m == 0) schema_fail("canonical component: zero multiplicity");
    c.primary[{p, cls}] = m;
  }
  return c;
}

// ---- twisted varieties ------------------------------------------------------

inline Json to_json(const TwistedVariety& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using V = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<V, SeveriBrauer>) return {{"sb", to_json(x.algebra)}};
        else if constexpr (std::is_same_v<V, Grassmannian>)
          return {{"gr", {{"d", x.d}, {"algebra", to_json(x.algebra)}}}};
        else if constexpr (std::is_same_v<V, Quadric>) return {{"quadric", to_json(x.form)}};
        else if constexpr (std::is_same_v<V, QuaternionProjective>) return {{"hp", to_json(x.algebra)}};
        else if constexpr (std::is_same_v<V, InvolutionVariety>)
          return {{"iv", {{"algebra", to_json(x.algebra)}, {"c_plus", to_json(x.c_plus)}, {"c_minus", to_json(x.c_minus)}}}};
        else {
          Json fs = Json::array();
          for (const auto& f : x.factors) fs.push_back(to_json(f));
          return {{"product", fs}};
        }
      },
      v.kind);
}

inline TwistedVariety variety_from_json(const Json& j, const Field& field) {
  using namespace detail;
  require_keys(j, {"sb", "gr", "quadric", "hp", "iv", "product"}, "variety");
  if (j.size() != 1) schema_fail("variety: exactly one family key (sb, gr, quadric, hp, iv, product)");
  const std::string key = j.begin().key();
  const Json& body = j.begin().value();
  if (key == "sb") {
    TwistedVariety v = severi_brauer(csa_from_json(body, field));
    validate(v);
    return v;
  }
  if (key == "gr") {
    require_keys(body, {"d", "algebra"}, "Grassmannian");
    return grassmannian(as_int(member(body, "d", "Grassmannian"), "d"),
                        csa_from_json(member(body, "algebra", "Grassmannian"), field));
  }
  if (key == "quadric") return quadric(form_from_json(body, field));
  if (key == "hp") return quaternion_projective(csa_from_json(body, field));
  if (key == "iv") {
    require_object(body, "involution variety");
    if (body.contains("form")) {
      require_keys(body, {"form"}, "involution variety");
      return involution_from_form(form_from_json(body["form"], field));
    }
    if (body.contains("biquat")) {
      require_keys(body, {"biquat"}, "involution variety");
      const Json& q = as_array(body["biquat"], 4, "biquat");
      auto s = [&](std::size_t i) { return as_square_class(q[i], field, "biquat"); };
      return involution_from_biquaternion(s(0), s(1), s(2), s(3));
    }
    if (body.contains("quats")) {
      require_keys(body, {"quats"}, "involution variety");
      const Json& q = as_array(body["quats"], 2, "quats");
      return involution_from_quaternion_classes(brauer_class_from_json(q[0], field),
                                                brauer_class_from_json(q[1], field));
    }
    require_keys(body, {"algebra", "c_plus", "c_minus"}, "involution variety");
    return involution_variety(csa_from_json(member(body, "algebra", "involution variety"), field),
                              brauer_class_from_json(member(body, "c_plus", "involution variety"), field),
                              brauer_class_from_json(member(body, "c_minus", "involution variety"), field));
  }
  if (!body.is_array() || body.empty()) schema_fail("product: expected a nonempty list of varieties");
  std::vector<TwistedVariety> fs;
  for (const auto& f : body) fs.push_back(variety_from_json(f, field));
  return product(std::move(fs));
}

// ---- verdicts -----------------------------------------------------------------

inline Tri tri_from_string(const std::string& s) {
  if (s == "yes") return Tri::yes;
  if (s == "no") return Tri::no;
  if (s == "unknown") return Tri::unknown;
  throw schema_error("verdict: expected yes/no/unknown, got \"" + s + "\"");
}

inline Json to_json(const Verdict& v) {
  Json matches = Json::array();
  for (const auto& [i, k] : v.factor_matches) matches.push_back(Json::array({i, k}));
  return {{"measure_equal", v.measure_equal},
          {"count_equal", v.count_equal},
          {"subgroup_equal", v.subgroup_equal ? Json(*v.subgroup_equal) : Json(nullptr)},
          {"isomorphic", to_string(v.isomorphic)},
          {"birational", to_string(v.birational)},
          {"stably_birational", to_string(v.stably_birational)},
          {"chain", v.chain},
          {"factor_matches", matches}};
}

inline Verdict verdict_from_json(const Json& j) {
  using namespace detail;
  require_keys(j,
               {"measure_equal", "count_equal", "subgroup_equal", "isomorphic", "birational", "stably_birational",
                "chain", "factor_matches"},
               "verdict");
  auto boolean = [&](const char* k) {
    const Json& x = member(j, k, "verdict");
    if (!x.is_boolean()) schema_fail(std::string("verdict ") + k + ": expected a boolean");
    return x.get<bool>();
  };
  auto tri = [&](const char* k) {
    const Json& x = member(j, k, "verdict");
    if (!x.is_string()) schema_fail(std::string("verdict ") + k + ": expected a string");
    return tri_from_string(x.get<std::string>());
  };
  Verdict v;
  v.measure_equal = boolean("measure_equal");
  v.count_equal = boolean("count_equal");
  const Json& sg = member(j, "subgroup_equal", "verdict");
  if (sg.is_boolean()) v.subgroup_equal = sg.get<bool>();
  else if (!sg.is_null()) schema_fail("verdict subgroup_equal: expected a boolean or null");
  v.isomorphic = tri("isomorphic");
  v.birational = tri("birational");
  v.stably_birational = tri("stably_birational");
  const Json& chain = member(j, "chain", "verdict");
  if (!chain.is_array()) schema_fail("verdict chain: expected an array of strings");
  for (const auto& s : chain) {
    if (!s.is_string()) schema_fail("verdict chain: expected strings");
    v.chain.push_back(s.get<std::string>());
  }
  if (j.contains("factor_matches")) {
    for (const auto& m : as_array(j["factor_matches"], 0, "factor_matches")) {
      const Json& p = as_array(m, 2, "factor match");
      v.factor_matches.emplace_back(static_cast<int>(as_int(p[0], "factor")), static_cast<int>(as_int(p[1], "factor")));
    }
  }
  return v;
}

}  // namespace tits

#endif  // TITS_JSON_IO_HPP
