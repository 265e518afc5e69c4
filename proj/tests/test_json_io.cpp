#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tits/json_io.hpp"

using namespace tits;

namespace {

const Field Q = Field::rational();

Json J(const char* s) { return Json::parse(s); }

template <class T, class Parse>
void expect_round_trip(const T& x, Parse parse) {
  Json j = to_json(x);
  T y = parse(j);
  EXPECT_EQ(to_json(y), j);
  EXPECT_EQ(to_json(y).dump(), Json::parse(j.dump()).dump());
}

Field z2z2_declared() {
  AbstractPresentation p;
  p.orders = {2, 2, 4};
  p.relations = {{2, 0, 4}};
  p.names = {"x", "y", "z"};
  p.declared_index = {{{1, 1, 0}, 4}};
  return Field::abstract(p);
}

}  // namespace

TEST(JsonFields, Descriptors) {
  EXPECT_EQ(parse_field("Q").name(), "Q");
  EXPECT_EQ(parse_field("R").name(), "R");
  EXPECT_EQ(parse_field("Qp:7").name(), "Qp:7");
  EXPECT_EQ(parse_field("Fq:9").name(), "Fq:9");
  EXPECT_THROW(parse_field("Qp:x"), schema_error);
  EXPECT_THROW(parse_field("Qp:7x"), schema_error);
  EXPECT_THROW(parse_field("C"), schema_error);
  EXPECT_THROW(parse_field("Qp:9"), domain_error);
  auto loader = [](const std::string& path) -> std::string {
    if (path == "t.json") return R"({"orders":[2,3],"names":["a","b"],"index":[{"exp":[1,0],"index":2}]})";
    return "not json";
  };
  Field f = parse_field("abstract:t.json", loader);
  EXPECT_TRUE(f.is_abstract());
  EXPECT_EQ(f.presentation().orders, (std::vector<Int>{2, 3}));
  EXPECT_THROW(parse_field("abstract:bad.json", loader), schema_error);
  EXPECT_THROW(parse_field("abstract:/nonexistent/file.json"), schema_error);
}

TEST(JsonFields, PresentationRoundTrip) {
  Field f = z2z2_declared();
  Json j = to_json(f.presentation());
  EXPECT_EQ(to_json(presentation_from_json(j)), j);
  EXPECT_THROW(presentation_from_json(J(R"({"orders":[2],"extra":1})")), schema_error);
  EXPECT_THROW(presentation_from_json(J(R"({"orders":[2],"relations":[[1,1]]})")), schema_error);
  EXPECT_THROW(presentation_from_json(J(R"({"orders":[0]})")), domain_error);
}

TEST(JsonBrauer, RoundTripAllBackends) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 100; ++i) {
    expect_round_trip(oracle::random_rational_class(rng, 12), [](const Json& j) { return brauer_class_from_json(j, Q); });
  }
  expect_round_trip(BrauerClass::real(true), [](const Json& j) { return brauer_class_from_json(j, Field::real()); });
  Field P = Field::padic(5);
  expect_round_trip(BrauerClass::local(P, QZ(3, 8)), [&](const Json& j) { return brauer_class_from_json(j, P); });
  Field F = Field::finite(8);
  expect_round_trip(BrauerClass::zero(F), [&](const Json& j) { return brauer_class_from_json(j, F); });
  Field A = z2z2_declared();
  expect_round_trip(BrauerClass::abstract(A, {1, 1, 3}), [&](const Json& j) { return brauer_class_from_json(j, A); });
}

TEST(JsonBrauer, Shorthands) {
  EXPECT_EQ(brauer_class_from_json(J(R"({"quat":[-1,3]})"), Q), quaternion(-1, 3, Q).brauer_class());
  EXPECT_EQ(brauer_class_from_json(J(R"({"quat":["-4/3","1/12"]})"), Q), quaternion(-3, 3, Q).brauer_class());
  EXPECT_EQ(brauer_class_from_json(J(R"({"inv":[["2","1/2"],["oo","1/2"]]})"), Q), quaternion(-1, -1, Q).brauer_class());
}

TEST(JsonBrauer, SchemaErrors) {
  EXPECT_THROW(brauer_class_from_json(J("[1]"), Q), schema_error);
  EXPECT_THROW(brauer_class_from_json(J(R"({"inv":[[4,"1/2"]]})"), Q), domain_error);
  EXPECT_THROW(brauer_class_from_json(J(R"({"inv":[[3,0.5]]})"), Q), schema_error);
  EXPECT_THROW(brauer_class_from_json(J(R"({"inv":[[3,"1/2"],[3,"1/2"]]})"), Q), schema_error);
  EXPECT_THROW(brauer_class_from_json(J(R"({"backend":"R","inv":"1/2"})"), Q), capability_error);
  EXPECT_THROW(brauer_class_from_json(J(R"({"exp":[1]})"), Q), schema_error);
  EXPECT_THROW(brauer_class_from_json(J(R"({"inv":[],"bogus":1})"), Q), schema_error);
  EXPECT_THROW(brauer_class_from_json(J(R"({"exp":[1]})"), z2z2_declared()), schema_error);
}

TEST(JsonCSA, RoundTripAndShorthands) {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 50; ++i) {
    BrauerClass c = oracle::random_rational_class(rng, 6);
    expect_round_trip(CSA(c, c.index() * 2), [](const Json& j) { return csa_from_json(j, Q); });
  }
  EXPECT_EQ(csa_from_json(J(R"({"quat":[-1,3]})"), Q), quaternion(-1, 3, Q));
  EXPECT_EQ(csa_from_json(J(R"({"biquat":[-1,3,-1,7]})"), Q).degree(), 4);
  EXPECT_EQ(csa_from_json(J(R"({"split":5})"), Q), CSA::split(Q, 5));
  EXPECT_EQ(csa_from_json(J(R"({"inv":[[3,"1/3"],[7,"2/3"]],"deg":3})"), Q).period(), 3);
  Field A = z2z2_declared();
  EXPECT_EQ(csa_from_json(J(R"({"exp":[1,1,0],"deg":4})"), A).index(), 4);
  EXPECT_THROW(csa_from_json(J(R"({"inv":[[3,"1/3"],[7,"2/3"]],"deg":2})"), Q), domain_error);
  EXPECT_THROW(csa_from_json(J(R"({"quat":[-1,3],"deg":2})"), Q), schema_error);
  EXPECT_THROW(csa_from_json(J(R"({"inv":[]})"), Q), schema_error);
}

TEST(JsonForms, RoundTripAndShorthands) {
  std::mt19937_64 rng(107);
  for (int i = 0; i < 50; ++i) {
    std::vector<Int> a;
    for (int k = 0; k < 5; ++k) a.push_back(oracle::random_square_free(rng, 50));
    expect_round_trip(QuadraticForm::of(a, Q), [](const Json& j) { return form_from_json(j, Q); });
  }
  EXPECT_EQ(form_from_json(J(R"({"albert":[1,1,-1,3]})"), Q).dim(), 6u);
  EXPECT_EQ(form_from_json(J(R"({"prop_last":[[-1,3],[-1,7]]})"), Q).dim(), 5u);
  EXPECT_EQ(form_from_json(J(R"({"coeffs":["18","-12/1"]})"), Q).coeffs()[0].rep(), 2);
  EXPECT_THROW(form_from_json(J(R"({"coeffs":[]})"), Q), schema_error);
  EXPECT_THROW(form_from_json(J(R"({"coeffs":[0]})"), Q), domain_error);
  EXPECT_THROW(form_from_json(J(R"({"coeffs":[1],"albert":[1,1,1,1]})"), Q), schema_error);
  EXPECT_THROW(form_from_json(J(R"({"coeffs":[1,2]})"), Field::padic(3)), capability_error);
  EXPECT_THROW(form_from_json(J(R"({"coeffs":[1.5]})"), Q), schema_error);
}

TEST(JsonRT, RoundTripElementsAndCanonicalForms) {
  std::mt19937_64 rng(109);
  for (int i = 0; i < 100; ++i) {
    RTElement e(Q);
    for (int k = 0; k < 4; ++k) e.add_term(oracle::random_rational_class(rng, 12), static_cast<Int>(rng() % 7) - 3);
    expect_round_trip(e, [](const Json& j) { return rt_from_json(j, Q); });
    RTCanonical c = normalize(e);
    EXPECT_EQ(canonical_from_json(to_json(c), Q), c);
  }
  EXPECT_THROW(rt_from_json(J(R"([[1]])"), Q), schema_error);
  EXPECT_THROW(rt_from_json(J(R"({"a":1})"), Q), schema_error);
  EXPECT_THROW(canonical_from_json(J(R"({"augmentation":1,"components":[{"prime":3,"class":{"quat":[-1,3]},"mult":1}]})"), Q),
               domain_error);
}

TEST(JsonRT, CanonicalOutputIsSortedAndDeterministic) {
  BrauerClass b = BrauerClass::rational({{Place::finite(3), QZ(1, 6)}, {Place::finite(5), QZ(5, 6)}});
  Json j = to_json(normalize(RTElement::of(b)));
  ASSERT_EQ(j["components"].size(), 2u);
  EXPECT_EQ(j["components"][0]["prime"], 2);
  EXPECT_EQ(j["components"][1]["prime"], 3);
  EXPECT_EQ(j["components"][1]["class"]["inv"], J(R"([["3","2/3"],["5","1/3"]])"));
  EXPECT_EQ(j.dump(), to_json(normalize(RTElement::of(b))).dump());
}

TEST(JsonVarieties, RoundTripEveryFamily) {
  Field A = z2z2_declared();
  std::vector<std::pair<Field, const char*>> cases = {
      {Q, R"({"sb":{"quat":[-1,3]}})"},
      {Q, R"({"gr":{"d":2,"algebra":{"biquat":[-1,3,-1,7]}}})"},
      {Q, R"({"quadric":{"albert":[1,1,-1,3]}})"},
      {Q, R"({"hp":{"inv":[[3,"1/2"],[7,"1/2"]],"deg":6}})"},
      {Q, R"({"iv":{"biquat":[-1,3,-1,7]}})"},
      {Q, R"({"iv":{"form":{"coeffs":[1,-1,1,-1,1,-1]}}})"},
      {Q, R"({"product":[{"sb":{"split":3}},{"quadric":{"coeffs":[1,1,1]}}]})"},
      {A, R"({"iv":{"quats":[{"exp":[1,0,0]},{"exp":[0,1,0]}]}})"},
  };
  for (const auto& [f, text] : cases) {
    TwistedVariety v = variety_from_json(J(text), f);
    Json j = to_json(v);
    TwistedVariety w = variety_from_json(j, f);
    EXPECT_EQ(to_json(w), j) << text;
    EXPECT_EQ(measure(w), measure(v)) << text;
  }
}

TEST(JsonVarieties, SchemaErrors) {
  EXPECT_THROW(variety_from_json(J(R"({"sb":{"split":2},"hp":{"split":2}})"), Q), schema_error);
  EXPECT_THROW(variety_from_json(J(R"({"torus":{}})"), Q), schema_error);
  EXPECT_THROW(variety_from_json(J(R"({"product":[]})"), Q), schema_error);
  EXPECT_THROW(variety_from_json(J(R"({"gr":{"d":0,"algebra":{"split":3}}})"), Q), domain_error);
  EXPECT_THROW(variety_from_json(J(R"({"gr":{"algebra":{"split":3}}})"), Q), schema_error);
  EXPECT_THROW(variety_from_json(J(R"({"quadric":{"coeffs":[1,2]}})"), Q), domain_error);
}

TEST(JsonVerdicts, RoundTrip) {
  Verdict v = compare_product_sb(quaternion(-1, 3, Q), quaternion(-1, 7, Q), quaternion(-1, 7, Q), quaternion(-1, 3, Q));
  Json j = to_json(v);
  EXPECT_EQ(to_json(verdict_from_json(j)), j);
  Verdict u;
  u.isomorphic = Tri::no;
  EXPECT_EQ(to_json(verdict_from_json(to_json(u))), to_json(u));
  EXPECT_TRUE(to_json(u)["subgroup_equal"].is_null());
  EXPECT_THROW(tri_from_string("maybe"), schema_error);
  Json bad = j;
  bad["measure_equal"] = "yes";
  EXPECT_THROW(verdict_from_json(bad), schema_error);
}
