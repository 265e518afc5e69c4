#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tits/cli.hpp"

using tits::Json;
using namespace tits::cli;

namespace {

Response cli(std::vector<std::string> args) { return run_argv(std::move(args)); }

Json out_json(const Response& r) {
  Json j = Json::parse(r.out, nullptr, false);
  EXPECT_FALSE(j.is_discarded()) << r.out << r.err;
  return j;
}

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Runs the installed binary; returns (exit status, stdout).
std::pair<int, std::string> run_binary(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(TITS_CLI_BINARY);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tits_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST(Cli, MeasureExample) {
  Response r = cli({"measure", "--field", "Q", R"({"sb":{"quat":[-1,3]}})"});
  ASSERT_EQ(r.status, kOk) << r.err;
  Json j = out_json(r);
  EXPECT_EQ(j["augmentation"], 2);
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["family"], "sb");
}

TEST(Cli, CompareQuadricFamily) {
  Response r = cli({"compare", "--family", "quadric", R"({"coeffs":[1,1,-1,1,-3,-3]})", R"({"coeffs":[1,1,-1,1,-7,-7]})"});
  ASSERT_EQ(r.status, kOk) << r.err;
  Json j = out_json(r);
  EXPECT_EQ(j["measure_equal"], false);
  EXPECT_EQ(j["isomorphic"], "no");
  EXPECT_EQ(j["family"], "quadric");
}

TEST(Cli, RtEqualOnDefiningRelation) {
  Response r = cli({"rt", "equal", R"([[1,{"quat":[-1,3]}],[1,{"inv":[[3,"1/3"],[7,"2/3"]]}]])",
                    R"({"add":[[[1,{"inv":[]}]],[[1,{"inv":[[2,"1/2"],[3,"5/6"],[7,"2/3"]]}]]]})"});
  ASSERT_EQ(r.status, kOk) << r.err;
  EXPECT_EQ(out_json(r)["equal"], true);
}

TEST(Cli, RtExpressions) {
  Response m = cli({"rt", "mul", R"([[1,{"inv":[]}],[1,{"quat":[-1,3]}]])", R"([[1,{"inv":[]}],[1,{"quat":[-1,3]}]])"});
  ASSERT_EQ(m.status, kOk) << m.err;
  Json j = out_json(m);
  EXPECT_EQ(j["terms"], Json::parse(R"([[2,{"backend":"Q","inv":[]}],[2,{"backend":"Q","inv":[["2","1/2"],["3","1/2"]]}]])"));
  Response z = cli({"rt", "eval", R"({"add":[{"measure":{"sb":{"split":3}}},{"neg":{"scale":[3,[[1,{"inv":[]}]]]}}]})"});
  ASSERT_EQ(z.status, kOk) << z.err;
  EXPECT_EQ(out_json(z)["augmentation"], 0);
  EXPECT_EQ(out_json(z)["terms"], Json::array());
}

TEST(Cli, CsaAndQform) {
  Json c = out_json(cli({"csa", "quaternion", "[-1,3]"}));
  EXPECT_EQ(c["period"], 2);
  EXPECT_EQ(c["is_division"], true);
  Json b = out_json(cli({"csa", "biquaternion", "[-1,3,-1,7]"}));
  EXPECT_EQ(b["index"], 2);
  Json q = out_json(cli({"qform", R"({"coeffs":[1,2]})"}));
  EXPECT_EQ(q["discriminant"], "-2");
  EXPECT_EQ(q["clifford"]["kind"], "C");
  Json a = out_json(cli({"qform", "--albert", "[1,1,-1,3]"}));
  EXPECT_EQ(a["clifford"]["kind"], "C0+");
  Json r = out_json(cli({"qform", "--field", "R", R"({"coeffs":[1,1,1]})"}));
  EXPECT_TRUE(r["anisotropic"].is_null());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"measure", "{not json"}).status, kSchema);
  EXPECT_EQ(cli({"measure"}).status, kSchema);
  EXPECT_EQ(cli({"measure", R"({"sb":{"split":2}})", "extra"}).status, kSchema);
  EXPECT_EQ(cli({"frobnicate"}).status, kSchema);
  EXPECT_EQ(cli({"compare", "--family", "zeta", "1", "2"}).status, kSchema);
  EXPECT_EQ(cli({"measure", "--field", "Z", R"({"sb":{"split":2}})"}).status, kSchema);
  Response d = cli({"measure", R"({"gr":{"d":2,"algebra":{"quat":[-1,3]}}})"});
  EXPECT_EQ(d.status, kDomain);
  EXPECT_NE(d.err.find("Grassmannian"), std::string::npos);
  EXPECT_EQ(cli({"qform", "--field", "Qp:5", R"({"coeffs":[1,2,3]})"}).status, kCapability);
  EXPECT_EQ(cli({"compare", "--family", "sb", R"({"quat":[-1,3]})", R"({"class":{"backend":"R","inv":"1/2"},"deg":2})"}).status,
            kCapability);
  EXPECT_EQ(cli({"--help"}).status, kOk);
}

TEST(Cli, TableOutput) {
  Response r = cli({"csa", "--output", "table", "quaternion", "[-1,3]"});
  ASSERT_EQ(r.status, kOk);
  EXPECT_NE(r.out.find("period"), std::string::npos);
  EXPECT_TRUE(Json::parse(r.out, nullptr, false).is_discarded());
}

TEST(Cli, DeterministicOutput) {
  std::vector<std::string> args = {"measure", R"({"product":[{"quadric":{"albert":[1,1,-1,3]}},{"sb":{"inv":[[3,"1/3"],[7,"2/3"]],"deg":3}}]})"};
  Response a = cli(args), b = cli(args);
  ASSERT_EQ(a.status, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto [s1, o1] = run_binary(args);
  auto [s2, o2] = run_binary(args);
  EXPECT_EQ(s1, 0);
  EXPECT_EQ(o1, o2);
  EXPECT_EQ(o1, a.out);
}

TEST(Cli, BinaryExitStatuses) {
  EXPECT_EQ(run_binary({"measure", R"({"sb":{"quat":[-1,3]}})"}).first, 0);
  EXPECT_EQ(run_binary({"measure", "{"}).first, 2);
  EXPECT_EQ(run_binary({"measure", R"({"quadric":{"coeffs":[1,2]}})"}).first, 3);
  EXPECT_EQ(run_binary({"qform", "--field", "Fq:9", R"({"coeffs":[1]})"}).first, 4);
}

TEST(Corpus, GoldenCorpusPasses) {
  Response r = cli({"corpus"});
  EXPECT_EQ(r.status, kOk) << r.out << r.err;
  Json j = out_json(r);
  EXPECT_GT(j["total"].get<int>(), 20);
  EXPECT_EQ(j["failed"], Json::array());
}

TEST(Corpus, PerturbedExpectationFailsWithNamedCase) {
  std::ifstream in(TITS_CORPUS_DEFAULT);
  Json doc = Json::parse(in);
  ASSERT_FALSE(doc["cases"].empty());
  std::string victim;
  for (auto& c : doc["cases"]) {
    if (c.contains("expect") && c["expect"].contains("count")) {
      c["expect"]["count"] = c["expect"]["count"].get<int>() + 1;
      victim = c["id"].get<std::string>();
      break;
    }
  }
  ASSERT_FALSE(victim.empty());
  // Abstract field files are resolved relative to the corpus file.
  for (auto& c : doc["cases"]) {
    for (auto& a : c["args"]) {
      std::string s = a.get<std::string>();
      auto pos = s.find("${CORPUS_DIR}");
      if (pos != std::string::npos) {
        s.replace(pos, 13, std::filesystem::path(TITS_CORPUS_DEFAULT).parent_path().string());
        a = s;
      }
    }
  }
  auto path = temp_file("perturbed.json");
  std::ofstream(path) << doc.dump(2);
  Response r = cli({"corpus", "--file", path.string(), "--output", "table"});
  EXPECT_EQ(r.status, kMismatch);
  EXPECT_NE(r.out.find("FAIL " + victim), std::string::npos) << r.out;
  Response j = cli({"corpus", "--file", path.string()});
  EXPECT_EQ(out_json(j)["failed"], Json::array({victim}));
  std::filesystem::remove(path);
}

TEST(Corpus, FilterAndEmptySelection) {
  Response none = cli({"corpus", "--filter", "no-case-has-this-id"});
  EXPECT_EQ(none.status, kOk);
  EXPECT_EQ(out_json(none)["total"], 0);
  Response some = cli({"corpus", "--filter", "conics"});
  EXPECT_EQ(some.status, kOk);
  EXPECT_GE(out_json(some)["total"].get<int>(), 2);
}

TEST(Corpus, MalformedFiles) {
  auto path = temp_file("bad.json");
  std::ofstream(path) << R"({"cases":[{"id":"x","args":"measure"}]})";
  EXPECT_EQ(cli({"corpus", "--file", path.string()}).status, kSchema);
  std::ofstream(path) << "[]";
  EXPECT_EQ(cli({"corpus", "--file", path.string()}).status, kSchema);
  EXPECT_EQ(cli({"corpus", "--file", "/nonexistent/corpus.json"}).status, kSchema);
  EXPECT_EQ(cli({"corpus", "payload"}).status, kSchema);
  std::filesystem::remove(path);
}
