#ifndef TITS_CLI_HPP
#define TITS_CLI_HPP

// Request handling behind the `tits` command-line tool. Kept in the header
// library so the golden corpus and the tests drive exactly the code path the
// binary uses.
//
// Exit status: 0 success, 1 corpus mismatch, 2 schema error, 3 domain
// precondition error, 4 backend capability error (including int64 overflow).

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tits/json_io.hpp"

#ifndef TITS_CORPUS_DEFAULT
#define TITS_CORPUS_DEFAULT "corpus/golden.json"
#endif

namespace tits::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kSchema = 2, kDomain = 3, kCapability = 4, kInternal = 70 };

struct Request {
  std::string command;  // csa | qform | measure | rt | compare | corpus
  std::string field = "Q";
  std::string op;       // csa: quaternion|biquaternion|raw; rt: eval|normalize|equal|mul
  std::string family;   // compare selector
  std::vector<std::string> payloads;
  bool albert = false;
  bool prop_last = false;
  bool table = false;
  std::string corpus_file = TITS_CORPUS_DEFAULT;
  std::string corpus_filter;
};

struct Response {
  int status = kOk;
  std::string out;
  std::string err;
};

namespace detail {

inline Json parse_payload(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw schema_error("payload is not valid JSON: " + text);
  return j;
}

inline void require_payloads(const Request& r, std::size_t n, const std::string& what) {
  if (r.payloads.size() != n) {
    throw schema_error(what + ": expected " + std::to_string(n) + " JSON payload(s), got " +
                       std::to_string(r.payloads.size()));
  }
}

inline std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline std::string render_table(const Json& j) {
  std::ostringstream os;
  if (!j.is_object()) {
    os << scalar_text(j) << "\n";
    return os.str();
  }
  std::size_t width = 0;
  for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_string(); })) {
      os << std::left << std::setw(static_cast<int>(width)) << it.key() << "  " << v[0].get<std::string>() << "\n";
      for (std::size_t i = 1; i < v.size(); ++i) {
        os << std::string(width + 2, ' ') << v[i].get<std::string>() << "\n";
      }
    } else {
      os << std::left << std::setw(static_cast<int>(width)) << it.key() << "  " << scalar_text(v) << "\n";
    }
  }
  return os.str();
}

// ---- rt expressions ------------------------------------------------------------
// literal list of [mult, class] | {"measure": variety} | {"add": [e..]} |
// {"mul": [e..]} | {"neg": e} | {"scale": [n, e]}

inline RTElement eval_rt(const Json& j, const Field& field) {
  if (j.is_array()) return rt_from_json(j, field);
  tits::detail::require_keys(j, {"measure", "add", "mul", "neg", "scale"}, "R_T expression");
  if (j.size() != 1) throw schema_error("R_T expression: exactly one operator key");
  const std::string key = j.begin().key();
  const Json& body = j.begin().value();
  if (key == "measure") return measure(variety_from_json(body, field));
  if (key == "neg") return -eval_rt(body, field);
  if (key == "scale") {
    const Json& s = tits::detail::as_array(body, 2, "scale");
    return eval_rt(s[1], field).scaled(tits::detail::as_int(s[0], "scale factor"));
  }
  if (!body.is_array() || body.empty()) throw schema_error("R_T expression " + key + ": expected a nonempty list");
  RTElement acc = eval_rt(body[0], field);
  for (std::size_t i = 1; i < body.size(); ++i) {
    RTElement next = eval_rt(body[i], field);
    acc = key == "add" ? acc + next : acc * next;
  }
  return acc;
}

inline Json rt_report(const RTElement& e) {
  RTCanonical c = normalize(e);
  return {{"terms", to_json(e)}, {"canonical", to_json(c)}, {"augmentation", c.augmentation}};
}

// ---- commands --------------------------------------------------------------------

inline Json cmd_csa(const Request& r, const Field& field) {
  require_payloads(r, 1, "csa");
  Json p = parse_payload(r.payloads[0]);
  CSA a = CSA::split(field);
  if (r.op == "quaternion") a = csa_from_json({{"quat", p}}, field);
  else if (r.op == "biquaternion") a = csa_from_json({{"biquat", p}}, field);
  else if (r.op == "raw" || r.op.empty()) a = csa_from_json(p, field);
  else throw schema_error("csa: unknown constructor \"" + r.op + "\" (quaternion, biquaternion, raw)");
  return {{"csa", to_json(a)},
          {"period", a.period()},
          {"index", a.index()},
          {"is_split", a.is_split()},
          {"is_division", a.is_division()}};
}

inline Json cmd_qform(const Request& r, const Field& field) {
  require_payloads(r, 1, "qform");
  if (r.albert && r.prop_last) throw schema_error("qform: --albert and --prop-last are exclusive");
  Json p = parse_payload(r.payloads[0]);
  QuadraticForm q = form_from_json(r.albert ? Json{{"albert", p}} : r.prop_last ? Json{{"prop_last", p}} : p, field);
  Json out = {{"form", to_json(q)},
              {"dim", q.dim()},
              {"determinant", q.determinant().str()},
              {"discriminant", q.discriminant().str()}};
  if (q.dim() % 2 == 1) {
    out["clifford"] = {{"kind", "C0"}, {"class", to_json(clifford_odd(q))}};
  } else if (q.discriminant().is_one()) {
    out["clifford"] = {{"kind", "C0+"}, {"class", to_json(clifford_even_half(q))}};
  } else {
    out["clifford"] = {{"kind", "C"}, {"class", to_json(clifford_full_even(q))}};
  }
  out["anisotropic"] = q.is_rational() ? Json(anisotropic_over_Q(q)) : Json(nullptr);
  return out;
}

inline Json cmd_measure(const Request& r, const Field& field) {
  require_payloads(r, 1, "measure");
  TwistedVariety v = variety_from_json(parse_payload(r.payloads[0]), field);
  RTElement m = measure(v);
  Json out = rt_report(m);
  out["variety"] = to_json(v);
  out["family"] = v.family();
  out["count"] = count_measure(v);
  return out;
}

inline Json cmd_rt(const Request& r, const Field& field) {
  const std::string op = r.op.empty() ? "eval" : r.op;
  if (op == "eval" || op == "normalize") {
    require_payloads(r, 1, "rt " + op);
    Json p = parse_payload(r.payloads[0]);
    if (op == "normalize" && !p.is_array()) throw schema_error("rt normalize: expected a list of [multiplicity, class]");
    return rt_report(eval_rt(p, field));
  }
  if (op == "equal" || op == "mul") {
    require_payloads(r, 2, "rt " + op);
    RTElement a = eval_rt(parse_payload(r.payloads[0]), field);
    RTElement b = eval_rt(parse_payload(r.payloads[1]), field);
    if (op == "mul") return rt_report(a * b);
    return {{"equal", rt_equal(a, b)}, {"left", to_json(normalize(a))}, {"right", to_json(normalize(b))}};
  }
  throw schema_error("rt: unknown operation \"" + op + "\" (eval, normalize, equal, mul)");
}

inline std::pair<Int, std::vector<CSA>> gr_pair(const Json& j, const Field& field) {
  tits::detail::require_keys(j, {"d", "algebras"}, "product-gr factor pair");
  const Json& as = tits::detail::as_array(tits::detail::member(j, "algebras", "product-gr"), 2, "algebras");
  return {tits::detail::as_int(tits::detail::member(j, "d", "product-gr"), "d"),
          {csa_from_json(as[0], field), csa_from_json(as[1], field)}};
}

inline TwistedVariety iv_arg(const Json& j, const Field& field) {
  if (j.is_object() && j.contains("iv")) return variety_from_json(j, field);
  return variety_from_json({{"iv", j}}, field);
}

inline Json cmd_compare(const Request& r, const Field& field) {
  const std::string& f = r.family;
  std::vector<Json> p;
  for (const auto& s : r.payloads) p.push_back(parse_payload(s));
  auto need = [&](std::size_t n) { require_payloads(r, n, "compare --family " + f); };
  Verdict v;
  if (f == "sb" || f == "hp") {
    need(2);
    CSA a = csa_from_json(p[0], field), b = csa_from_json(p[1], field);
    v = f == "sb" ? compare_sb(a, b) : compare_hp(a, b);
  } else if (f == "gr") {
    need(2);
    auto g = [&](const Json& j) {
      tits::detail::require_keys(j, {"d", "algebra"}, "Grassmannian");
      return std::make_pair(tits::detail::as_int(tits::detail::member(j, "d", "Grassmannian"), "d"),
                            csa_from_json(tits::detail::member(j, "algebra", "Grassmannian"), field));
    };
    auto [d1, a1] = g(p[0]);
    auto [d2, a2] = g(p[1]);
    v = compare_gr(d1, a1, d2, a2);
  } else if (f == "quadric") {
    need(2);
    v = compare_quadrics(form_from_json(p[0], field), form_from_json(p[1], field));
  } else if (f == "iv") {
    need(2);
    v = compare_involution(iv_arg(p[0], field), iv_arg(p[1], field));
  } else if (f == "product-quadrics") {
    need(4);
    v = compare_product_quadrics(form_from_json(p[0], field), form_from_json(p[1], field),
                                 form_from_json(p[2], field), form_from_json(p[3], field));
  } else if (f == "product-sb") {
    need(4);
    v = compare_product_sb(csa_from_json(p[0], field), csa_from_json(p[1], field), csa_from_json(p[2], field),
                           csa_from_json(p[3], field));
  } else if (f == "product-gr") {
    need(2);
    auto [d1, l] = gr_pair(p[0], field);
    auto [d2, rr] = gr_pair(p[1], field);
    v = compare_product_gr(d1, l[0], l[1], d2, rr[0], rr[1]);
  } else if (f == "kollar") {
    need(2);
    // [[a1,b1],[a2,b2]] over Q or R; [class, class] over any backend.
    auto is_pairs = [](const Json& j) { return j.is_array() && j.size() == 2 && j[0].is_array(); };
    for (const auto& j : p) tits::detail::as_array(j, 2, "kollar side");
    if (is_pairs(p[0]) && is_pairs(p[1])) {
      auto side = [&](const Json& j) {
        std::array<SquareClass, 4> s;
        for (std::size_t i = 0; i < 2; ++i) {
          const Json& ab = tits::detail::as_array(j[i], 2, "kollar quaternion");
          s[2 * i] = tits::detail::as_square_class(ab[0], field, "kollar");
          s[2 * i + 1] = tits::detail::as_square_class(ab[1], field, "kollar");
        }
        return s;
      };
      v = kollar_products(side(p[0]), side(p[1]));
    } else {
      auto c = [&](const Json& j, std::size_t i) { return brauer_class_from_json(j[i], field); };
      v = kollar_products(c(p[0], 0), c(p[0], 1), c(p[1], 0), c(p[1], 1));
    }
  } else {
    throw schema_error("compare: unknown family \"" + f +
                       "\" (sb, gr, quadric, hp, iv, product-quadrics, product-sb, product-gr, kollar)");
  }
  Json out = to_json(v);
  out["family"] = f;
  return out;
}

}  // namespace detail

// ---- corpus ---------------------------------------------------------------------------

/// True when every key of `expected` is present in `actual` with a matching
/// value; arrays must have equal length and match element-wise.
inline bool json_subset(const Json& expected, const Json& actual, std::string& where) {
  if (expected.is_object()) {
    if (!actual.is_object()) {
      where = "expected an object";
      return false;
    }
    for (auto it = expected.begin(); it != expected.end(); ++it) {
      auto a = actual.find(it.key());
      if (a == actual.end()) {
        where = "missing key " + it.key();
        return false;
      }
      if (!json_subset(it.value(), *a, where)) {
        where = it.key() + "." + where;
        return false;
      }
    }
    return true;
  }
  if (expected.is_array()) {
    if (!actual.is_array() || actual.size() != expected.size()) {
      where = "array mismatch: expected " + expected.dump() + ", got " + actual.dump();
      return false;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!json_subset(expected[i], actual[i], where)) {
        where = "[" + std::to_string(i) + "]." + where;
        return false;
      }
    }
    return true;
  }
  if (expected != actual) {
    where = "expected " + expected.dump() + ", got " + actual.dump();
    return false;
  }
  return true;
}

Response run_argv(std::vector<std::string> argv);

// Occurrences in corpus arguments are replaced by the corpus file's directory.
inline constexpr const char* kCorpusDirToken = "${CORPUS_DIR}";

inline Response run_corpus(const Request& r) {
  std::ifstream in(r.corpus_file);
  if (!in) throw schema_error("cannot read corpus file: " + r.corpus_file);
  std::stringstream ss;
  ss << in.rdbuf();
  Json doc = Json::parse(ss.str(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("cases") || !doc["cases"].is_array()) {
    throw schema_error("corpus file must be an object with a \"cases\" array");
  }
  const std::string corpus_dir = std::filesystem::path(r.corpus_file).parent_path().string();
  Json results = Json::array();
  Json failed = Json::array();
  std::size_t passed = 0;
  for (const auto& c : doc["cases"]) {
    tits::detail::require_keys(c, {"id", "note", "args", "status", "expect"}, "corpus case");
    if (!c.contains("id") || !c["id"].is_string() || !c.contains("args") || !c["args"].is_array()) {
      throw schema_error("corpus case needs a string \"id\" and an \"args\" array");
    }
    std::string id = c["id"].get<std::string>();
    if (!r.corpus_filter.empty() && id.find(r.corpus_filter) == std::string::npos) continue;
    std::vector<std::string> args;
    for (const auto& a : c["args"]) {
      if (!a.is_string()) throw schema_error("corpus case " + id + ": args must be strings");
      std::string text = a.get<std::string>();
      for (auto pos = text.find(kCorpusDirToken); pos != std::string::npos; pos = text.find(kCorpusDirToken)) {
        text.replace(pos, std::string(kCorpusDirToken).size(), corpus_dir);
      }
      args.push_back(std::move(text));
    }
    int want_status = c.contains("status") ? static_cast<int>(tits::detail::as_int(c["status"], "status")) : 0;
    Response got = run_argv(args);
    std::string detail;
    bool ok = got.status == want_status;
    if (!ok) {
      detail = "exit status " + std::to_string(got.status) + ", expected " + std::to_string(want_status) +
               (got.err.empty() ? "" : " (" + got.err.substr(0, got.err.find('\n')) + ")");
    } else if (c.contains("expect")) {
      Json actual = Json::parse(got.out, nullptr, false);
      if (actual.is_discarded()) {
        ok = false;
        detail = "output is not JSON";
      } else {
        ok = json_subset(c["expect"], actual, detail);
      }
    }
    Json row = {{"id", id}, {"ok", ok}};
    if (!ok) {
      row["detail"] = detail;
      if (c.contains("note")) row["note"] = c["note"];
      failed.push_back(id);
    } else {
      ++passed;
    }
    results.push_back(row);
  }
  Json report = {{"total", results.size()}, {"passed", passed}, {"failed", failed}, {"results", results}};
  Response resp;
  resp.status = failed.empty() ? kOk : kMismatch;
  if (r.table) {
    std::ostringstream os;
    for (const auto& row : results) {
      os << (row["ok"].get<bool>() ? "PASS " : "FAIL ") << row["id"].get<std::string>();
      if (!row["ok"].get<bool>()) os << ": " << row["detail"].get<std::string>();
      os << "\n";
    }
    os << passed << "/" << results.size() << " cases passed\n";
    resp.out = os.str();
  } else {
    resp.out = report.dump() + "\n";
  }
  return resp;
}

/// Executes one request. Never throws: failures map to exit codes with the
/// message in `err`.
inline Response run(const Request& r) {
  Response resp;
  try {
    if (r.command == "corpus") return run_corpus(r);
    Field field = parse_field(r.field);
    Json out;
    if (r.command == "csa") out = detail::cmd_csa(r, field);
    else if (r.command == "qform") out = detail::cmd_qform(r, field);
    else if (r.command == "measure") out = detail::cmd_measure(r, field);
    else if (r.command == "rt") out = detail::cmd_rt(r, field);
    else if (r.command == "compare") out = detail::cmd_compare(r, field);
    else throw schema_error("unknown command \"" + r.command + "\"");
    resp.out = r.table ? detail::render_table(out) : out.dump() + "\n";
  } catch (const schema_error& e) {
    resp = {kSchema, "", std::string("schema error: ") + e.what() + "\n"};
  } catch (const Json::exception& e) {
    resp = {kSchema, "", std::string("schema error: ") + e.what() + "\n"};
  } catch (const domain_error& e) {
    resp = {kDomain, "", std::string("domain error: ") + e.what() + "\n"};
  } catch (const capability_error& e) {
    resp = {kCapability, "", std::string("capability error: ") + e.what() + "\n"};
  } catch (const overflow_error& e) {
    resp = {kCapability, "", std::string("capability error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    resp = {kInternal, "", std::string("internal error: ") + e.what() + "\n"};
  }
  return resp;
}

/// Parses command-line arguments (without the program name) and runs them.
inline Response run_argv(std::vector<std::string> argv) {
  Request r;
  std::string output = "json";
  CLI::App app{"Tits motivic measure of twisted flag varieties over computable fields", "tits"};
  app.require_subcommand(1);
  // JSON payloads are taken verbatim from the leftover arguments: CLI11
  // would otherwise split bracketed values such as [-1,3].
  auto add_common = [&](CLI::App* s) {
    s->allow_extras();
    s->footer("Remaining arguments are JSON payloads (see docs/schemas.md).");
    s->add_option("--field", r.field, "Base field: Q | R | Qp:<p> | Fq:<q> | abstract:<file>");
    s->add_option("--output", output, "json or table")->check(CLI::IsMember({"json", "table"}));
  };
  auto* csa = app.add_subcommand("csa", "Build a central simple algebra and report period and index");
  add_common(csa);
  csa->add_option("constructor", r.op, "quaternion | biquaternion | raw")->required()
      ->check(CLI::IsMember({"quaternion", "biquaternion", "raw"}));

  auto* qf = app.add_subcommand("qform", "Discriminant, Clifford invariant and anisotropy of a diagonal form");
  add_common(qf);
  qf->add_flag("--albert", r.albert, "payload is [a1,b1,a2,b2]; build the Albert form");
  qf->add_flag("--prop-last", r.prop_last, "payload is [[a,b],...]; build the odd form with that Clifford class");

  auto* ms = app.add_subcommand("measure", "Tits measure and count of a twisted variety");
  add_common(ms);

  auto* rt = app.add_subcommand("rt", "Arithmetic and equality in R_T(k)");
  add_common(rt);
  rt->add_option("operation", r.op, "eval | normalize | equal | mul")->required()
      ->check(CLI::IsMember({"eval", "normalize", "equal", "mul"}));

  auto* cmp = app.add_subcommand("compare", "Classification verdict for two varieties or products");
  add_common(cmp);
  cmp->add_option("--family", r.family, "sb | gr | quadric | hp | iv | product-quadrics | product-sb | product-gr | kollar")
      ->required();

  auto* cor = app.add_subcommand("corpus", "Run the golden regression corpus");
  cor->add_option("--file", r.corpus_file, "corpus JSON file");
  cor->add_option("--filter", r.corpus_filter, "only cases whose id contains this text");
  cor->add_option("--output", output, "json or table")->check(CLI::IsMember({"json", "table"}));

  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    std::string extra;
    for (auto* s : app.get_subcommands()) extra = s->help();
    return {kSchema, "", std::string("usage error: ") + e.what() + "\n" + extra};
  }
  CLI::App* sub = app.get_subcommands().front();
  r.command = sub->get_name();
  r.payloads = sub->remaining();
  if (r.command == "corpus" && !r.payloads.empty()) {
    return {kSchema, "", "usage error: corpus takes no payloads\n"};
  }
  r.table = output == "table";
  return run(r);
}

}  // namespace tits::cli

#endif  // TITS_CLI_HPP
