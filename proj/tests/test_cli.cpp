#include <cstdio>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "nisforge/cartan.hpp"
#include "nisforge/cli.hpp"
#include "nisforge/extensions.hpp"
#include "nisforge/matrix_alg.hpp"

using namespace nisforge;
using nlohmann::json;

namespace {

std::string tmp(const std::string& n) { return (std::filesystem::temp_directory_path() / ("nisforge_test_" + n)).string(); }

int cli(std::vector<std::string> a, std::string* o = nullptr, std::string* e = nullptr) {
  std::ostringstream out, err;
  int rc = run_cli(a, out, err);
  if (o) *o = out.str();
  if (e) *e = err.str();
  return rc;
}

void same_algebra(const SuperAlgebra& a, const SuperAlgebra& b) {
  REQUIRE(a.dim() == b.dim());
  for (int i = 0; i < a.dim(); ++i) {
    CHECK(a.basis()[i].name == b.basis()[i].name);
    CHECK(a.parity(i) == b.parity(i));
    CHECK(a.degree(i) == b.degree(i));
    for (int j = i; j < a.dim(); ++j) CHECK(a.stored(i, j) == b.stored(i, j));
  }
  CHECK(a.has_squaring() == b.has_squaring());
}

}  // namespace

TEST_CASE("document round trip is exact") {
  Field F = Field::GF(2, 3);
  auto wk = build_contragredient(catalog("wk3", F, {{"alpha", F.generator()}}));
  AlgebraDocument d{wk.alg, {*wk.recipe}, {}};
  d.alg.meta = {{"series", "wk3"}};
  auto j = document_json(d);
  CHECK(j["schema"] == 1);
  CHECK(j["field"]["char"] == 2);
  CHECK(j["field"]["ext"] == 3);
  auto back = document_from_json(j);
  same_algebra(d.alg, back.alg);
  REQUIRE(back.forms.size() == 1);
  CHECK(back.forms[0].gram == d.forms[0].gram);
  CHECK(document_text(back) == document_text(d));
}

TEST_CASE("round trip keeps squaring, degrees and rationals") {
  Field Q = Field::Q();
  SuperAlgebra g(Q, {{"a", 0, 1}, {"b", 0, -1}, {"c", 0, 0}});
  g.set_bracket(0, 1, {{2, Q.from_frac(-3, 7)}});
  AlgebraDocument d{g, {}, {{mat_identity(Q, 3), 0}}};
  auto back = document_from_json(document_json(d));
  same_algebra(g, back.alg);
  CHECK(back.alg.bracket(1, 0) == SVec{{2, Q.from_frac(3, 7)}});
  CHECK(back.derivations.size() == 1);

  Field F2 = Field::GF(2);
  auto M = make_matrix_algebra("gl", {2, 0}, F2);
  auto q = queerify(M.alg, trace_form(M), matrix_pmap(M));
  AlgebraDocument dq{q.alg, {q.form}, {}};
  auto bq = document_from_json(document_json(dq));
  same_algebra(q.alg, bq.alg);
  for (int i = 0; i < q.alg.dim(); ++i) CHECK(bq.alg.squaring(i) == q.alg.squaring(i));
  CHECK(document_text(bq) == document_text(dq));
}

TEST_CASE("schema violations carry a remedy") {
  auto fails = [](json j, const std::string& needle) {
    try {
      document_from_json(j);
      FAIL("accepted: " << j.dump());
    } catch (const DocumentError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
      CHECK(!e.remedy.empty());
    }
  };
  json ok = {{"schema", 1}, {"field", {{"char", 0}}}, {"basis", {{{"name", "x"}, {"parity", 0}}, {{"name", "y"}, {"parity", 1}}}},
             {"brackets", json::array()}, {"meta", json::object()}};
  CHECK_NOTHROW(document_from_json(ok));
  auto j = ok;
  j["schema"] = 2;
  fails(j, "schema");
  j = ok;
  j.erase("basis");
  fails(j, "basis");
  j = ok;
  j["basis"][1]["parity"] = 2;
  fails(j, "parity");
  j = ok;
  j["brackets"] = {{0, 5, json::array()}};
  fails(j, "out of range");
  j = ok;
  j["brackets"] = {{0, 1, {{0, "1"}}}};  // even x odd landing in an even vector
  fails(j, "homogeneous");
  j = ok;
  j["brackets"] = {{0, 0, {{0, "1/0"}}}};
  fails(j, "scalar");
  j = ok;
  j["field"] = {{"char", 4}};
  fails(j, "field");
  j = ok;
  j["squaring"] = json::array();
  fails(j, "characteristic 2");
  j = ok;
  j["extra"] = 1;
  fails(j, "unknown top-level key");
}

TEST_CASE("build and solve: o(5) at p = 3") {
  auto f = tmp("o5.json");
  std::string o, e;
  REQUIRE(cli({"build", "br2", "--p", "3", "--eps", "-1", "-o", f}, &o, &e) == 0);
  REQUIRE(cli({"--json", "solve", f, "--parity", "even"}, &o) == 0);
  auto r = json::parse(o);
  CHECK(r["even"]["form_space_dim"] == 1);
  CHECK(r["even"]["nondegenerate"] == true);
  CHECK(r["seed"] == 7);
  REQUIRE(cli({"gram", f, "--form", "0"}, &o) == 0);
  CHECK(o.find("x1") != std::string::npos);
  std::remove(f.c_str());
}

TEST_CASE("export then import is the identity") {
  auto f = tmp("a2.json"), g = tmp("a2b.json");
  REQUIRE(cli({"build", "A2", "-o", f}) == 0);
  REQUIRE(cli({"export", f, "-o", g}) == 0);
  auto a = read_document(f), b = read_document(g);
  CHECK(document_text(a) == document_text(b));
  std::string o;
  REQUIRE(cli({"--json", "import", g}, &o) == 0);
  CHECK(json::parse(o)["dim_even"] == 8);
  std::remove(f.c_str());
  std::remove(g.c_str());
}

TEST_CASE("decompose gl(2|2) and rebuild it with dext") {
  auto f = tmp("gl22.json"), h = tmp("psl22.json"), g = tmp("gl22b.json");
  REQUIRE(cli({"build", "gl", "--size", "2,2", "-o", f}) == 0);
  std::string o;
  REQUIRE(cli({"--json", "decompose", f, "--form", "0", "-o", h}, &o) == 0);
  auto r = json::parse(o);
  CHECK(r["h_dim"] == 14);
  CHECK(r["round_trip"] == true);
  auto q = read_document(h);
  CHECK(q.alg.dim_even() == 6);
  CHECK(q.alg.dim_odd() == 8);
  REQUIRE(cli({"--json", "dext", h, "--form", "0", "--derivation", "0", "-o", g}, &o) == 0);
  r = json::parse(o);
  CHECK(r["dim"] == 16);
  CHECK(r["jacobi"] == true);
  CHECK(r["nondegenerate"] == true);
  for (auto p : {f, h, g}) std::remove(p.c_str());
}

TEST_CASE("queerify needs a p-map and works at p = 2") {
  auto f = tmp("gl2.json");
  REQUIRE(cli({"build", "gl", "--size", "2,0", "--p", "2", "-o", f}) == 0);
  std::string o, e;
  REQUIRE(cli({"--json", "queerify", f, "--form", "0"}, &o) == 0);
  auto r = json::parse(o);
  CHECK(r["dim"] == 8);
  CHECK(r["invariant"] == true);
  CHECK(r["nondegenerate"] == true);
  auto g = tmp("sl2q.json");
  REQUIRE(cli({"build", "sl", "--size", "2,0", "-o", g}) == 0);
  CHECK(cli({"queerify", g, "--form", "0"}, &o, &e) == 2);
  CHECK(e.find("remedy") != std::string::npos);
  std::remove(f.c_str());
  std::remove(g.c_str());
}

TEST_CASE("errors: unknown names, bad flags, missing forms") {
  std::string o, e;
  CHECK(cli({"build", "nonsense"}, &o, &e) == 2);
  CHECK(e.find("nisforge catalog") != std::string::npos);
  CHECK(cli({"build", "vect", "--p", "3", "--N", "1,x"}, &o, &e) == 2);
  CHECK(e.find("remedy") != std::string::npos);
  auto f = tmp("sl2.json");
  REQUIRE(cli({"build", "sl", "--size", "2,0", "-o", f}) == 0);
  CHECK(cli({"gram", f, "--form", "3"}, &o, &e) == 2);
  CHECK(cli({"dext", f, "--form", "0", "--derivation", "0"}, &o, &e) == 2);
  CHECK(cli({"solve", f, "--parity", "sideways"}, &o, &e) != 0);
  std::remove(f.c_str());
}

TEST_CASE("catalog and verify") {
  std::string o;
  REQUIRE(cli({"--json", "catalog"}, &o) == 0);
  auto c = json::parse(o);
  CHECK(c["vectorial"].size() > 5);
  REQUIRE(cli({"--json", "--seed", "11", "verify", "--suite", "dimensions"}, &o) == 0);
  auto r = json::parse(o);
  CHECK(r["seed"] == 11);
  CHECK(r["suites"][0]["pass"] == true);
  REQUIRE(cli({"verify", "--suite", "recipe"}, &o) == 0);
  CHECK(o.find("PASS") != std::string::npos);
  CHECK(cli({"verify", "--suite", "nope"}, &o) != 0);
}
