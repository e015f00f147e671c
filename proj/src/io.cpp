#include "nisforge/io.hpp"

#include <fstream>
#include <sstream>

namespace nisforge {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& fix) { throw DocumentError(what, fix); }

Scalar scalar_at(const Field& F, const json& j, const std::string& where) {
  if (!j.is_string()) bad(where + ": scalar must be a string", "write scalars as strings such as \"1/2\" or \"x^2+1\"");
  try {
    return F.parse(j.get<std::string>());
  } catch (const std::exception& e) {
    bad(where + ": cannot parse scalar '" + j.get<std::string>() + "' (" + e.what() + ")",
        "use a/b over Q or a polynomial in x over GF(p^k)");
  }
}

int index_at(const json& j, int n, const std::string& where) {
  if (!j.is_number_integer()) bad(where + ": index must be an integer", "use 0-based basis indices");
  int i = j.get<int>();
  if (i < 0 || i >= n) bad(where + ": index " + std::to_string(i) + " out of range 0.." + std::to_string(n - 1),
                           "indices refer to positions in \"basis\"");
  return i;
}

json svec_json(const SVec& v) {
  json a = json::array();
  for (auto& [k, s] : v) a.push_back({k, s.str()});
  return a;
}

SVec svec_from(const Field& F, const json& j, int n, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected a list of [k, scalar]", "write vectors as [[k, \"c\"], ...]");
  SVec v;
  for (size_t t = 0; t < j.size(); ++t) {
    auto& e = j[t];
    std::string w = where + "[" + std::to_string(t) + "]";
    if (!e.is_array() || e.size() != 2) bad(w + ": expected [k, scalar]", "write vectors as [[k, \"c\"], ...]");
    v.push_back({index_at(e[0], n, w), scalar_at(F, e[1], w)});
  }
  return sv_normalize(v);
}

}  // namespace

json field_json(const Field& F) {
  json f;
  f["char"] = F.characteristic();
  auto s = F.spec();
  f["ext"] = s.extension_degree;
  if (s.extension_degree > 1) f["modulus"] = F.modulus();
  return f;
}

Field field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("char")) bad("field: missing \"char\"", "add \"field\": {\"char\": 0} for Q or {\"char\": p, \"ext\": k}");
  if (!j["char"].is_number_integer()) bad("field.char must be an integer", "use 0 for Q or a prime p");
  FieldSpec s;
  s.characteristic = j["char"].get<int>();
  if (j.contains("ext")) {
    if (!j["ext"].is_number_integer() || j["ext"].get<int>() < 1) bad("field.ext must be a positive integer", "use 1 for a prime field");
    s.extension_degree = j["ext"].get<int>();
  }
  if (j.contains("modulus")) {
    if (!j["modulus"].is_array()) bad("field.modulus must be a list of integers", "give coefficients low to high, monic");
    s.modulus = j["modulus"].get<std::vector<int>>();
  }
  if (s.characteristic == 0 && s.extension_degree != 1) bad("field: Q has no extensions here", "set ext to 1 when char is 0");
  try {
    return Field::make(s);
  } catch (const std::exception& e) {
    bad(std::string("field: ") + e.what(), "p must be prime and the modulus irreducible of degree ext");
  }
}

json sparse_json(const Mat& m) {
  json a = json::array();
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < m[i].size(); ++j)
      if (!m[i][j].is_zero()) a.push_back({i, j, m[i][j].str()});
  return a;
}

Mat sparse_from_json(const Field& F, const json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array()) bad(where + ": expected [[i, j, scalar], ...]", "list the nonzero entries only");
  Mat m(rows, std::vector<Scalar>(cols, F.zero()));
  for (size_t t = 0; t < j.size(); ++t) {
    std::string w = where + "[" + std::to_string(t) + "]";
    auto& e = j[t];
    if (!e.is_array() || e.size() != 3) bad(w + ": expected [i, j, scalar]", "list the nonzero entries only");
    m[index_at(e[0], rows, w)][index_at(e[1], cols, w)] = scalar_at(F, e[2], w);
  }
  return m;
}

json document_json(const AlgebraDocument& d) {
  const SuperAlgebra& g = d.alg;
  json j;
  j["schema"] = 1;
  j["field"] = field_json(g.field());
  json basis = json::array();
  for (auto& b : g.basis()) {
    json e{{"name", b.name}, {"parity", b.parity}};
    if (b.degree) e["degree"] = *b.degree;
    basis.push_back(e);
  }
  j["basis"] = basis;
  json br = json::array();
  int n = g.dim();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      if (!g.stored(a, b).empty()) br.push_back({a, b, svec_json(g.stored(a, b))});
  j["brackets"] = br;
  if (g.has_squaring()) {
    json sq = json::array();
    for (int a = 0; a < n; ++a)
      if (!g.squaring_table()[a].empty()) sq.push_back({a, svec_json(g.squaring_table()[a])});
    j["squaring"] = sq;
  }
  j["meta"] = g.meta.is_null() ? json::object() : g.meta;
  if (!d.forms.empty()) {
    json fs = json::array();
    for (auto& B : d.forms) fs.push_back({{"parity", B.parity}, {"gram", sparse_json(B.gram)}});
    j["forms"] = fs;
  }
  if (!d.derivations.empty()) {
    json ds = json::array();
    for (auto& D : d.derivations) ds.push_back({{"parity", D.parity}, {"matrix", sparse_json(D.m)}});
    j["derivations"] = ds;
  }
  return j;
}

AlgebraDocument document_from_json(const json& j) {
  if (!j.is_object()) bad("document must be a JSON object", "start from the output of `nisforge build`");
  if (!j.contains("schema")) bad("missing \"schema\"", "add \"schema\": 1");
  if (j["schema"] != 1) bad("unsupported schema " + j["schema"].dump(), "only schema 1 is understood");
  for (auto& [k, v] : j.items())
    if (k != "schema" && k != "field" && k != "basis" && k != "brackets" && k != "squaring" && k != "meta" &&
        k != "forms" && k != "derivations")
      bad("unknown top-level key \"" + k + "\"", "remove it or move it under \"meta\"");
  Field F = field_from_json(j.value("field", json()));
  if (!j.contains("basis") || !j["basis"].is_array()) bad("missing \"basis\" list", "add \"basis\": [{\"name\": ..., \"parity\": 0}, ...]");
  std::vector<BasisElt> basis;
  for (size_t t = 0; t < j["basis"].size(); ++t) {
    auto& e = j["basis"][t];
    std::string w = "basis[" + std::to_string(t) + "]";
    if (!e.is_object() || !e.contains("name") || !e["name"].is_string()) bad(w + ": needs a string \"name\"", "give every basis vector a name");
    if (!e.contains("parity") || !e["parity"].is_number_integer() || (e["parity"] != 0 && e["parity"] != 1))
      bad(w + ": parity must be 0 or 1", "use 0 for even, 1 for odd");
    BasisElt b{e["name"].get<std::string>(), e["parity"].get<int>(), std::nullopt};
    if (e.contains("degree")) {
      if (!e["degree"].is_number_integer()) bad(w + ": degree must be an integer", "drop \"degree\" for ungraded algebras");
      b.degree = e["degree"].get<int>();
    }
    basis.push_back(b);
  }
  int n = (int)basis.size();
  AlgebraDocument d;
  d.alg = SuperAlgebra(F, basis);
  SuperAlgebra& g = d.alg;
  if (!j.contains("brackets") || !j["brackets"].is_array()) bad("missing \"brackets\" list", "add \"brackets\": [] for an abelian algebra");
  for (size_t t = 0; t < j["brackets"].size(); ++t) {
    auto& e = j["brackets"][t];
    std::string w = "brackets[" + std::to_string(t) + "]";
    if (!e.is_array() || e.size() != 3) bad(w + ": expected [i, j, [[k, scalar], ...]]", "one entry per nonzero bracket");
    int a = index_at(e[0], n, w), b = index_at(e[1], n, w);
    SVec v = svec_from(F, e[2], n, w);
    int pv = (basis[a].parity + basis[b].parity) % 2;
    for (auto& [k, s] : v)
      if (basis[k].parity != pv) bad(w + ": bracket of " + basis[a].name + " and " + basis[b].name + " is not homogeneous of parity " + std::to_string(pv),
                                     "brackets must respect parity");
    g.set_bracket(a, b, v);
  }
  if (j.contains("squaring")) {
    if (!j["squaring"].is_array()) bad("\"squaring\" must be a list", "write [[i, [[k, scalar], ...]], ...]");
    if (F.characteristic() != 2) bad("\"squaring\" given outside characteristic 2", "drop it or set field.char to 2");
    if (n > 0) g.set_squaring(0, {});  // marks the algebra as carrying a squaring
    for (size_t t = 0; t < j["squaring"].size(); ++t) {
      auto& e = j["squaring"][t];
      std::string w = "squaring[" + std::to_string(t) + "]";
      if (!e.is_array() || e.size() != 2) bad(w + ": expected [i, [[k, scalar], ...]]", "one entry per odd basis vector");
      int a = index_at(e[0], n, w);
      if (basis[a].parity != 1) bad(w + ": squaring of an even vector", "only odd vectors carry a squaring");
      g.set_squaring(a, svec_from(F, e[1], n, w));
    }
  }
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) bad("\"meta\" must be an object", "use {\"series\": ..., \"params\": {...}}");
    g.meta = j["meta"];
  } else {
    g.meta = json::object();
  }
  auto parity_of = [&](const json& e, const std::string& w) {
    if (!e.contains("parity") || (e["parity"] != 0 && e["parity"] != 1)) bad(w + ": parity must be 0 or 1", "use 0 for even, 1 for odd");
    return e["parity"].get<int>();
  };
  if (j.contains("forms")) {
    for (size_t t = 0; t < j["forms"].size(); ++t) {
      std::string w = "forms[" + std::to_string(t) + "]";
      auto& e = j["forms"][t];
      if (!e.is_object() || !e.contains("gram")) bad(w + ": needs \"gram\"", "write {\"parity\": 0, \"gram\": [[i, j, scalar], ...]}");
      d.forms.push_back({sparse_from_json(F, e["gram"], n, n, w + ".gram"), parity_of(e, w)});
    }
  }
  if (j.contains("derivations")) {
    for (size_t t = 0; t < j["derivations"].size(); ++t) {
      std::string w = "derivations[" + std::to_string(t) + "]";
      auto& e = j["derivations"][t];
      if (!e.is_object() || !e.contains("matrix")) bad(w + ": needs \"matrix\"", "write {\"parity\": 0, \"matrix\": [[i, j, scalar], ...]} with columns = images");
      d.derivations.push_back({sparse_from_json(F, e["matrix"], n, n, w + ".matrix"), parity_of(e, w)});
    }
  }
  return d;
}

std::string document_text(const AlgebraDocument& d) { return document_json(d).dump(2) + "\n"; }

AlgebraDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path, "check the path");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    bad(path + ": not valid JSON (" + std::string(e.what()) + ")", "fix the syntax or re-export the document");
  }
  return document_from_json(j);
}

void write_document(const AlgebraDocument& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path, "check the directory exists and is writable");
  out << document_text(d);
}

}  // namespace nisforge
