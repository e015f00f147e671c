#include "nisforge/cli.hpp"

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nisforge/cartan.hpp"
#include "nisforge/extensions.hpp"
#include "nisforge/loops.hpp"
#include "nisforge/matrix_alg.hpp"
#include "nisforge/suites.hpp"
#include "nisforge/vectorial.hpp"

namespace nisforge {

using nlohmann::json;

namespace {

const std::vector<std::string> kMatrix = {"gl", "sl", "psl", "q", "sq", "psq", "osp", "pe", "spe", "spe_ab", "as"};

bool in(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

std::vector<int> int_list(const std::string& s, const std::string& flag) {
  std::vector<int> r;
  if (s.empty()) return r;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      r.push_back(std::stoi(tok));
    } catch (...) {
      throw DocumentError("--" + flag + ": '" + s + "' is not a comma-separated list of integers", "write e.g. --" + flag + " 1,1,1");
    }
  }
  return r;
}

bool cartan_name(const std::string& s) {
  if (s.size() >= 2 && std::string("ABCD").find(s[0]) != std::string::npos &&
      std::all_of(s.begin() + 1, s.end(), ::isdigit))
    return true;
  for (auto& c : catalog_names())
    if (c == s) return true;
  return false;
}

json params_json(const BuildOptions& o) {
  json p = json::object();
  p["p"] = o.p;
  if (o.ext != 1) p["ext"] = o.ext;
  if (!o.N.empty()) p["N"] = o.N;
  if (!o.size.empty()) p["size"] = o.size;
  for (auto& [k, v] : o.scalars) p[k] = v;
  return p;
}

}  // namespace

std::vector<std::pair<std::string, std::vector<std::string>>> catalog_families() {
  return {{"cartan", catalog_names()},
          {"matrix", kMatrix},
          {"vectorial", vectorial_series()},
          {"other", {"L22", "svect_alpha", "loop_<matrix name>", "contact_loop"}}};
}

AlgebraDocument build_named(const std::string& name, const BuildOptions& o) {
  if (o.p < 0 || o.p == 1) throw DocumentError("--p " + std::to_string(o.p) + " is not a characteristic", "use 0 for Q or a prime");
  Field F = o.p == 0 ? Field::Q() : Field::GF(o.p, o.ext);
  auto sc = [&](const std::string& k, const Scalar& def) {
    auto it = o.scalars.find(k);
    if (it == o.scalars.end()) return def;
    try {
      return F.parse(it->second);
    } catch (const std::exception& e) {
      throw DocumentError("--" + k + " '" + it->second + "' is not a scalar of " + F.name(),
                          "use a/b over Q or a polynomial in x over GF(p^k)");
    }
  };
  AlgebraDocument d;
  json meta{{"series", name}, {"params", params_json(o)}};
  if (cartan_name(name)) {
    std::map<std::string, Scalar> ps;
    for (auto& [k, v] : o.scalars) ps[k] = sc(k, F.zero());
    auto r = build_contragredient(catalog(name, F, ps));
    d.alg = r.alg;
    if (r.recipe) d.forms.push_back(*r.recipe);
    if (r.truncated) meta["truncated"] = true;
  } else if (in(kMatrix, name)) {
    auto M = make_matrix_algebra(name, o.size, F, sc("a", F.zero()), sc("b", F.zero()));
    d.alg = M.alg;
    try {
      d.forms.push_back(trace_form(M));
    } catch (const std::exception&) {
    }
    if (o.p == 2 && !M.mats.empty()) {
      json pm = json::array();
      auto pmap = matrix_pmap(M);
      for (size_t i = 0; i < pmap.size(); ++i) {
        json v = json::array();
        for (auto& [k, s] : pmap[i]) v.push_back({k, s.str()});
        pm.push_back({i, v});
      }
      meta["pmap"] = pm;
    }
  } else if (in(vectorial_series(), name)) {
    VParams P;
    P.F = F;
    P.N = o.N;
    P.n = o.n;
    P.n_odd = o.m;
    P.k = o.k;
    P.a = sc("a", F.zero());
    P.b = sc("b", F.zero());
    P.derived = o.derived;
    if (o.density == "1+u") P.density = DensityKind::OnePlusUbar;
    else if (o.density == "exp") P.density = DensityKind::Exp;
    else if (o.density != "one") throw DocumentError("--density '" + o.density + "'", "use one, 1+u or exp");
    if (o.omega == "1") P.omega.kind = SymplecticForm::Omega1;
    else if (o.omega == "2") P.omega.kind = SymplecticForm::Omega2;
    P.omega.eps = sc("eps", F.zero());
    P.omega.lambda = sc("lambda", F.zero());
    auto v = build_vectorial(name, P);
    d.alg = v.alg;
    auto nf = nis_formula(v);
    if (nf.form && nf.invariant) d.forms.push_back(*nf.form);
  } else if (name == "L22") {
    if (o.p != 3) throw DocumentError("L22 lives at p = 3", "add --p 3");
    d.alg = deform_L22(F, sc("eps", -F.one())).L;
  } else if (name == "svect_alpha") {
    if (o.p != 0) throw DocumentError("svect_alpha is built over Q", "drop --p");
    auto S = svect_alpha_build(F, sc("alpha", F.from_frac(1, 2)), o.window);
    d.alg = S.alg;
    meta["window"] = o.window;
  } else if (name.rfind("loop_", 0) == 0 && in(kMatrix, name.substr(5))) {
    auto M = make_matrix_algebra(name.substr(5), o.size, F);
    auto tr = trace_form(M);
    auto L = loop_build(M.alg, tr, o.window);
    d.alg = L.alg;
    d.forms.push_back(residue_nis(L));
    meta["window"] = o.window;
  } else if (name == "contact_loop") {
    auto T = contact_loop(F, o.m, o.window);
    d.alg = T.alg;
    d.forms.push_back(contact_residue_pairing(T, o.m));
    meta["window"] = o.window;
  } else {
    throw DocumentError("unknown catalog name '" + name + "'", "run `nisforge catalog` for the list");
  }
  d.alg.meta = meta;
  return d;
}

namespace {

struct Report {
  bool as_json = false;
  std::ostream& out;
  void emit(const json& j, const std::string& text) {
    if (as_json) out << j.dump(2) << "\n";
    else out << text;
  }
};

const BilinearForm& form_at(const AlgebraDocument& d, int i) {
  if (i < 0 || i >= (int)d.forms.size())
    throw DocumentError("form " + std::to_string(i) + " not in the document (" + std::to_string(d.forms.size()) + " present)",
                        "run `nisforge solve FILE -o FILE` to attach the invariant forms");
  return d.forms[i];
}

std::string summary(const SuperAlgebra& g) {
  return std::to_string(g.dim_even()) + "|" + std::to_string(g.dim_odd()) + " over " + g.field().name();
}

void save_or_print(const AlgebraDocument& d, const std::string& path, std::ostream& out) {
  if (path.empty()) out << document_text(d);
  else write_document(d, path);
}

std::vector<SVec> pmap_from_meta(const SuperAlgebra& g) {
  if (!g.meta.contains("pmap"))
    throw DocumentError("document has no p-map (meta.pmap)", "build a matrix algebra with --p 2 or add meta.pmap = [[i, [[k, s], ...]], ...]");
  std::vector<SVec> pm(g.dim());
  for (auto& e : g.meta["pmap"]) {
    SVec v;
    for (auto& t : e[1]) v.push_back({t[0].get<int>(), g.field().parse(t[1].get<std::string>())});
    pm.at(e[0].get<int>()) = sv_normalize(v);
  }
  return pm;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nisforge: invariant bilinear forms on Lie superalgebras"};
  app.require_subcommand(1);
  bool as_json = false;
  uint64_t seed = 7;
  app.add_flag("--json", as_json, "machine-readable report");
  app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();

  auto* cat = app.add_subcommand("catalog", "list buildable names");

  BuildOptions bo;
  std::string name, out_path, Nstr, sizestr;
  auto* build = app.add_subcommand("build", "build an algebra document");
  build->add_option("name", name, "catalog name")->required();
  build->add_option("--p", bo.p, "characteristic, 0 for Q");
  build->add_option("--ext", bo.ext, "extension degree k of GF(p^k)");
  build->add_option("--N", Nstr, "shearing vector, e.g. 1,1,1");
  build->add_option("--size", sizestr, "matrix parameters, e.g. 2,2");
  build->add_option("--n", bo.n, "number of pairs / even generators");
  build->add_option("--m", bo.m, "number of odd indeterminates");
  build->add_option("--k", bo.k, "half-dimension for h_omega");
  build->add_option("--window", bo.window, "loop window");
  build->add_option("--derived", bo.derived, "derived-algebra steps");
  build->add_option("--density", bo.density, "svect_h density: one, 1+u, exp");
  build->add_option("--omega", bo.omega, "h_omega form: 0, 1, 2");
  for (auto k : {"alpha", "eps", "lambda", "a", "b"})
    build->add_option_function<std::string>(std::string("--") + k, [&bo, k](const std::string& v) { bo.scalars[k] = v; },
                                            "scalar parameter");
  build->add_option("-o,--output", out_path, "output file (stdout if absent)");

  std::string file, parity = "even";
  int form_i = 0, der_i = 0;
  auto* solve = app.add_subcommand("solve", "invariant forms of a document");
  solve->add_option("file", file)->required()->check(CLI::ExistingFile);
  solve->add_option("--parity", parity, "even, odd or any")->check(CLI::IsMember({"even", "odd", "any"}));
  solve->add_option("-o,--output", out_path, "write the document with the form-space basis attached");

  auto* gram = app.add_subcommand("gram", "print a Gram matrix");
  gram->add_option("file", file)->required()->check(CLI::ExistingFile);
  gram->add_option("--form", form_i, "form index")->required();

  auto* dext = app.add_subcommand("dext", "double extension by a derivation");
  dext->add_option("file", file)->required()->check(CLI::ExistingFile);
  dext->add_option("--form", form_i)->required();
  dext->add_option("--derivation", der_i)->required();
  dext->add_option("-o,--output", out_path);

  auto* dec = app.add_subcommand("decompose", "recognize a double extension");
  dec->add_option("file", file)->required()->check(CLI::ExistingFile);
  dec->add_option("--form", form_i)->required();
  dec->add_option("-o,--output", out_path, "where to write the quotient document");

  auto* qu = app.add_subcommand("queerify", "queerification at p = 2");
  qu->add_option("file", file)->required()->check(CLI::ExistingFile);
  qu->add_option("--form", form_i)->required();
  qu->add_option("-o,--output", out_path);

  std::string suite = "all";
  bool quick = false;
  auto* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", suite, "suite name or number, or all");
  ver->add_flag("--quick", quick, "smallest instances only");

  auto* exp = app.add_subcommand("export", "write a document in canonical form");
  exp->add_option("file", file)->required()->check(CLI::ExistingFile);
  exp->add_option("-o,--output", out_path);
  auto* imp = app.add_subcommand("import", "validate a document and summarize it");
  imp->add_option("file", file)->required()->check(CLI::ExistingFile);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  Report rep{as_json, out};

  try {
    if (*cat) {
      json j = json::object();
      std::string t;
      for (auto& [fam, names] : catalog_families()) {
        j[fam] = names;
        t += fam + ":";
        for (auto& n : names) t += " " + n;
        t += "\n";
      }
      rep.emit(j, t);
    } else if (*build) {
      bo.N = int_list(Nstr, "N");
      bo.size = int_list(sizestr, "size");
      auto d = build_named(name, bo);
      if (!out_path.empty()) {
        write_document(d, out_path);
        rep.emit({{"built", name}, {"dim", d.alg.dim()}, {"file", out_path}, {"forms", d.forms.size()}},
                 name + ": " + summary(d.alg) + ", " + std::to_string(d.forms.size()) + " form(s) -> " + out_path + "\n");
      } else {
        out << document_text(d);
      }
    } else if (*solve) {
      auto d = read_document(file);
      json j{{"seed", seed}, {"dim", d.alg.dim()}};
      std::string t = summary(d.alg) + "\n";
      std::vector<int> pars = parity == "any" ? std::vector<int>{0, 1} : std::vector<int>{parity == "odd" ? 1 : 0};
      std::vector<BilinearForm> found;
      for (int par : pars) {
        auto sp = invariant_forms(d.alg, par);
        auto nis = find_nis(d.alg.field(), sp, seed);
        std::string pn = par ? "odd" : "even";
        j[pn] = {{"form_space_dim", sp.dim()},
                 {"nondegenerate", (bool)nis.form},
                 {"method", nis.method},
                 {"probabilistic", nis.probabilistic},
                 {"certified_none", nis.certified_none}};
        t += pn + ": form space dim " + std::to_string(sp.dim()) + ", " +
             (nis.form ? "nondegenerate" : nis.certified_none ? "no nondegenerate member (certified)" : "no nondegenerate member found") +
             " [" + nis.method + "]\n";
        if (nis.form) found.push_back(*nis.form);
        for (auto& B : sp.basis) found.push_back(B);
      }
      if (!out_path.empty()) {
        d.forms = found;
        write_document(d, out_path);
        t += std::to_string(found.size()) + " form(s) attached -> " + out_path + "\n";
      }
      rep.emit(j, t);
    } else if (*gram) {
      auto d = read_document(file);
      auto& B = form_at(d, form_i);
      rep.emit(gram_json(d.alg, B), gram_text(d.alg, B));
    } else if (*dext) {
      auto d = read_document(file);
      if (der_i < 0 || der_i >= (int)d.derivations.size())
        throw DocumentError("derivation " + std::to_string(der_i) + " not in the document",
                            "add \"derivations\": [{\"parity\": 0, \"matrix\": [[i, j, s], ...]}] (columns = images)");
      DExtensionData data{d.alg, form_at(d, form_i), d.derivations[der_i].m, d.derivations[der_i].parity};
      auto chk = check_dext_data(data);
      if (!chk.ok) throw DocumentError("derivation rejected: " + chk.reason, "D must be a derivation, B must be D-invariant, and D^2 = 0 when D is odd");
      auto x = double_extend(data);
      AlgebraDocument o;
      o.alg = x.alg;
      o.alg.meta = {{"series", "double_extension"}, {"base", d.alg.meta}};
      o.forms.push_back(x.form);
      save_or_print(o, out_path, out_path.empty() ? out : err);
      if (!out_path.empty())
        rep.emit({{"dim", o.alg.dim()}, {"jacobi", x.jacobi}, {"invariant", x.invariant}, {"nondegenerate", x.nondegenerate},
                  {"decomposable", x.decomposable}},
                 summary(o.alg) + ", Jacobi " + (x.jacobi ? "ok" : "FAIL") + ", invariant " + (x.invariant ? "ok" : "FAIL") +
                     ", nondegenerate " + (x.nondegenerate ? "ok" : "FAIL") + (x.decomposable ? ", decomposable (inner D)" : "") + "\n");
    } else if (*dec) {
      auto d = read_document(file);
      auto r = recognize_double_extension(d.alg, form_at(d, form_i));
      if (r.status != "double_extension") {
        rep.emit({{"status", r.status}, {"reason", r.reason}}, r.status + ": " + r.reason + "\n");
        return r.status == "decomposable" ? 0 : 2;
      }
      AlgebraDocument o;
      o.alg = r.data.base;
      o.alg.meta = {{"series", "double_extension_quotient"}};
      o.forms.push_back(r.data.form);
      o.derivations.push_back({r.data.D, r.data.parity_D});
      if (out_path.empty() && !as_json) {
        out << document_text(o);
      } else {
        if (!out_path.empty()) write_document(o, out_path);
        rep.emit({{"status", r.status}, {"h_dim", r.h_dim}, {"round_trip", r.round_trip}, {"sigma_matches", r.sigma_matches}},
                 "double extension of " + summary(o.alg) + ", round trip " + (r.round_trip ? "ok" : "FAIL") + "\n");
      }
    } else if (*qu) {
      auto d = read_document(file);
      auto q = queerify(d.alg, form_at(d, form_i), pmap_from_meta(d.alg));
      AlgebraDocument o;
      o.alg = q.alg;
      o.alg.meta = {{"series", "queerified"}};
      o.forms.push_back(q.form);
      if (out_path.empty() && !as_json) {
        out << document_text(o);
      } else {
        if (!out_path.empty()) write_document(o, out_path);
        rep.emit({{"dim", o.alg.dim()}, {"invariant", q.invariant}, {"nondegenerate", q.nondegenerate}},
                 summary(o.alg) + ", odd form invariant " + (q.invariant ? "yes" : "no") + ", nondegenerate " +
                     (q.nondegenerate ? "yes" : "no") + "\n");
      }
    } else if (*ver) {
      SuiteContext ctx;
      ctx.seed = seed;
      ctx.quick = quick;
      std::vector<std::string> names;
      if (suite == "all")
        for (auto& s : suite_list()) names.push_back(std::to_string(s.number));
      else
        names.push_back(suite);
      json all = json::array();
      bool ok = true;
      std::string t = "seed " + std::to_string(seed) + "\n";
      for (auto& n : names) {
        auto r = run_suite(n, ctx);
        ok &= r.pass();
        all.push_back(suite_json(r));
        t += (r.pass() ? "PASS " : "FAIL ") + r.name + "\n";
        for (auto& c : r.checks)
          t += std::string("  ") + (c.pass ? "PASS " : "FAIL ") + c.name + (c.anchor.empty() ? "" : "  [" + c.anchor + "]") +
               (c.detail.empty() ? "" : "\n       " + c.detail) + "\n";
      }
      rep.emit({{"seed", seed}, {"suites", all}}, t);
      return ok ? 0 : 1;
    } else if (*exp) {
      save_or_print(read_document(file), out_path, out);
    } else if (*imp) {
      auto d = read_document(file);
      json j{{"valid", true}, {"dim_even", d.alg.dim_even()}, {"dim_odd", d.alg.dim_odd()}, {"field", field_json(d.alg.field())},
             {"forms", d.forms.size()}, {"derivations", d.derivations.size()}, {"graded", d.alg.graded()}};
      rep.emit(j, "valid document: " + summary(d.alg) + ", " + std::to_string(d.forms.size()) + " form(s), " +
                      std::to_string(d.derivations.size()) + " derivation(s)\n");
    }
  } catch (const DocumentError& e) {
    err << "error: " << e.what() << "\n  remedy: " << e.remedy << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n  remedy: check the flags against `nisforge catalog` and `nisforge build --help`\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace nisforge
