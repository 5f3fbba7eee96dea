#include "operadiff/cli.hpp"

#include "operadiff/adjoint.hpp"
#include "operadiff/expression.hpp"
#include "operadiff/ppoly.hpp"
#include "operadiff/spec_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <iostream>
#include <sstream>

namespace operadiff {

namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  bool json = false;
  bool no_verify = false;
  std::uint64_t seed = 7;
};

// What a subcommand produced. Computations fill result; check commands
// always show their report, computations only when a check fails.
struct Outcome {
  std::string command, operad, instance;
  std::vector<std::string> result;
  Report report;
  Json bounds = Json::object();
  bool show_report = true;
};

int emit(const Outcome& o, const Globals& g, std::ostream& out) {
  const bool ok = o.report.passed();
  if (g.json) {
    Json j;
    j["command"] = o.command;
    j["operad"] = o.operad;
    j["instance"] = o.instance;
    Json checks = Json::array();
    for (const auto& c : o.report.checks) {
      Json cj;
      cj["name"] = c.name;
      cj["paper_ref"] = c.statement;
      cj["status"] = c.passed ? "pass" : "fail";
      if (!c.passed) cj["counterexample"] = c.counterexample;
      checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["seed"] = g.seed;
    j["bounds"] = o.bounds;
    if (!o.result.empty()) j["result"] = o.result;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& line : o.result) out << line << "\n";
    if (o.show_report || !ok) out << o.report.render();
  }
  return ok ? 0 : 1;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
  }
  return out;
}

// Variables in the given order, or those occurring in the expressions, sorted.
BasedModule variables(const std::string& declared, const std::string& flavor, const std::vector<std::string>& exprs) {
  if (!declared.empty()) return BasedModule(split(declared, ','));
  std::set<std::string> names;
  for (const auto& e : exprs)
    for (const auto& v : expression_variables(parse_expression_ast(flavor, e))) names.insert(v);
  return BasedModule(std::vector<std::string>(names.begin(), names.end()));
}

// V followed by its tangent copies dv.
BasedModule doubled(const BasedModule& V) {
  auto names = V.names();
  for (const auto& n : V.names()) {
    if (V.find("d" + n)) throw InputError("tangent variable d" + n + " clashes with a variable; rename or pass --vars");
    names.push_back("d" + n);
  }
  return BasedModule(names);
}

PresentationBounds bounds(std::size_t d, std::size_t w) {
  PresentationBounds b;
  b.max_degree = d;
  b.max_weight = w;
  return b;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Options shared by several subcommands.
struct Options {
  std::string operad = "com";
  std::string algebra, module, spec, vars, f_vars, g_vars, f, g;
  std::string expr;
  std::size_t arity = 4, trials = 200, cdc_trials = 100, dim = 2, degree = 2, weight = 3, free_dim = 0;
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"operadiff: exact operadic differential calculus", "operadiff"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", g_.json, "machine-readable report");
    app.add_option("--seed", g_.seed, "seed for randomized suites")->capture_default_str();
    app.add_flag("--no-verify", g_.no_verify, "skip the axiom gate when loading spec files");

    std::function<int()> action;
    auto sub = [&](const char* name, const char* help, std::function<int()> f) {
      auto* s = app.add_subcommand(name, help);
      s->callback([&action, f] { action = f; });
      return s;
    };
    auto operad_opt = [&](CLI::App* s) { s->add_option("--operad", o_.operad, "com, ass, lie or pointed")->capture_default_str(); };
    auto algebra_opt = [&](CLI::App* s, bool required = true) {
      auto* opt = s->add_option("--algebra", o_.algebra, "algebra spec file");
      if (required) opt->required();
    };
    auto arity_opt = [&](CLI::App* s) {
      s->add_option("--arity", o_.arity, "arity bound")->capture_default_str();
    };
    auto cells_opt = [&](CLI::App* s) {
      s->add_option("--degree", o_.degree, "d-degree bound")->capture_default_str();
      s->add_option("--weight", o_.weight, "weight bound")->capture_default_str();
    };

    auto* s = sub("differentiate", "operadic derivative of an expression", [this] { return differentiate(); });
    operad_opt(s);
    s->add_option("--vars", o_.vars, "comma-separated variables (default: those occurring, sorted)");
    s->add_option("expression", o_.expr, "expression")->required();

    s = sub("compose", "compose P-POLY maps and compare both sides of the chain rule", [this] { return compose(); });
    operad_opt(s);
    s->add_option("--f", o_.f, "inner map, components separated by ';'")->required();
    s->add_option("--g", o_.g, "outer map, components separated by ';'")->required();
    s->add_option("--f-vars", o_.f_vars, "variables of f");
    s->add_option("--g-vars", o_.g_vars, "variables of g, one per component of f");

    s = sub("check-operad", "operad axioms", [this] { return check_operad(); });
    operad_opt(s);
    s->add_option("--spec", o_.spec, "operad-table spec file");
    arity_opt(s);

    auto suite_opts = [&](CLI::App* s) {
      operad_opt(s);
      arity_opt(s);
      s->add_option("--trials", o_.trials, "random elements")->capture_default_str();
      s->add_option("--dim", o_.dim, "dimension of the test module")->capture_default_str();
    };
    s = sub("check-dc", "differential combinator axioms", [this] { return check_dc(); });
    suite_opts(s);
    s = sub("check-lambda", "distributive law, monad laws and naturality", [this] { return check_lambda(); });
    suite_opts(s);

    s = sub("check-algebra", "algebra axioms of a spec file", [this] { return check_algebra(); });
    algebra_opt(s);
    arity_opt(s);

    s = sub("tangent", "the tangent bundle A x A", [this] { return tangent(); });
    algebra_opt(s);
    s = sub("tangent-check", "tangent structure equations", [this] { return tangent_check(); });
    algebra_opt(s);

    s = sub("derivations", "solve for the derivations of an algebra", [this] { return derivations(); });
    algebra_opt(s);

    s = sub("diff-object", "differential-object criteria", [this] { return diff_object(); });
    algebra_opt(s, false);
    operad_opt(s);
    s->add_option("--module", o_.module, "P(0)-module spec file");
    s->add_option("--free", o_.free_dim, "free algebra on this many generators");
    s->add_option("--weight", o_.weight, "weight bound for free algebras")->capture_default_str();
    s->add_option("--degree", o_.degree, "d-degree bound for modules")->capture_default_str();

    s = sub("kahler", "Kahler differentials through the adjoint tangent presentation", [this] { return kahler(); });
    algebra_opt(s);
    s->add_option("--weight", o_.weight, "weight bound")->capture_default_str();

    s = sub("adjoint-tangent", "adjoint tangent structure equations", [this] { return adjoint_tangent(); });
    algebra_opt(s);
    cells_opt(s);

    s = sub("check-adjunction", "unit, counit and triangle identities", [this] { return check_adjunction_cmd(); });
    algebra_opt(s, false);
    operad_opt(s);
    s->add_option("--free", o_.free_dim, "free algebra on this many generators (adds the tau check)");
    cells_opt(s);

    s = sub("check-cdc", "chain rule and the other differential category properties", [this] { return check_cdc(); });
    operad_opt(s);
    s->add_option("--trials", o_.cdc_trials, "random maps")->capture_default_str();

    try {
      std::reverse(args.begin(), args.end());
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out_, err_);
      return 2;
    }
    try {
      return action();
    } catch (const SpecAxiomError& e) {
      err_ << "error: " << e.what() << "\n";
      Outcome o;
      o.command = "load";
      o.instance = current_source_;
      o.report = e.report;
      return emit(o, g_, out_);
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return 2;
    }
  }

 private:
  LoadedSpec load(const std::string& path) {
    current_source_ = path;
    SpecOptions opt;
    opt.verify = !g_.no_verify;
    return parse_spec(path, opt);
  }

  Outcome outcome(const std::string& command, const std::string& operad, const std::string& instance) {
    Outcome o;
    o.command = command;
    o.operad = operad;
    o.instance = instance;
    return o;
  }

  AxiomOptions axiom_options() const {
    AxiomOptions a;
    a.dim_v = o_.dim;
    a.arity_bound = o_.arity;
    a.trials = o_.trials;
    a.seed = g_.seed;
    return a;
  }

  Json axiom_bounds() const { return Json{{"arity", o_.arity}, {"trials", o_.trials}, {"dim", o_.dim}}; }

  int differentiate() {
    auto P = named_operad(o_.operad);
    FreeMonad S(P);
    const auto& text = o_.expr;
    auto V = variables(o_.vars, P->flavor(), {text});
    auto e = parse_expression(S, text, V);
    auto d = diff_transform(S, e, V.dim());
    auto o = outcome("differentiate", o_.operad, text);
    o.show_report = false;
    o.result.push_back(render_free(*P, d, doubled(V)));
    o.report.subject = "derivative of " + text;
    if (!g_.no_verify) {
      auto& c = o.report.add("lambda-agreement", "pi2 o lambda o S(<1,0,0,1>) = d on this element");
      auto other = partial_from_lambda(S, e, V.dim());
      c.record(other == d, render_free(*P, other, doubled(V)));
    }
    return emit(o, g_, out_);
  }

  PPolyMap read_map(const FreeMonad& S, const std::string& text, const BasedModule& V) {
    PPolyMap f{V.dim(), 0, {}};
    for (const auto& c : split(text, ';')) f.components.push_back(parse_expression(S, c, V));
    f.target = f.components.size();
    return f;
  }

  int compose() {
    auto P = named_operad(o_.operad);
    FreeMonad S(P);
    auto fV = variables(o_.f_vars, P->flavor(), split(o_.f, ';'));
    auto gV = variables(o_.g_vars, P->flavor(), split(o_.g, ';'));
    auto f = read_map(S, o_.f, fV);
    auto g = read_map(S, o_.g, gV);
    if (g.source != f.target)
      throw InputError("g has " + std::to_string(g.source) + " variables but f has " + std::to_string(f.target) +
                       " components");
    const std::size_t n = f.source;
    auto gf = ppoly_compose(S, g, f);
    auto lhs = ppoly_diff(S, gf);
    auto f_pi1 = ppoly_compose(S, f, ppoly_projection(S, 2 * n, 0, n));
    auto rhs = ppoly_compose(S, ppoly_diff(S, g), ppoly_pair(f_pi1, ppoly_diff(S, f)));
    auto W = doubled(fV);
    auto show = [&](const PPolyMap& m, const BasedModule& vars) {
      std::string s;
      for (std::size_t i = 0; i < m.components.size(); ++i) s += (i ? "; " : "") + render_free(*P, m.components[i], vars);
      return s;
    };
    auto o = outcome("compose", o_.operad, "g = " + o_.g + ", f = " + o_.f);
    o.show_report = false;
    o.result.push_back("g o f = " + show(gf, fV));
    o.result.push_back("D[g o f] = " + show(lhs, W));
    o.result.push_back("D[g] o <f o pi1, D[f]> = " + show(rhs, W));
    o.report.subject = "chain rule";
    o.report.add("chain-rule", "D[g o f] = D[g] o <f o pi1, D[f]>").record(lhs == rhs, show(lhs, W) + " vs " + show(rhs, W));
    return emit(o, g_, out_);
  }

  int check_operad() {
    OperadPtr P;
    std::string instance = o_.operad;
    if (!o_.spec.empty()) {
      SpecOptions opt;
      opt.verify = false;
      current_source_ = o_.spec;
      auto s = parse_spec(o_.spec, opt);
      if (!s.operad || s.kind != "operad-table") throw InputError(o_.spec + ": expected an operad-table spec");
      P = s.operad;
      instance = o_.spec;
    } else {
      P = named_operad(o_.operad);
    }
    auto o = outcome("check-operad", P->name(), instance);
    std::size_t bound = o_.arity;
    if (P->max_arity()) bound = std::min(bound, *P->max_arity());
    o.report = check_operad_axioms(*P, bound);
    o.bounds = Json{{"arity", bound}};
    return emit(o, g_, out_);
  }

  int check_dc() {
    FreeMonad S(named_operad(o_.operad));
    auto o = outcome("check-dc", o_.operad, "S(" + S.operad().name() + ", V), dim V = " + std::to_string(o_.dim));
    o.report = check_dc_axioms(S, axiom_options());
    o.bounds = axiom_bounds();
    return emit(o, g_, out_);
  }

  int check_lambda() {
    FreeMonad S(named_operad(o_.operad));
    auto opt = axiom_options();
    auto o = outcome("check-lambda", o_.operad, "S(" + S.operad().name() + ", V), dim V = " + std::to_string(o_.dim));
    o.report = check_lambda_axioms(S, opt);
    o.report.append(check_lambda_round_trip(S, opt), "d-from-lambda/");
    o.report.append(check_monad_laws(S, opt), "monad/");
    o.report.append(check_naturality(S, opt), "naturality/");
    o.bounds = axiom_bounds();
    return emit(o, g_, out_);
  }

  int check_algebra() {
    SpecOptions opt;
    opt.verify = false;
    current_source_ = o_.algebra;
    auto s = parse_spec(o_.algebra, opt);
    const auto& A = s.require_algebra();
    auto o = outcome("check-algebra", A.operad().name(), o_.algebra);
    o.report = check_algebra_axioms(A, o_.arity);
    if (s.module) o.report.append(check_module(*s.module, std::min<std::size_t>(o_.arity, 3)), "module/");
    o.bounds = Json{{"arity", o_.arity}};
    return emit(o, g_, out_);
  }

  std::string render_tables(const PAlgebra& A) {
    std::ostringstream os;
    const auto gens = A.operad().generators();
    const auto& M = A.carrier();
    for (std::size_t g = 0; g < gens.size(); ++g)
      for (const auto& [idx, v] : A.tables()[g]) {
        os << gens[g].name << "(";
        for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? ", " : "") << M.name(idx[i]);
        os << ") = " << render_vector(v, M) << "\n";
      }
    return os.str();
  }

  int tangent() {
    auto s = load(o_.algebra);
    const auto& A = s.require_algebra();
    auto T = tangent_bundle(A);
    auto o = outcome("tangent", A.operad().name(), o_.algebra);
    o.show_report = false;
    std::string basis;
    for (const auto& n : T.carrier().names()) basis += (basis.empty() ? "" : ", ") + n;
    o.result.push_back("T(A) basis: " + basis);
    auto tables = render_tables(T);
    for (const auto& line : split(tables, '\n'))
      if (!line.empty()) o.result.push_back(line);
    o.report.subject = "tangent bundle of " + o_.algebra;
    if (!g_.no_verify) {
      o.report.append(compare_algebras(T, tangent_bundle_from_monad(A), 3), "from-lambda/");
      o.report.append(check_algebra_axioms(T, 3), "T(A)/");
    }
    return emit(o, g_, out_);
  }

  int tangent_check() {
    auto s = load(o_.algebra);
    const auto& A = s.require_algebra();
    auto o = outcome("tangent-check", A.operad().name(), o_.algebra);
    o.report = check_tangent_equations(A, tangent_maps(A.dim()));
    return emit(o, g_, out_);
  }

  int derivations() {
    auto s = load(o_.algebra);
    const auto& A = s.require_algebra();
    auto Ds = derivation_space(A);
    auto o = outcome("derivations", A.operad().name(), o_.algebra);
    o.show_report = false;
    o.result.push_back(render_derivations(A, Ds));
    o.report.subject = "derivations of " + o_.algebra;
    if (!g_.no_verify) {
      auto& leib = o.report.add("leibniz", "every basis element is a derivation");
      auto& closed = o.report.add("commutator-closure", "[D1, D2] is a derivation");
      auto& rt1 = o.report.add("vf-round-trip", "D -> v_D -> D_v is the identity");
      for (const auto& D : Ds) {
        std::string w;
        leib.record(is_derivation(A, D, &w), w);
        auto v = vector_field_from_derivation(A, D);
        rt1.record(derivation_from_vector_field(A, v) == D);
        for (const auto& E : Ds) closed.record(is_derivation(A, derivation_bracket(D, E), &w), w);
      }
    }
    return emit(o, g_, out_);
  }

  int diff_object() {
    if (!o_.algebra.empty()) {
      auto s = load(o_.algebra);
      const auto& A = s.require_algebra();
      auto v = check_differential_object_alg(A);
      auto o = outcome("diff-object", A.operad().name(), o_.algebra);
      o.show_report = false;
      o.result.push_back("differential object: " + yes_no(v.by_operations) + " (operations: " +
                         yes_no(v.by_operations) + ", monad: " + yes_no(v.by_monad) + ")");
      if (!v.witness.empty()) o.result.push_back("witness: " + v.witness);
      o.report.subject = "differential-object criteria";
      o.report.add("criteria-agree", "operation criterion = monad criterion").record(v.by_operations == v.by_monad, v.witness);
      o.bounds = Json{{"arity", 4}};
      return emit(o, g_, out_);
    }
    if (!o_.module.empty()) {
      auto s = load(o_.module);
      if (!s.module) throw InputError(o_.module + ": expected a module spec");
      auto o = outcome("diff-object", s.operad->name(), o_.module);
      o.report = diff_object_from_p0_module(*s.module, o_.degree);
      o.bounds = Json{{"degree", o_.degree}};
      return emit(o, g_, out_);
    }
    if (o_.free_dim == 0) throw InputError("diff-object needs --algebra, --module or --free");
    auto P = named_operad(o_.operad);
    auto o = outcome("diff-object", o_.operad, "S(" + P->name() + ", V), dim V = " + std::to_string(o_.free_dim));
    o.report = check_free_differential_object(P, o_.free_dim, o_.weight);
    o.bounds = Json{{"weight", o_.weight}};
    return emit(o, g_, out_);
  }

  int kahler() {
    auto s = load(o_.algebra);
    auto A = s.graded();
    auto k = kahler_truncated(A, o_.weight);
    auto o = outcome("kahler", A->operad().name(), o_.algebra);
    o.show_report = false;
    std::size_t total = 0;
    std::string cells;
    for (const auto& [key, d] : k.dims) {
      total += d;
      cells += (cells.empty() ? "" : ", ") + std::to_string(key.second) + ":" + std::to_string(d);
    }
    o.result.push_back("dim Omega = " + std::to_string(total) + " (weight <= " +
                       std::to_string(k.presentation->max_weight()) + ")");
    o.result.push_back("by weight: " + cells);
    o.report.subject = "Kahler differentials of " + o_.algebra;
    const auto flavor = A->operad().flavor();
    if (flavor == "com" || flavor == "pointed")
      o.report.add("closed-form", "generic cells agree with the closed form").record(k.exact);
    o.bounds = Json{{"weight", k.presentation->max_weight()}};
    return emit(o, g_, out_);
  }

  int adjoint_tangent() {
    auto s = load(o_.algebra);
    AdjointSuiteOptions opt;
    opt.bounds = bounds(o_.degree, o_.weight);
    auto A = s.graded();
    auto o = outcome("adjoint-tangent", A->operad().name(), o_.algebra);
    o.report = check_adjoint_tangent_equations(A, adjoint_tangent_maps(), opt);
    o.bounds = Json{{"degree", o_.degree}, {"weight", o_.weight}};
    return emit(o, g_, out_);
  }

  int check_adjunction_cmd() {
    if (!o_.algebra.empty()) {
      auto s = load(o_.algebra);
      auto A = s.graded();
      auto o = outcome("check-adjunction", A->operad().name(), o_.algebra);
      o.report = check_adjunction(A, bounds(o_.degree, o_.weight));
      o.bounds = Json{{"degree", o_.degree}, {"weight", o_.weight}};
      return emit(o, g_, out_);
    }
    if (o_.free_dim == 0) throw InputError("check-adjunction needs --algebra or --free");
    auto P = named_operad(o_.operad);
    auto o = outcome("check-adjunction", o_.operad, "S(" + P->name() + ", V), dim V = " + std::to_string(o_.free_dim));
    auto tau = check_tau(P, o_.free_dim, o_.weight, g_.seed);
    o.report = tau.report;
    o.result.push_back("T° cells:");
    for (const auto& line : split(render_cell_table(tau.presentation_dims), '\n'))
      if (!line.empty()) o.result.push_back(line);
    o.report.append(check_adjunction(free_algebra_truncated(P, o_.free_dim, o_.weight), bounds(o_.degree, o_.weight)));
    o.bounds = Json{{"degree", o_.degree}, {"weight", o_.weight}};
    return emit(o, g_, out_);
  }

  int check_cdc() {
    FreeMonad S(named_operad(o_.operad));
    CdcOptions opt;
    opt.trials = o_.cdc_trials;
    opt.seed = g_.seed;
    auto o = outcome("check-cdc", o_.operad, S.operad().name() + "-POLY");
    o.report = check_cdc_properties(S, opt);
    o.bounds = Json{{"trials", o_.cdc_trials}, {"arity", opt.max_arity}};
    return emit(o, g_, out_);
  }

  std::ostream& out_;
  std::ostream& err_;
  Globals g_;
  Options o_;
  std::string current_source_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace operadiff
