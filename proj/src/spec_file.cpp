#include "operadiff/spec_file.hpp"

#include <toml.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace operadiff {

OperadPtr named_operad(const std::string& name) {
  if (name == "com") return make_com_operad();
  if (name == "ass") return make_ass_operad();
  if (name == "lie") return make_lie_operad();
  if (name == "pointed") {
    AssocAlgebraData A;
    A.basis = BasedModule({"1", "t"});
    A.mult = {{Vector(0), Vector(1)}, {Vector(1), Vector()}};
    A.unit = Vector(0);
    return make_pointed_operad(std::move(A));
  }
  throw InputError("unknown operad '" + name + "' (expected com, ass, lie or pointed)");
}

const PAlgebra& LoadedSpec::require_algebra() const {
  if (!algebra) throw InputError(source + ": expected an algebra or module spec, found " + kind);
  return *algebra;
}

GradedAlgebra LoadedSpec::graded() const {
  const auto& A = require_algebra();
  if (!weights) throw InputError(source + ": this computation needs a 'weights' list");
  return with_grading(A, *weights);
}

namespace {

class Reader {
 public:
  Reader(const toml::table& root, std::string source, std::uint64_t p)
      : root_(root), source_(std::move(source)), p_(p) {}

  [[noreturn]] void error(const toml::node* at, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    if (at && at->source().begin.line) os << ":" << at->source().begin.line << ":" << at->source().begin.column;
    os << ": " << msg;
    throw InputError(os.str());
  }
  [[noreturn]] void error(const std::string& msg) const { error(nullptr, msg); }

  std::string string(const toml::table& t, const char* key) const {
    auto n = t.get(key);
    if (!n) error(&t, std::string("missing key '") + key + "'");
    auto s = n->value<std::string>();
    if (!s) error(n, std::string("'") + key + "' must be a string");
    return *s;
  }

  std::vector<std::string> strings(const toml::node& n, const char* what) const {
    auto arr = n.as_array();
    if (!arr) error(&n, std::string(what) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : *arr) {
      auto s = e.value<std::string>();
      if (!s) error(&e, std::string(what) + " must contain strings");
      out.push_back(*s);
    }
    return out;
  }

  Scalar scalar(const toml::node& n) const {
    Scalar v;
    if (auto s = n.value<std::string>()) {
      try {
        v = Scalar::parse(*s);
      } catch (const InputError& e) {
        error(&n, e.what());
      }
    } else if (auto i = n.value<std::int64_t>()) {
      v = Scalar(static_cast<long>(*i));
    } else {
      error(&n, "coefficients are integers or \"p/q\" strings");
    }
    return p_ ? Scalar::residue(1, p_) * v : v;
  }

  // Either a basis name or a table { name = coefficient }.
  Vector vector(const toml::node& n, const BasedModule& M) const {
    Vector v;
    if (auto s = n.value<std::string>()) {
      auto i = M.find(*s);
      if (!i) error(&n, "undeclared symbol '" + *s + "'");
      v.add(*i, p_ ? Scalar::residue(1, p_) : Scalar(1));
      return v;
    }
    auto t = n.as_table();
    if (!t) error(&n, "expected a symbol or a table of coefficients");
    for (const auto& [k, c] : *t) {
      auto i = M.find(std::string(k.str()));
      if (!i) error(&c, "undeclared symbol '" + std::string(k.str()) + "'");
      v.add(*i, scalar(c));
    }
    return v;
  }

  const toml::array* array_of_tables(const char* key) const {
    auto n = root_.get(key);
    if (!n) return nullptr;
    auto a = n->as_array();
    if (!a || !a->is_array_of_tables()) error(n, std::string("'") + key + "' must be an array of tables");
    return a;
  }

  const toml::table& root_;
  std::string source_;
  std::uint64_t p_;
};

BasedModule declared_basis(const Reader& r, const toml::node& n, const char* what) {
  auto names = r.strings(n, what);
  try {
    return BasedModule(names);
  } catch (const InputError& e) {
    r.error(&n, e.what());
  }
}

PAlgebra read_algebra(const Reader& r, const toml::table& root, OperadPtr P, const BasedModule& carrier) {
  const auto gens = P->generators();
  std::vector<GeneratorTable> tables(gens.size());
  auto gen_index = [&](const toml::node* at, const std::string& name) {
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (gens[g].name == name) return g;
    std::string known;
    for (const auto& g : gens) known += (known.empty() ? "" : ", ") + g.name;
    r.error(at, "unknown operation '" + name + "' for " + P->name() + " (generators: " + known + ")");
  };
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> given;
  if (auto arr = r.array_of_tables("table"))
    for (const auto& e : *arr) {
      const auto& t = *e.as_table();
      auto g = gen_index(&t, r.string(t, "op"));
      auto in = t.get("inputs");
      if (!in) r.error(&t, "missing key 'inputs'");
      std::vector<std::size_t> idx;
      for (const auto& s : r.strings(*in, "inputs")) {
        auto i = carrier.find(s);
        if (!i) r.error(in, "undeclared symbol '" + s + "'");
        idx.push_back(*i);
      }
      if (idx.size() != gens[g].arity)
        r.error(&t, "operation '" + gens[g].name + "' takes " + std::to_string(gens[g].arity) + " inputs");
      auto out = t.get("output");
      if (!out) r.error(&t, "missing key 'output'");
      if (!given.insert({g, idx}).second) r.error(&t, "duplicate table entry");
      tables[g][idx] = r.vector(*out, carrier);
    }

  const auto flavor = P->flavor();
  // unit = "1": unit value, and 1*a = a*1 = a wherever not given.
  if (auto u = root.get("unit")) {
    if (flavor != "com" && flavor != "ass") r.error(u, "'unit' is only meaningful for com and ass");
    auto unit = r.vector(*u, carrier);
    tables[0][{}] = unit;
    if (unit.size() == 1 && unit.begin()->second.is_one()) {
      auto e = unit.begin()->first;
      for (std::size_t a = 0; a < carrier.dim(); ++a)
        for (auto idx : {std::vector<std::size_t>{e, a}, std::vector<std::size_t>{a, e}})
          if (!given.count({1, idx})) tables[1][idx] = Vector(a);
    }
  }
  // Commutative products and brackets may be listed in one order only.
  if (flavor == "com" || flavor == "lie") {
    const std::size_t g = flavor == "com" ? 1 : 0;
    Scalar sign = flavor == "com" ? Scalar(1) : Scalar(-1);
    auto copy = tables[g];
    for (const auto& [idx, v] : copy) {
      std::vector<std::size_t> rev{idx[1], idx[0]};
      if (!given.count({g, rev}) && !tables[g].count(rev)) tables[g][rev] = sign * v;
    }
  }
  for (auto& t : tables)
    for (auto it = t.begin(); it != t.end();) it = it->second.is_zero() ? t.erase(it) : std::next(it);
  return PAlgebra(P, carrier, std::move(tables));
}

OperadPtr read_operad_table(const Reader& r, const toml::table& root) {
  OperadTableData d;
  d.name = root.get("name") ? r.string(root, "name") : "table";
  auto b = root.get("basis");
  if (!b || !b->as_array()) r.error(&root, "'basis' must list the symbols of every arity");
  std::map<std::string, std::pair<std::size_t, std::size_t>> where;
  for (const auto& comp : *b->as_array()) {
    d.basis.push_back(r.strings(comp, "basis entries"));
    for (std::size_t i = 0; i < d.basis.back().size(); ++i)
      if (!where.emplace(d.basis.back()[i], std::pair{d.basis.size() - 1, i}).second)
        r.error(&comp, "duplicate symbol '" + d.basis.back()[i] + "'");
  }
  if (d.basis.empty()) r.error(b, "'basis' is empty");
  d.max_arity = d.basis.size() - 1;
  if (d.max_arity < 1) r.error(b, "need arity one for the unit");
  auto component = [&](std::size_t n) { return BasedModule(d.basis[n]); };
  auto op = [&](const toml::table& t, const char* key) {
    auto s = r.string(t, key);
    auto it = where.find(s);
    if (it == where.end()) r.error(&t, "undeclared symbol '" + s + "'");
    return it->second;
  };
  auto u = root.get("unit");
  if (!u) r.error(&root, "missing key 'unit'");
  d.unit = r.vector(*u, component(1));

  d.act.resize(d.basis.size());
  for (std::size_t n = 0; n < d.basis.size(); ++n) {
    d.act[n].resize(d.basis[n].size());
    for (std::size_t i = 0; i < d.basis[n].size(); ++i)
      for (std::size_t k = 0; k + 1 < n; ++k) d.act[n][i].push_back(Vector(i));
  }
  // swap = k acts by the transposition of inputs k and k+1 (1-based).
  if (auto arr = r.array_of_tables("action"))
    for (const auto& e : *arr) {
      const auto& t = *e.as_table();
      auto [n, i] = op(t, "op");
      auto k = t.get("swap") ? t.get("swap")->value<std::int64_t>() : std::nullopt;
      if (!k || *k < 1 || static_cast<std::size_t>(*k) >= n) r.error(&t, "'swap' must be in 1..arity-1");
      auto out = t.get("output");
      if (!out) r.error(&t, "missing key 'output'");
      d.act[n][i][static_cast<std::size_t>(*k) - 1] = r.vector(*out, component(n));
    }
  // slot is 1-based.
  if (auto arr = r.array_of_tables("compose"))
    for (const auto& e : *arr) {
      const auto& t = *e.as_table();
      auto [m, a] = op(t, "outer");
      auto [n, bb] = op(t, "inner");
      auto slot = t.get("slot") ? t.get("slot")->value<std::int64_t>() : std::nullopt;
      if (!slot || *slot < 1 || static_cast<std::size_t>(*slot) > m) r.error(&t, "'slot' must be in 1..arity");
      if (m + n - 1 > d.max_arity) r.error(&t, "composite exceeds the largest declared arity");
      auto out = t.get("output");
      if (!out) r.error(&t, "missing key 'output'");
      d.compose[{m, a, static_cast<std::size_t>(*slot) - 1, n, bb}] = r.vector(*out, component(m + n - 1));
    }
  return make_table_operad(std::move(d));
}

}  // namespace

LoadedSpec parse_spec_text(std::string_view text, const std::string& source, const SpecOptions& opt) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
    throw InputError(os.str());
  }
  std::uint64_t p = 0;
  if (auto c = root.get("characteristic")) {
    auto v = c->value<std::int64_t>();
    if (!v || *v < 0) Reader(root, source, 0).error(c, "'characteristic' must be 0 or a prime");
    p = static_cast<std::uint64_t>(*v);
    if (p) Scalar::residue(0, p);  // rejects non-primes
  }
  Reader r(root, source, p);

  LoadedSpec out;
  out.source = source;
  out.kind = r.string(root, "kind");
  if (out.kind == "operad-table") {
    out.operad = read_operad_table(r, root);
    if (opt.verify) out.verification = check_operad_axioms(*out.operad, *out.operad->max_arity());
  } else if (out.kind == "algebra" || out.kind == "module") {
    try {
      out.operad = named_operad(r.string(root, "operad"));
    } catch (const InputError& e) {
      r.error(root.get("operad"), e.what());
    }
    auto b = root.get("basis");
    if (!b) r.error(&root, "missing key 'basis'");
    auto carrier = declared_basis(r, *b, "basis");
    const std::size_t base_dim = carrier.dim();
    std::vector<std::size_t> weights;
    auto read_weights = [&](const char* key, std::size_t expect) {
      auto w = root.get(key);
      if (!w) return false;
      auto arr = w->as_array();
      if (!arr || arr->size() != expect) r.error(w, std::string("'") + key + "' needs one entry per basis element");
      for (const auto& e : *arr) {
        auto v = e.value<std::int64_t>();
        if (!v || *v < 0) r.error(&e, "weights are non-negative integers");
        weights.push_back(static_cast<std::size_t>(*v));
      }
      return true;
    };
    bool graded = read_weights("weights", base_dim);
    if (out.kind == "module") {
      auto mb = root.get("module_basis");
      if (!mb) r.error(&root, "missing key 'module_basis'");
      auto names = carrier.names();
      for (const auto& s : r.strings(*mb, "module_basis")) names.push_back(s);
      try {
        carrier = BasedModule(names);
      } catch (const InputError& e) {
        r.error(mb, e.what());
      }
      bool mg = read_weights("module_weights", carrier.dim() - base_dim);
      if (graded != mg) r.error(&root, "give both 'weights' and 'module_weights' or neither");
    }
    out.algebra.emplace(read_algebra(r, root, out.operad, carrier));
    if (graded) {
      out.weights = weights;
      try {
        with_grading(*out.algebra, weights);
      } catch (const InputError& e) {
        r.error(root.get("weights"), e.what());
      }
    }
    if (out.kind == "module") {
      AlgebraModule M;
      M.extension = graded ? with_grading(*out.algebra, weights) : ungraded(*out.algebra);
      M.base_dim = base_dim;
      out.module = M;
      if (opt.verify) {
        out.verification = check_algebra_axioms(*out.algebra, opt.arity_bound);
        out.verification.append(check_module(M, opt.arity_bound));
      }
    } else if (opt.verify) {
      out.verification = check_algebra_axioms(*out.algebra, opt.arity_bound);
    }
  } else {
    r.error(root.get("kind"), "unknown kind '" + out.kind + "' (expected operad-table, algebra or module)");
  }
  if (opt.verify && !out.verification.passed()) throw SpecAxiomError(out.verification);
  return out;
}

LoadedSpec parse_spec(const std::string& path, const SpecOptions& opt) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), path, opt);
}

}  // namespace operadiff
