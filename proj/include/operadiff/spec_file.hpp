#pragma once

#include "operadiff/presentation.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace operadiff {

// com, ass, lie, or pointed (the pointed operad of Q[t]/t^2, basis 1, t).
OperadPtr named_operad(const std::string& name);

// Contents of a spec file. kind is "operad-table", "algebra" or "module".
// Algebras list generator values as [[table]] entries
//   op = "mul", inputs = ["x", "x"], output = { x = "1/2" }
// with missing entries zero. For modules the tables cover A x M, the basis
// of A first.
struct LoadedSpec {
  std::string kind;
  std::string source;
  OperadPtr operad;
  std::optional<PAlgebra> algebra;  // the algebra, or A x M for modules
  std::optional<AlgebraModule> module;
  std::optional<std::vector<std::size_t>> weights;
  Report verification;  // no checks when loaded without verification

  const PAlgebra& require_algebra() const;
  // Requires a weights list.
  GradedAlgebra graded() const;
};

struct SpecOptions {
  bool verify = true;
  std::size_t arity_bound = 3;
};

// Construction-time gate failed: the file parsed but the object violates its axioms.
struct SpecAxiomError : Error {
  Report report;
  explicit SpecAxiomError(Report r) : Error("axiom violation in " + r.subject), report(std::move(r)) {}
};

// Throws InputError on syntax or schema errors and SpecAxiomError on axiom
// violations (unless opt.verify is false).
LoadedSpec parse_spec_text(std::string_view text, const std::string& source, const SpecOptions& opt = {});
LoadedSpec parse_spec(const std::string& path, const SpecOptions& opt = {});

}  // namespace operadiff
