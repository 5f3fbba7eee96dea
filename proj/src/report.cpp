#include "operadiff/report.hpp"

#include <sstream>

namespace operadiff {

bool Check::record(bool ok, const std::string& witness) {
  ++instances;
  if (!ok && passed) {
    passed = false;
    counterexample = witness;
  }
  return ok;
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

Check& Report::add(std::string name, std::string statement) {
  Check c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  checks.push_back(std::move(c));
  return checks.back();
}

Check* Report::find(const std::string& name) {
  for (auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

void Report::append(const Report& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.name = prefix + c.name;
    checks.push_back(std::move(c));
  }
}

std::string Report::render() const {
  std::ostringstream os;
  if (!subject.empty()) os << subject << "\n";
  for (const auto& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  (" << c.instances << " instances)";
    if (!c.statement.empty()) os << "  " << c.statement;
    os << "\n";
    if (!c.passed) os << "  counterexample: " << c.counterexample << "\n";
  }
  return os.str();
}

}  // namespace operadiff
