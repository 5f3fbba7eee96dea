#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace operadiff {

// Outcome of one law checked over a family of instances. The first failing
// instance is kept as counterexample.
struct Check {
  std::string name;
  std::string statement;
  bool passed = true;
  std::size_t instances = 0;
  std::string counterexample;

  // Records one instance; returns ok so callers can short-circuit.
  bool record(bool ok, const std::string& witness = {});
  template <class F>
  bool record_lazy(bool ok, F&& witness) {
    ++instances;
    if (!ok && passed) {
      passed = false;
      counterexample = witness();
    }
    return ok;
  }
};

struct Report {
  std::string subject;
  std::deque<Check> checks;  // deque: add() hands out stable references

  bool passed() const;
  Check& add(std::string name, std::string statement);
  Check* find(const std::string& name);
  const Check* find(const std::string& name) const;
  void append(const Report& other, const std::string& prefix = {});
  std::string render() const;
};

}  // namespace operadiff
