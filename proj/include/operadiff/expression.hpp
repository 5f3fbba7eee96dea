#pragma once

#include "operadiff/free_monad.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace operadiff {

// Syntax tree of an element of S(P, V) written in the flavor's notation:
//   com   2*x^2*y - 1/3*y^3
//   ass   x*y - y*x
//   lie   [x,[y,x]] + 2*[x,y]
//   other sym(x, y), sym being a basis symbol of P
struct Expr {
  enum class Kind { Constant, Variable, Sum, Scale, Product, Power, Bracket, Call };

  Kind kind = Kind::Constant;
  Scalar value;       // Constant, Scale
  std::string name;   // Variable, Power, Call
  std::size_t exponent = 0;
  std::vector<Expr> children;
  std::size_t line = 1, column = 1;
};

// Throws InputError with line and column on syntax errors and on
// constructs the flavor does not allow.
Expr parse_expression_ast(std::string_view flavor, std::string_view text);
// Throws InputError on unknown variables or operation symbols.
FreeElement evaluate_expression(const FreeMonad& S, const Expr& e, const BasedModule& V);
FreeElement parse_expression(const FreeMonad& S, std::string_view text, const BasedModule& V);

// Variable names occurring in e, sorted and without repeats.
std::vector<std::string> expression_variables(const Expr& e);

}  // namespace operadiff
