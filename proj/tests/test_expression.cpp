#include <doctest.h>

#include "operadiff/expression.hpp"
#include "operadiff/spec_file.hpp"

using namespace operadiff;

namespace {

FreeElement term(const FreeMonad& S, std::size_t n, std::size_t op, std::vector<Var> w, Scalar c = 1) {
  FreeElement e;
  e.add(S.canonicalize(OperadElement::basis(n, op), w), c);
  return e;
}

}  // namespace

TEST_CASE("com expressions") {
  FreeMonad S(make_com_operad());
  BasedModule V({"x", "y"});
  auto e = parse_expression(S, "2*x^2*y - 1/3*y^3", V);
  // hand expansion: 2 (c3; x, x, y) - 1/3 (c3; y, y, y)
  FreeElement want = term(S, 3, 0, {0, 0, 1}, 2);
  want.add(term(S, 3, 0, {1, 1, 1}, Scalar(-1, 3)));
  CHECK(e == want);
  CHECK(parse_expression(S, "2*y*x*x", V) == parse_expression(S, "2x^2*y", V));
  CHECK(parse_expression(S, "(x + y)*(x - y)", V) == parse_expression(S, "x^2 - y^2", V));
  CHECK(parse_expression(S, "3", V) == term(S, 0, 0, {}, 3));
  CHECK(parse_expression(S, "x^0", V) == term(S, 0, 0, {}));
  CHECK(parse_expression(S, "x - x", V).is_zero());
  CHECK(render_free(S.operad(), e, V) == "2*x^2*y - 1/3*y^3");
}

TEST_CASE("ass expressions keep word order") {
  FreeMonad S(make_ass_operad());
  BasedModule V({"x", "y"});
  auto e = parse_expression(S, "x*y - y*x", V);
  FreeElement want = term(S, 2, 0, {0, 1});
  want.add(term(S, 2, 0, {1, 0}, -1));
  CHECK(e == want);
  CHECK(e.size() == 2);
  CHECK(parse_expression(S, "(x*y)*x", V) == parse_expression(S, "x*(y*x)", V));
}

TEST_CASE("lie expressions") {
  FreeMonad S(make_lie_operad());
  BasedModule V({"x", "y", "z"});
  auto b = [&](const char* s) { return parse_expression(S, s, V); };
  CHECK((b("[x,y]") + b("[y,x]")).is_zero());
  CHECK(b("[x,[y,x]]") == b("-[x,[x,y]]"));
  CHECK((b("[x,[y,z]]") + b("[y,[z,x]]") + b("[z,[x,y]]")).is_zero());
  CHECK(b("[x,x]").is_zero());
  CHECK(b("2[x+y,z]") == b("2*[x,z] + 2*[y,z]"));
  CHECK_FALSE(b("[x,[y,x]]").is_zero());
}

TEST_CASE("expression errors") {
  FreeMonad com(make_com_operad()), lie(make_lie_operad()), ass(make_ass_operad());
  BasedModule V({"x", "y"});
  CHECK_THROWS_AS(parse_expression(lie, "x^2", V), InputError);
  CHECK_THROWS_AS(parse_expression(lie, "x*y", V), InputError);
  CHECK_THROWS_AS(parse_expression(lie, "1", V), InputError);
  CHECK_THROWS_AS(parse_expression(com, "[x,y]", V), InputError);
  CHECK_THROWS_AS(parse_expression(ass, "x^2", V), InputError);
  CHECK_THROWS_AS(parse_expression(com, "z", V), InputError);
  CHECK_THROWS_AS(parse_expression(com, "x +", V), InputError);
  CHECK_THROWS_AS(parse_expression(com, "x y", V), InputError);
  CHECK_THROWS_AS(parse_expression(com, "1/0*x", V), InputError);
  try {
    parse_expression(com, "x +\n  * y", V);
    FAIL("no error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2, column 3") != std::string::npos);
  }
}

TEST_CASE("variables of an expression") {
  auto e = parse_expression_ast("com", "y*dx + x^2 - d'x");
  CHECK(expression_variables(e) == std::vector<std::string>{"d'x", "dx", "x", "y"});
}

TEST_CASE("parse and render round trip") {
  BasedModule V({"x", "y", "dx", "d1x", "d'x"});
  for (const auto& name : {"com", "ass", "lie", "pointed"}) {
    FreeMonad S(named_operad(name));
    RandomFree R(11);
    R.coeff_min = -5;
    for (int i = 0; i < 200; ++i) {
      auto e = R.element(S, V.dim(), 4);
      if (i % 3 == 0) {
        FreeElement f;
        f.add(e, Scalar(1, 1 + i % 7));
        e = f;
      }
      auto text = render_free(S.operad(), e, V);
      INFO(name << ": " << text);
      auto back = parse_expression(S, text, V);
      CHECK(back == e);
      CHECK(render_free(S.operad(), back, V) == text);
    }
  }
}
