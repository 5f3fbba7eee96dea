#include <doctest.h>

#include "operadiff/presentation.hpp"

using namespace operadiff;

namespace {

PresentationBounds bounds(std::size_t d, std::size_t w) {
  PresentationBounds b;
  b.max_degree = d;
  b.max_weight = w;
  return b;
}

}  // namespace

TEST_CASE("label sets") {
  auto T = LabelSet::tangent();
  CHECK(T.size() == 2);
  CHECK(T.prefix(1) == "d");
  auto T2 = LabelSet::pullback(2);
  CHECK(T2.prefix(2) == "d2");
  CHECK(T2.degree(2) == 1);
  auto TT = LabelSet::iterated(2);
  CHECK(TT.prefix(3) == "d'd");
  CHECK(TT.degree(3) == 2);
  CHECK(TT.index(2) == 2);
  CHECK_THROWS_AS(T.index(2), InputError);
}

TEST_CASE("gradings must be homogeneous") {
  CHECK_NOTHROW(graded_truncated_polynomial(3));
  CHECK_THROWS_AS(with_grading(truncated_polynomial_algebra(3), {0, 1, 1}), InputError);
}

TEST_CASE("adjoint tangent cells of truncated polynomial algebras") {
  // dual numbers: 1 | x | dx | dx.dx, and x dx = 0 from d(x^2) = 2x dx
  auto X = Presentation::weil(graded_truncated_polynomial(2), LabelSet::tangent(), bounds(2, 2));
  CHECK(X->dim(0, 0) == 1);
  CHECK(X->dim(0, 1) == 1);
  CHECK(X->dim(0, 2) == 0);
  CHECK(X->dim(1, 0) == 0);
  CHECK(X->dim(1, 1) == 1);
  CHECK(X->dim(1, 2) == 0);
  CHECK(X->dim(2, 2) == 1);
  CHECK_THROWS_AS(X->dim(3, 0), TruncationError);

  // d is a derivation in the quotient
  auto x = X->letter_element(X->letter_index(0, 1));
  auto dx = X->letter_element(X->letter_index(1, 1));
  const auto& S = X->monad();
  auto prod = S.apply(OperadElement::basis(2, 0), std::vector<FreeElement>{x, dx});
  CHECK(X->is_zero(prod));
  CHECK_FALSE(X->is_zero(dx));
}

TEST_CASE("polynomial ring cells are those of Q[x, dx]") {
  auto X = Presentation::weil(graded_truncated_polynomial(5), LabelSet::tangent(), bounds(4, 4));
  for (std::size_t d = 0; d <= 4; ++d)
    for (std::size_t w = 0; w <= 4; ++w) CHECK(X->dim(d, w) == (d <= w ? 1u : 0u));
}

TEST_CASE("widened cells reduce long terms") {
  auto X = Presentation::weil(graded_truncated_polynomial(3), LabelSet::tangent(), bounds(1, 2));
  auto one = X->letter_element(X->letter_index(0, 0));
  auto dx = X->letter_element(X->letter_index(1, 1));
  const auto& S = X->monad();
  // 1 * 1 * 1 * dx has arity 4 > bound 2
  auto e = S.apply(OperadElement::basis(4, 0), std::vector<FreeElement>{one, one, one, dx});
  CHECK(X->normal_form(e) == X->normal_form(dx));
}
