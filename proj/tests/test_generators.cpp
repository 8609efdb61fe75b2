#include "doctest.h"
#include "e8jacobi/errors.hpp"
#include "e8jacobi/generators.hpp"

using namespace e8jac;

namespace {

OrbitPoly orb(int node) { return OrbitPoly{{pack(DominantWeight::fundamental(node)), 1}}; }

}  // namespace

TEST_CASE("polynomial parsing and printing") {
  const auto p = parse_polynomial("864 A1^3 A2 + 3825*A1*B2^2");
  CHECK(p.to_string() == "864*A1^3*A2 + 3825*A1*B2^2");
  CHECK(parse_polynomial(p.to_string()) == p);
  CHECK(poly_p165().terms().size() == 6);
  CHECK(poly_q185().terms().size() == 11);
  CHECK(poly_p165().bidegree() == std::make_pair(16, 5));
  CHECK(poly_q185().bidegree() == std::make_pair(18, 5));
  CHECK(parse_polynomial("P165") == poly_p165());
  CHECK(parse_polynomial("1/4*(2*E4 - (E4))") == GeneratorPolynomial::generator(kE4) * Rational(1, 4));
  CHECK(parse_polynomial("-(A1 - A1)").is_zero());
  try {
    parse_polynomial("A1 + Z7");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_polynomial("(A1"), ParseError);
  for (int j = 1; j <= 4; ++j) CHECK(parse_polynomial(poly_p(j).to_string()) == poly_p(j));
}

TEST_CASE("monomials of a bidegree") {
  CHECK(monomials(4, 1) == std::vector<Exponents>{Exponents{0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}});
  CHECK(monomials(6, 4) == std::vector<Exponents>{Exponents{0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0}});
  const auto m165 = monomials(16, 5);
  const auto p165 = poly_p165();
  for (const auto& [e, c] : p165.terms()) CHECK(std::find(m165.begin(), m165.end(), e) != m165.end());
  // exhaustive oracle over bounded exponent boxes
  for (auto [w, t] : {std::pair{12, 3}, std::pair{16, 4}, std::pair{16, 2}}) {
    std::size_t count = 0;
    Exponents e{};
    auto rec = [&](auto&& self, int g) -> void {
      if (g == kNumGens) {
        count += weight_of(e) == w && index_of(e) == t;
        return;
      }
      for (int c = 0; c <= w / 4; ++c) {
        e[g] = c;
        self(self, g + 1);
      }
      e[g] = 0;
    };
    rec(rec, 0);
    CHECK(monomials(w, t).size() == count);
  }
  for (const auto& e : monomials(18, 5, true, false)) CHECK(e[kE6] == 0);
}

TEST_CASE("generator constructions") {
  const auto g = sakai_generators(3);
  for (Gen a : {kA1, kA2, kA3, kA4, kA5}) {
    CHECK(g->forms[a].terms[0] == OrbitPoly{{0, 1}});
    CHECK(eval_zero(g->forms[a]) == eisenstein(4, 3));
  }
  for (Gen b : {kB2, kB3, kB4, kB6}) {
    CHECK(g->forms[b].terms[0] == OrbitPoly{{0, 1}});
    CHECK(eval_zero(g->forms[b]) == eisenstein(6, 3));
    CHECK_FALSE(check_support(g->forms[b]).has_value());
  }
  CHECK(eval_zero(g->b5hat) == eisenstein(6, 3));
  CHECK(g->forms[kB4].index == 4);
}

TEST_CASE("expansions of named polynomials") {
  Expander ex(sakai_generators(3), 3);
  CHECK(ex.expand(GeneratorPolynomial{}).is_zero());
  const auto p = ex.expand(poly_p165());
  const auto e4 = eisenstein(4, 3), e6 = eisenstein(6, 3);
  CHECK(eval_zero(p) == e4 * e4 * e4 * e4 * Rational(864) + e4 * e6 * e6 * Rational(2296));
  const auto quotient = div_e4(p);
  CHECK_FALSE(check_support(quotient).has_value());
  CHECK(div_delta(ex.expand(poly_p(1)), 1).terms[0] == orb(1));
  CHECK(div_delta(ex.expand(poly_p(2)), 1).terms[0] == orb(8));
  CHECK(div_delta(ex.expand(poly_p(3)), 1).terms[0] == orb(7));
  CHECK(div_delta(ex.expand(poly_p(4)), 2).terms[0] == orb(2));
  const auto a1 = ex.expand(parse_polynomial("A1^2"));
  CHECK(a1 == multiply(ex.generators().forms[kA1], ex.generators().forms[kA1]));
}
