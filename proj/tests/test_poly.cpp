#include <doctest.h>

#include "logstrat/errors.hpp"
#include "logstrat/factor.hpp"
#include "logstrat/polynomial.hpp"
#include "test_util.hpp"

using namespace logstrat;
using testutil::P;

TEST_CASE("parse the free-divisor generator") {
  const Polynomial f = P("x*y*(x+y)*(x+y*z)");
  // Degree 4 in (x, y) jointly; total degree 5 through x*y^3*z.
  CHECK(f.total_degree() == 5);
  for (const auto& t : f.terms()) CHECK(t.mono[0] + t.mono[1] == 4);
  CHECK(f == P("x^3*y + x^2*y^2 + x^2*y^2*z + x*y^3*z"));
  const Factorization fac = factorize(f);
  CHECK(fac.factors.size() == 4);
  for (const auto& factor : fac.factors) CHECK(factor.multiplicity == 1);
}

TEST_CASE("parse zero and cancelling expressions") {
  CHECK(P("0").is_zero());
  CHECK(P("(x+y)^2 - (x^2+2*x*y+y^2)").is_zero());
  CHECK(P("x - x").is_zero());
  CHECK(P("-(-x)") == P("x"));
  CHECK(P("3/6*x") == P("x/2"));
  CHECK(P("2^3") == Polynomial::constant(testutil::xyz(), 8));
  CHECK(P("-x^2") == P("-(x^2)"));
}

TEST_CASE("parse errors carry positions") {
  try {
    P("x + q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
    CHECK(std::string(e.what()).find("unknown variable 'q'") != std::string::npos);
  }
  CHECK_THROWS_AS(P("x +"), ParseError);
  CHECK_THROWS_AS(P("(x"), ParseError);
  CHECK_THROWS_AS(P("x $ y"), ParseError);
  CHECK_THROWS_AS(P("x / y"), ParseError);
  CHECK_THROWS_AS(P("x / 0"), ParseError);
  CHECK_THROWS_AS(P("x ^ y"), ParseError);
  try {
    parse_polynomial_at("x +\n  y + w", testutil::xyz(), 4, 10);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(e.column() == 7);
  }
}

TEST_CASE("printing") {
  CHECK(P("0").to_string() == "0");
  CHECK(P("-x + 1/2*y^2 - 3").to_string() == "1/2*y^2 - x - 3");
  CHECK(P("z - 5").to_string() == "z - 5");
  CHECK(P("x*y*z").to_string() == "x*y*z");
}

TEST_CASE("term order") {
  const RingPtr lex = testutil::ring({"x", "y", "z"}, MonomialOrder::Lex);
  const Polynomial a = parse_polynomial("y^3 + x", lex);
  CHECK(a.leading_monomial() == Monomial::variable(0));
  const Polynomial b = P("y^3 + x");
  CHECK(b.leading_monomial() == Monomial::variable(1, 3));
  CHECK(a.in_ring(testutil::xyz()) == b);
}

TEST_CASE("partial derivatives") {
  CHECK(P("x + y*z").derivative(2) == P("y"));
  CHECK(P("7").derivative(0).is_zero());
  CHECK_THROWS_AS(P("x").derivative(3), PreconditionError);

  // Product rule oracle on the four factors of x*y*(x+y)*(x+y*z).
  const std::vector<Polynomial> fs = testutil::Ps({"x", "y", "x+y", "x+y*z"});
  Polynomial expected(testutil::xyz());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Polynomial term = fs[i].derivative(1);
    for (std::size_t j = 0; j < fs.size(); ++j)
      if (j != i) term *= fs[j];
    expected += term;
  }
  CHECK(P("x*y*(x+y)*(x+y*z)").derivative(1) == expected);
  CHECK(expected == P("x^3 + 2*x^2*y + 2*x^2*y*z + 3*x*y^2*z"));
}

TEST_CASE("evaluation") {
  const Point p{{1, 1, -1}};
  CHECK(P("x*y*(x+y)*(x+y*z)").evaluate(p) == 0);
  CHECK(P("x^2 + 3*y - 7").evaluate(Point{{0, 0, 0}}) == -7);
  CHECK(P("x + y*z").evaluate(Point{{0, 0, 5}}) == 0);
  CHECK(P("x/2 + y^2").evaluate(Point{{Rational(1, 3), Rational(-2, 3), 0}}) == Rational(11, 18));
  CHECK_THROWS_AS(P("x").evaluate(Point{{1, 2}}), PreconditionError);
}

TEST_CASE("substitution and coefficient views") {
  const Polynomial f = P("x^2*z + x*y - z");
  const auto cs = f.coefficients_in(0);
  REQUIRE(cs.size() == 3);
  CHECK(cs[0] == P("-z"));
  CHECK(cs[1] == P("y"));
  CHECK(cs[2] == P("z"));
  CHECK(Polynomial::from_coefficients(testutil::xyz(), 0, cs) == f);
  CHECK(f.substitute(0, P("y+1")) == P("(y+1)^2*z + (y+1)*y - z"));
  CHECK(f.specialize(2, 2) == P("2*x^2 + x*y - 2"));
}

TEST_CASE("canonical form properties on random polynomials") {
  std::mt19937_64 rng(1234);
  const RingPtr r = testutil::xyz();
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial f = testutil::random_poly(rng, r, 5, 3);
    const Polynomial g = testutil::random_poly(rng, r, 4, 3);
    const Polynomial h = testutil::random_poly(rng, r, 3, 2);
    REQUIRE(parse_polynomial(f.to_string(), r) == f);
    REQUIRE(parse_polynomial(P(f.to_string()).to_string(), r).to_string() == f.to_string());
    REQUIRE(f + g == g + f);
    REQUIRE(f * g == g * f);
    REQUIRE(f * (g + h) == f * g + f * h);
    REQUIRE((f - f).is_zero());
    for (const auto& t : f.terms()) REQUIRE(t.coeff != 0);
    for (std::size_t i = 1; i < f.size(); ++i)
      REQUIRE(r->compare(f.terms()[i - 1].mono, f.terms()[i].mono) > 0);
  }
}

TEST_CASE("Leibniz rule on random polynomials") {
  std::mt19937_64 rng(99);
  const RingPtr r = testutil::xyz();
  for (int trial = 0; trial < 200; ++trial) {
    const Polynomial f = testutil::random_poly(rng, r, 4, 3);
    const Polynomial g = testutil::random_poly(rng, r, 4, 3);
    for (std::size_t v = 0; v < 3; ++v)
      REQUIRE((f * g).derivative(v) == f * g.derivative(v) + g * f.derivative(v));
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(5);
  const RingPtr r = testutil::xyz();
  std::uniform_int_distribution<int> c(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial f = testutil::random_poly(rng, r, 4, 3);
    const Polynomial g = testutil::random_poly(rng, r, 4, 3);
    const Point p{{Rational(c(rng), 1 + trial % 3), Rational(c(rng)), Rational(c(rng), 2)}};
    REQUIRE((f * g).evaluate(p) == f.evaluate(p) * g.evaluate(p));
    REQUIRE((f + g).evaluate(p) == f.evaluate(p) + g.evaluate(p));
  }
}

TEST_CASE("non-canonical rational input is normalized") {
  const Polynomial c = Polynomial::constant(testutil::xyz(), Rational(8, 4));
  CHECK(c == Polynomial::constant(testutil::xyz(), 2));
  CHECK(c.to_string() == "2");
}
