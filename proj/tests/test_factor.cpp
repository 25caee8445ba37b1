#include <doctest.h>

#include <algorithm>
#include <set>

#include "logstrat/factor.hpp"
#include "test_util.hpp"

using namespace logstrat;
using testutil::P;

namespace {

std::set<std::string> factor_strings(const Factorization& f) {
  std::set<std::string> s;
  for (const auto& x : f.factors) s.insert(x.poly.to_string() + "^" + std::to_string(x.multiplicity));
  return s;
}

void check_sound(const Polynomial& f, const Factorization& fac) {
  REQUIRE(fac.expand(f.ring()) == f);
  for (const auto& x : fac.factors) {
    REQUIRE(x.poly.leading_coefficient() > 0);
    REQUIRE(integer_primitive(x.poly).first == 1);
  }
}

}  // namespace

TEST_CASE("free divisor splits into four linear-in-some-variable factors") {
  const Polynomial f = P("x*y*(x+y)*(x+y*z)");
  const Factorization fac = factorize(f);
  check_sound(f, fac);
  CHECK(fac.complete());
  CHECK(factor_strings(fac) == std::set<std::string>{"x^1", "y^1", "x + y^1", "y*z + x^1"});
}

TEST_CASE("difference of squares and trivial cases") {
  const Polynomial f = P("x^2 - y^2");
  const Factorization fac = factorize(f);
  check_sound(f, fac);
  CHECK(fac.complete());
  CHECK(factor_strings(fac) == std::set<std::string>{"x + y^1", "x - y^1"});

  const Factorization lin = factorize(P("x + 1"));
  CHECK(lin.factors.size() == 1);
  CHECK(lin.factors[0].certified);

  const Factorization c = factorize(P("-6"));
  CHECK(c.factors.empty());
  CHECK(c.unit == -6);
  CHECK_THROWS(factorize(P("0")));
}

TEST_CASE("content, multiplicity and rational scaling") {
  const Polynomial f = P("-3/2*x^3*(y-1)^2*(x+z)");
  const Factorization fac = factorize(f);
  check_sound(f, fac);
  CHECK(fac.unit == Rational(-3, 2));
  CHECK(factor_strings(fac) == std::set<std::string>{"x^3", "y - 1^2", "x + z^1"});
}

TEST_CASE("univariate factorization over the rationals") {
  const RingPtr r = testutil::ring({"t"});
  auto check = [&](const std::string& text, std::set<std::string> expected) {
    const Polynomial f = parse_polynomial(text, r);
    const Factorization fac = factorize(f);
    check_sound(f, fac);
    CHECK(fac.complete());
    CHECK(factor_strings(fac) == expected);
  };
  check("t^4 + 4", {"t^2 + 2*t + 2^1", "t^2 - 2*t + 2^1"});
  check("t^8 - 1", {"t - 1^1", "t + 1^1", "t^2 + 1^1", "t^4 + 1^1"});
  check("t^2 - 2", {"t^2 - 2^1"});
  check("6*t^2 + 5*t + 1", {"2*t + 1^1", "3*t + 1^1"});
  check("(t^2+t+1)^3*(t-5)", {"t^2 + t + 1^3", "t - 5^1"});
  // x^4 - 10x^2 + 1 is irreducible yet splits modulo every prime.
  check("t^4 - 10*t^2 + 1", {"t^4 - 10*t^2 + 1^1"});
  check("(t^4 - 10*t^2 + 1)*(t^3 - 2)", {"t^4 - 10*t^2 + 1^1", "t^3 - 2^1"});
  check("t^12 - 1", {"t - 1^1", "t + 1^1", "t^2 + 1^1", "t^2 + t + 1^1", "t^2 - t + 1^1",
                     "t^4 - t^2 + 1^1"});
}

TEST_CASE("rational roots") {
  const RingPtr r = testutil::ring({"t"});
  const auto roots = rational_roots(parse_polynomial("(2*t-3)*(t+4)^2*(t^2+1)", r), 0);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == -4);
  CHECK(roots[1] == Rational(3, 2));
}

TEST_CASE("multivariate gcd") {
  CHECK(gcd(P("x^2 - y^2"), P("x^2 + 2*x*y + y^2")) == P("x + y"));
  CHECK(gcd(P("x*y*(x+y*z)"), P("y^2*(x+y*z)^2*(z-1)")) == P("y*(x+y*z)"));
  CHECK(gcd(P("x + 1"), P("y + 1")).is_one());
  CHECK(gcd(P("0"), P("2*x + 4")) == P("x + 2"));
  CHECK(gcd(P("6*x*z"), P("4*x^2")) == P("x"));
}

TEST_CASE("exact division") {
  auto q = divide_exact(P("x^2 - y^2"), P("x - y"));
  REQUIRE(q);
  CHECK(*q == P("x + y"));
  CHECK_FALSE(divide_exact(P("x^2 + y^2"), P("x - y")));
}

TEST_CASE("linear factors of non-trivially mixed products") {
  const Polynomial f = P("(x + 2*y - z + 3)*(x - y + 5*z)*(x^2 + y^2 + z^2 + 1)");
  const Factorization fac = factorize(f);
  check_sound(f, fac);
  CHECK(fac.factors.size() == 3);
  // The quadric has degree 2 in every variable and no linear factor: flagged.
  const auto quad = std::find_if(fac.factors.begin(), fac.factors.end(),
                                 [](const Factor& x) { return x.poly.total_degree() == 2; });
  REQUIRE(quad != fac.factors.end());
  CHECK_FALSE(quad->certified);
  CHECK_FALSE(fac.complete());
}

TEST_CASE("square-free decomposition") {
  const Polynomial f = P("(x+y)^3*(x-z)^2*(y+1)*z^2");
  const auto sqf = square_free_decomposition(f);
  Polynomial prod = Polynomial::constant(testutil::xyz(), 1);
  for (const auto& [s, m] : sqf) {
    prod *= s.pow(static_cast<unsigned>(m));
    for (std::size_t v = 0; v < 3; ++v)
      if (s.uses(v)) CHECK(gcd(s, s.derivative(v)).is_constant());
  }
  CHECK(integer_primitive(prod).second == integer_primitive(f).second);
}

TEST_CASE("factor soundness on random products of linear forms") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> c(-3, 3);
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<int> mult(1, 2);
  const RingPtr r = testutil::xyz();
  for (int trial = 0; trial < 150; ++trial) {
    Rational unit(c(rng) == 0 ? 1 : c(rng) + 7, 1 + trial % 4);
    unit.canonicalize();
    Polynomial f = Polynomial::constant(r, unit);
    std::vector<Polynomial> linear;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      Polynomial l(r);
      while (l.total_degree() < 1) {
        l = Polynomial::constant(r, c(rng));
        for (std::size_t v = 0; v < 3; ++v) l += Polynomial::variable(r, v) * Rational(c(rng));
      }
      linear.push_back(integer_primitive(l).second);
      f *= l.pow(static_cast<unsigned>(mult(rng)));
    }
    const Factorization fac = factorize(f);
    check_sound(f, fac);
    REQUIRE(fac.complete());
    for (const auto& x : fac.factors) REQUIRE(x.poly.total_degree() == 1);
    for (const auto& l : linear) {
      const bool present = std::any_of(fac.factors.begin(), fac.factors.end(),
                                       [&](const Factor& x) { return x.poly == l; });
      REQUIRE(present);
    }
    for (const auto& x : fac.factors)
      for (std::size_t v = 0; v < 3; ++v)
        if (x.poly.uses(v)) REQUIRE(gcd(x.poly, x.poly.derivative(v)).is_constant());
  }
}

TEST_CASE("factor soundness on random polynomial products") {
  std::mt19937_64 rng(8080);
  const RingPtr r = testutil::xyz();
  for (int trial = 0; trial < 60; ++trial) {
    const Polynomial a = testutil::random_poly(rng, r, 3, 2, 3);
    const Polynomial b = testutil::random_poly(rng, r, 3, 2, 3);
    const Polynomial f = a * b;
    if (f.is_zero()) continue;
    const Factorization fac = factorize(f);
    check_sound(f, fac);
  }
}

TEST_CASE("binomials with a primitive Newton segment are certified irreducible") {
  for (const std::string s : {"y^2 - z^3", "x^2*y - z^3", "x^3 + y^2*z^5", "y^3*z^2 - x^5"}) {
    INFO(s);
    const Polynomial f = P(s);
    const Factorization fac = factorize(f);
    check_sound(f, fac);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].certified);
  }
  // Non-primitive directions are never certified as irreducible.
  for (const std::string s : {"y^4 - z^6", "y^3 - z^6", "x^2*y^2 - z^4"}) {
    INFO(s);
    const Polynomial f = P(s);
    const Factorization fac = factorize(f);
    check_sound(f, fac);
    CHECK_FALSE((fac.factors.size() == 1 && fac.factors[0].multiplicity == 1 && fac.factors[0].certified));
  }
}
