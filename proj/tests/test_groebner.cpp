#include <doctest.h>

#include <thread>

#include "logstrat/budget.hpp"
#include "logstrat/errors.hpp"
#include "logstrat/ideal.hpp"
#include "logstrat/module.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace logstrat;
using testutil::P;
using testutil::Ps;
using testutil::random_homogeneous;

namespace {

Ideal I(const std::vector<std::string>& gens, const RingPtr& r = testutil::xyz()) {
  return Ideal(r, Ps(gens, r));
}

}  // namespace

TEST_CASE("trivial bases") {
  CHECK(Ideal(testutil::xyz(), {P("0")}).groebner_basis().empty());
  CHECK(Ideal(testutil::xyz()).groebner_basis().empty());
  for (const char* c : {"1", "-7/3"}) {
    const auto gb = I({c, "x"}).groebner_basis();
    REQUIRE(gb.size() == 1);
    CHECK(gb[0].is_one());
  }
}

TEST_CASE("hand-traced lex basis") {
  const RingPtr lex = testutil::ring({"x", "y"}, MonomialOrder::Lex);
  const auto gb = I({"x*y - 1", "y^2 - 1"}, lex).groebner_basis();
  REQUIRE(gb.size() == 2);
  CHECK(gb[0] == P("x - y", lex));
  CHECK(gb[1] == P("y^2 - 1", lex));
}

TEST_CASE("normal forms") {
  const Polynomial f = P("x*y*(x+y)*(x+y*z)");
  const Ideal principal(testutil::xyz(), {f});
  const Polynomial euler = P("x") * f.derivative(0) + P("y") * f.derivative(1);
  CHECK(euler == f * Rational(4));
  CHECK(principal.normal_form(euler).is_zero());
  CHECK(principal.normal_form(P("0")).is_zero());
  CHECK_FALSE(principal.normal_form(f.derivative(0)).is_zero());

  const RingPtr lex = testutil::ring({"x", "y"}, MonomialOrder::Lex);
  CHECK(I({"x^2 - y"}, lex).normal_form(P("x^2", lex)) == P("y", lex));
}

TEST_CASE("quotients and saturations") {
  CHECK(ideal_quotient(I({"x*y"}), P("x")) == I({"y"}));
  CHECK(ideal_quotient(I({"x^2", "x*y"}), P("1")) == I({"x^2", "x*y"}));
  CHECK(ideal_quotient(I({"x^2", "x*y"}), P("x")) == I({"x", "y"}));
  CHECK(ideal_quotient(I({"x", "y"}), P("x")).is_unit());
  CHECK_THROWS_AS(ideal_quotient(I({"x"}), P("0")), PreconditionError);

  CHECK(saturation(I({"x^2*y"}), P("x")) == I({"y"}));
  CHECK(saturation(I({"x+y*z"}), P("y")) == I({"x+y*z"}));
  CHECK(saturation(I({"x", "y^2*z"}), P("y")) == I({"x", "z"}));
}

TEST_CASE("containment and equality") {
  CHECK(I({"x", "y"}).contains(I({"x*y"})));
  CHECK_FALSE(I({"x"}).contains(I({"y"})));
  const Ideal a = I({"x", "y^2*z"});
  const Ideal b = intersect(I({"x", "y"}), I({"x", "z"}));
  CHECK(b == I({"x", "y*z"}));
  CHECK(b.contains(a));
  CHECK_FALSE(a.contains(b));
  CHECK(a != b);
  CHECK(I({"x+y", "x-y"}) == I({"x", "y"}));
  CHECK(I({"x", "y"}).to_string() == "(x, y)");
  CHECK(I({"2*x + 2*y", "z - 1"}).to_string() == "(x + y, z - 1)");
}

TEST_CASE("dimension") {
  CHECK(dimension(I({"x"})) == 2);
  CHECK(dimension(Ideal(testutil::xyz())) == 3);
  CHECK(dimension(I({"1"})) == -1);
  CHECK(dimension(I({"x", "y^2*z"})) == 1);
  CHECK(dimension(I({"x*y*(x+y)*(x+y*z)"})) == 2);
  CHECK(dimension(I({"x", "y", "z-5"})) == 0);
}

TEST_CASE("dimension of monomial and linear primes is arity minus height") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> c(-3, 3);
  const RingPtr r = testutil::ring({"a", "b", "c", "d"});
  for (int trial = 0; trial < 60; ++trial) {
    // Monomial prime: a random subset of variables.
    std::vector<Polynomial> vars;
    const unsigned mask = static_cast<unsigned>(trial) % 16;
    for (std::size_t v = 0; v < 4; ++v)
      if (mask & (1u << v)) vars.push_back(Polynomial::variable(r, v));
    CHECK(dimension(Ideal(r, vars)) == 4 - static_cast<int>(vars.size()));

    // Linear prime: height equals the rank of the coefficient matrix.
    std::vector<Polynomial> forms;
    oracle::Matrix m;
    for (int k = 0; k < 1 + trial % 3; ++k) {
      Polynomial l = Polynomial::constant(r, c(rng));
      std::vector<Rational> row;
      for (std::size_t v = 0; v < 4; ++v) {
        row.push_back(c(rng));
        l += Polynomial::variable(r, v) * row.back();
      }
      forms.push_back(l);
      m.push_back(row);
    }
    const Ideal j(r, forms);
    if (j.is_unit()) continue;
    CHECK(dimension(j) == 4 - static_cast<int>(oracle::rank(m)));
  }
}

TEST_CASE("standard monomials") {
  CHECK(vector_space_dimension(I({"x", "y", "z-5"})) == 1);
  CHECK(vector_space_dimension(I({"x^2 - 2", "y^2 - 2", "z"})) == 4);
  CHECK(vector_space_dimension(I({"x^3", "y^2", "z^2", "x*y"})) == 8);
  CHECK_THROWS_AS(standard_monomials(I({"x"})), PreconditionError);
}

TEST_CASE("syzygies") {
  const Submodule s = syzygies(Ps({"x", "y"}));
  const RingPtr r = testutil::xyz();
  CHECK(s == Submodule(r, 2, {FreeModuleElement(r, Ps({"y", "-x"}))}));

  const Submodule t = syzygies(Ps({"x", "y", "x+y"}));
  CHECK(t == Submodule(r, 3, {FreeModuleElement(r, Ps({"1", "1", "-1"})),
                              FreeModuleElement(r, Ps({"y", "-x", "0"}))}));

  // Logarithmic module of the free divisor: relations among the partials and f.
  const Polynomial f = P("x*y*(x+y)*(x+y*z)");
  const Submodule rel = syzygies(std::vector<Polynomial>{f.derivative(0), f.derivative(1), f.derivative(2), f});
  std::vector<FreeModuleElement> proj;
  for (const auto& g : rel.generators()) proj.push_back(g.slice(0, 3));
  const Submodule tf(r, 3, proj);
  const Submodule theta(r, 3, {FreeModuleElement(r, Ps({"x", "y", "0"})),
                               FreeModuleElement(r, Ps({"0", "(x+y)*y", "-(x+y)*z"})),
                               FreeModuleElement(r, Ps({"0", "0", "x+y*z"}))});
  CHECK(tf == theta);
  CHECK_FALSE(tf.contains(FreeModuleElement::unit(r, 3, 0)));
}

TEST_CASE("module membership") {
  const RingPtr r = testutil::xyz();
  const FreeModuleElement v(r, Ps({"x", "y", "0"}));
  CHECK(Submodule(r, 3, {v}).contains(v));
  CHECK(Submodule(r, 3, {v}).contains(P("z^2 + 1") * v));
  CHECK_FALSE(Submodule(r, 3, {v}).contains(FreeModuleElement(r, Ps({"y", "x", "0"}))));
  CHECK_THROWS_AS(Submodule(r, 3, {v}).contains(FreeModuleElement(r, 2)), PreconditionError);
}

TEST_CASE("Buchberger criterion on random bases") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const RingPtr r = trial % 2 ? testutil::xyz()
                                : testutil::ring({"x", "y", "z"}, MonomialOrder::Lex);
    std::vector<Polynomial> gens;
    for (int k = 0; k < 2 + trial % 2; ++k) gens.push_back(testutil::random_poly(rng, r, 3, 2, 3));
    const auto gb = groebner_basis(r, gens);
    REQUIRE(buchberger_criterion_holds(gb));
    for (const auto& g : gens) REQUIRE(reduce(g, gb).is_zero());
    for (const auto& g : gb) REQUIRE(g.leading_coefficient() == 1);
    // Reduced: no term of any element is divisible by another leading monomial.
    for (std::size_t i = 0; i < gb.size(); ++i)
      for (std::size_t j = 0; j < gb.size(); ++j) {
        if (i == j) continue;
        for (const auto& t : gb[i].terms()) REQUIRE_FALSE(divides(gb[j].leading_monomial(), t.mono));
      }
  }
}

TEST_CASE("normal-form membership agrees with the cofactor oracle") {
  std::mt19937_64 rng(777);
  const RingPtr r = testutil::xyz();
  int members = 0;
  for (int trial = 0; trial < 120; ++trial) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(random_homogeneous(rng, r, 2, 3));
    const Ideal j(r, gens);
    Polynomial f(r);
    if (trial % 2 == 0) {
      for (const auto& g : gens) f += random_homogeneous(rng, r, 1, 2) * g;
    } else {
      f = random_homogeneous(rng, r, 3, 4);
    }
    const bool engine = j.contains(f);
    REQUIRE(engine == oracle::in_homogeneous_ideal(f, gens));
    members += engine;
  }
  CHECK(members >= 60);
}

TEST_CASE("Groebner bases generate the same ideal (checked by cofactor search)") {
  std::mt19937_64 rng(4321);
  const RingPtr r = testutil::xyz();
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(random_homogeneous(rng, r, 2, 3));
    const Ideal j(r, gens);
    for (const auto& g : j.groebner_basis()) REQUIRE(oracle::in_homogeneous_ideal(g, gens));
  }
}

TEST_CASE("saturation is idempotent and quotients are sound") {
  std::mt19937_64 rng(55);
  const RingPtr r = testutil::xyz();
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(testutil::random_poly(rng, r, 3, 2, 2));
    Polynomial f = testutil::random_poly(rng, r, 2, 1, 2);
    if (f.is_zero()) f = P("x");
    const Ideal j(r, gens);
    const Ideal q = ideal_quotient(j, f);
    for (const auto& g : q.generators()) REQUIRE(j.contains(g * f));
    REQUIRE(q.contains(j));
    const Ideal s = saturation(j, f);
    REQUIRE(saturation(s, f) == s);
  }
}

TEST_CASE("syzygy soundness on random columns") {
  std::mt19937_64 rng(99);
  const RingPtr r = testutil::xyz();
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<FreeModuleElement> cols;
    for (int k = 0; k < 3; ++k)
      cols.emplace_back(r, std::vector<Polynomial>{testutil::random_poly(rng, r, 2, 2, 2),
                                                   testutil::random_poly(rng, r, 2, 2, 2)});
    const Submodule rel = syzygies(cols);
    for (const auto& s : rel.generators()) REQUIRE(combine(s.components(), cols).is_zero());
  }
}

TEST_CASE("budget exhaustion is reported") {
  budget::Scope scope(50);
  CHECK_THROWS_AS(groebner_basis(testutil::xyz(), Ps({"x^3*y - z^2 + 1", "y^3*z - x^2", "z^3*x - y + 2"})),
                  BudgetExceeded);
}

TEST_CASE("concurrent basis computation is deterministic") {
  const RingPtr r = testutil::xyz();
  const auto gens = Ps({"x^2*y - z", "y^2*z - x", "z^2*x - y"});
  const Ideal shared(r, gens);
  std::vector<std::vector<Polynomial>> results(4);
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < results.size(); ++t)
    threads.emplace_back([&, t] {
      results[t] = t % 2 ? shared.groebner_basis() : Ideal(r, gens).groebner_basis();
    });
  for (auto& t : threads) t.join();
  for (const auto& res : results) CHECK(res == results.front());
}
