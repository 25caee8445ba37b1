#include "logstrat/factor.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "logstrat/budget.hpp"
#include "logstrat/errors.hpp"
#include "upoly.hpp"

namespace logstrat {

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw PreconditionError("divide_exact: division by zero");
  std::vector<Term> q;
  Polynomial r = f;
  const Monomial& lm = g.leading_monomial();
  const Rational& lc = g.leading_coefficient();
  while (!r.is_zero()) {
    budget::charge();
    const Term& lt = r.leading_term();
    // {g} is a Groebner basis of (g): an indivisible leading term proves g does not divide f.
    if (!divides(lm, lt.mono)) return std::nullopt;
    Term t{quotient(lt.mono, lm), lt.coeff / lc};
    r = r.sub_mul_term(t.coeff, t.mono, g);
    q.push_back(std::move(t));
  }
  return Polynomial::from_sorted_terms(f.ring(), std::move(q));
}

std::pair<Rational, Polynomial> integer_primitive(const Polynomial& f) {
  if (f.is_zero()) return {Rational(0), f};
  mpz_class den = 1;
  for (const auto& t : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  mpz_class num = 0;
  for (const auto& t : f.terms()) {
    const mpz_class n = t.coeff.get_num() * (den / t.coeff.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale(num, den);
  scale.canonicalize();
  if (f.leading_coefficient() < 0) scale = -scale;
  Polynomial p = f;
  p *= Rational(1) / scale;
  return {scale, p};
}

namespace {

Polynomial primitive(const Polynomial& f) { return integer_primitive(f).second; }

Polynomial exact(const Polynomial& f, const Polynomial& g) {
  auto q = divide_exact(f, g);
  if (!q) throw std::logic_error("expected exact division: " + f.to_string() + " / " + g.to_string());
  return *q;
}

Polynomial lc_in(const Polynomial& f, std::size_t var) { return f.coefficients_in(var).back(); }

int lowest_variable(std::uint32_t support) { return __builtin_ctz(support); }

// Subresultant remainder sequence in `var`; a and b primitive in var with
// positive var-degree. Returns the primitive part of the last nonzero term.
Polynomial subresultant_gcd(Polynomial a, Polynomial b, std::size_t var) {
  if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
  const RingPtr& ring = a.ring();
  Polynomial g = Polynomial::constant(ring, 1);
  Polynomial h = Polynomial::constant(ring, 1);
  for (;;) {
    budget::charge();
    const int delta = a.degree_in(var) - b.degree_in(var);
    Polynomial r = pseudo_remainder(a, b, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) return Polynomial::constant(ring, 1);
    a = std::move(b);
    b = exact(r, g * h.pow(static_cast<unsigned>(delta)));
    g = lc_in(a, var);
    if (delta > 0) h = exact(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
  }
  return primitive(exact(b, content_in(b, var)));
}

}  // namespace

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const int da = a.degree_in(var);
  const int db = b.degree_in(var);
  if (b.is_zero()) throw PreconditionError("pseudo_remainder: zero divisor");
  if (a.is_zero() || da < db) return a;
  const RingPtr& ring = a.ring();
  const Polynomial lb = lc_in(b, var);
  Polynomial r = a;
  int e = da - db + 1;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    budget::charge();
    const int dr = r.degree_in(var);
    const Polynomial lr = lc_in(r, var);
    const Polynomial shift = Polynomial::term(ring, Monomial::variable(var, dr - db), 1);
    r = lb * r - lr * shift * b;
    --e;
  }
  if (e > 0) r *= lb.pow(static_cast<unsigned>(e));
  return r;
}

Polynomial content_in(const Polynomial& f, std::size_t var) {
  Polynomial g(f.ring());
  for (const auto& c : f.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial::constant(f.ring(), 1);
  }
  return g;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  const RingPtr& ring = a.ring();
  if (a.is_zero()) return primitive(b);
  if (b.is_zero()) return primitive(a);
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(ring, 1);
  if (a == b) return primitive(a);
  const std::size_t v = static_cast<std::size_t>(lowest_variable(a.support() | b.support()));
  if (!a.uses(v)) return gcd(a, content_in(b, v));
  if (!b.uses(v)) return gcd(content_in(a, v), b);
  const Polynomial ca = content_in(a, v);
  const Polynomial cb = content_in(b, v);
  const Polynomial c = gcd(ca, cb);
  const Polynomial g = subresultant_gcd(exact(a, ca), exact(b, cb), v);
  return primitive(c * g);
}

namespace {

void yun(const Polynomial& p, std::size_t v, std::vector<std::pair<Polynomial, int>>& out) {
  const Polynomial dp = p.derivative(v);
  const Polynomial a = gcd(p, dp);
  Polynomial b = exact(p, a);
  Polynomial c = exact(dp, a);
  Polynomial d = c - b.derivative(v);
  for (int i = 1; !b.is_constant(); ++i) {
    const Polynomial ai = gcd(b, d);
    b = exact(b, ai);
    c = exact(d, ai);
    d = c - b.derivative(v);
    if (!ai.is_constant()) out.emplace_back(primitive(ai), i);
  }
}

}  // namespace

std::vector<std::pair<Polynomial, int>> square_free_decomposition(const Polynomial& f) {
  std::vector<std::pair<Polynomial, int>> out;
  if (f.is_constant()) return out;
  const std::size_t v = static_cast<std::size_t>(lowest_variable(f.support()));
  const Polynomial c = content_in(f, v);
  yun(exact(primitive(f), c), v, out);
  for (auto& sc : square_free_decomposition(c)) out.push_back(std::move(sc));
  return out;
}

bool Factorization::complete() const {
  return std::all_of(factors.begin(), factors.end(), [](const Factor& f) { return f.certified; });
}

Polynomial Factorization::expand(const RingPtr& ring) const {
  Polynomial p = Polynomial::constant(ring, unit);
  for (const auto& f : factors) p *= f.poly.pow(static_cast<unsigned>(f.multiplicity));
  return p;
}

namespace {

detail::ZPoly to_zpoly(const Polynomial& f, std::size_t var) {
  const Polynomial p = primitive(f);
  detail::ZPoly z(static_cast<std::size_t>(p.degree_in(var)) + 1);
  for (const auto& t : p.terms()) z[static_cast<std::size_t>(t.mono[var])] = t.coeff.get_num();
  detail::trim(z);
  return z;
}

Polynomial from_zpoly(const detail::ZPoly& z, const RingPtr& ring, std::size_t var) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < z.size(); ++k)
    if (z[k] != 0) terms.push_back({Monomial::variable(var, static_cast<std::int32_t>(k)), Rational(z[k])});
  return Polynomial::from_terms(ring, std::move(terms));
}

using Split = std::vector<std::pair<Polynomial, bool>>;

// Fix every variable of `vars` except `keep` to the matching coordinate of `at`.
Polynomial specialize_all(Polynomial f, const std::vector<std::size_t>& vars,
                          const std::vector<Rational>& at) {
  for (std::size_t i = 0; i < vars.size(); ++i) f = f.specialize(vars[i], at[i]);
  return f;
}

// Linear factor x_v - (a0 + sum a_u x_u) of s, which has content 1 in every
// variable and degree >= 2 in each. The root of such a factor is an affine
// function of the other variables, so its values at a base point b and at the
// neighbours b + e_u pin every coefficient; candidates are read off rational
// roots of univariate specializations and confirmed by exact substitution.
std::optional<Polynomial> find_linear_factor(const Polynomial& s) {
  const RingPtr& ring = s.ring();
  const std::uint32_t sup = s.support();
  std::size_t v = 0;
  int best = -1;
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < ring->arity(); ++i) {
    if (!(sup & (1u << i))) continue;
    all.push_back(i);
    const int d = s.degree_in(i);
    if (best < 0 || d < best) {
      best = d;
      v = i;
    }
  }
  std::vector<std::size_t> others;
  for (std::size_t i : all)
    if (i != v) others.push_back(i);
  const Polynomial lcv = lc_in(s, v);

  auto shifted = [&](const std::vector<Rational>& b, std::size_t u) {
    std::vector<Rational> q = b;
    q[u] += 1;
    return q;
  };
  std::mt19937_64 rng(0x11fac7u);
  std::uniform_int_distribution<int> small(-4, 4);
  std::vector<Rational> base(others.size(), Rational(0));
  bool ok = false;
  for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
    if (attempt > 0)
      for (auto& c : base) c = small(rng);
    ok = specialize_all(lcv, others, base).constant_term() != 0;
    for (std::size_t u = 0; ok && u < others.size(); ++u)
      ok = specialize_all(lcv, others, shifted(base, u)).constant_term() != 0;
  }
  if (!ok) return std::nullopt;

  const auto roots0 = rational_roots(specialize_all(s, others, base), v);
  std::vector<std::vector<Rational>> roots_u;
  for (std::size_t u = 0; u < others.size(); ++u)
    roots_u.push_back(rational_roots(specialize_all(s, others, shifted(base, u)), v));

  const Polynomial xv = Polynomial::variable(ring, v);
  for (const Rational& r0 : roots0) {
    std::vector<std::vector<Rational>> cand(others.size());
    bool viable = true;
    for (std::size_t u = 0; u < others.size() && viable; ++u) {
      // Restrict s to the line b + t*e_u (t carried by variable others[u]).
      std::vector<std::size_t> fixed;
      std::vector<Rational> at;
      for (std::size_t w = 0; w < others.size(); ++w)
        if (w != u) {
          fixed.push_back(others[w]);
          at.push_back(base[w]);
        }
      const std::size_t tu = others[u];
      const Polynomial t = Polynomial::variable(ring, tu);
      Polynomial line = specialize_all(s, fixed, at);
      line = line.substitute(tu, t + Polynomial::constant(ring, base[u]));
      for (const Rational& ru : roots_u[u]) {
        const Rational alpha = ru - r0;
        const Polynomial root = Polynomial::constant(ring, r0) + t * alpha;
        if (line.substitute(v, root).is_zero()) cand[u].push_back(alpha);
      }
      viable = !cand[u].empty();
    }
    if (!viable) continue;
    std::vector<std::size_t> pick(others.size(), 0);
    for (;;) {
      budget::charge();
      Rational a0 = r0;
      Polynomial value(ring);
      for (std::size_t u = 0; u < others.size(); ++u) {
        const Rational& a = cand[u][pick[u]];
        a0 -= a * base[u];
        value += Polynomial::variable(ring, others[u]) * a;
      }
      value += Polynomial::constant(ring, a0);
      if (s.substitute(v, value).is_zero()) return primitive(xv - value);
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == cand[k].size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  return std::nullopt;
}

// Newton polytope a lattice segment whose direction is primitive: a product
// would be a Minkowski sum of segments of integer length, so one factor is a
// monomial, which the trivial contents rule out.
bool primitive_newton_segment(const Polynomial& s) {
  const auto& terms = s.terms();
  if (terms.size() < 2) return false;
  const Monomial& a = terms.front().mono;
  const Monomial& b = terms.back().mono;
  std::array<std::int64_t, kMaxVariables> dir{};
  mpz_class g = 0;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    dir[i] = static_cast<std::int64_t>(b[i]) - a[i];
    g = gcd(g, mpz_class(static_cast<long>(dir[i])));
  }
  if (g != 1) return false;
  // Collinearity: every exponent difference is a multiple of dir.
  for (const auto& t : terms) {
    std::optional<Rational> lambda;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      const std::int64_t d = static_cast<std::int64_t>(t.mono[i]) - a[i];
      if (dir[i] == 0) {
        if (d != 0) return false;
        continue;
      }
      Rational l(static_cast<long>(d), static_cast<long>(dir[i]));
      l.canonicalize();
      if (lambda && *lambda != l) return false;
      lambda = l;
    }
  }
  return true;
}

Split split_squarefree(const Polynomial& s) {
  if (s.total_degree() == 1) return {{s, true}};
  const RingPtr& ring = s.ring();
  const std::uint32_t sup = s.support();
  for (std::size_t v = 0; v < ring->arity(); ++v) {
    if (!(sup & (1u << v))) continue;
    const Polynomial c = content_in(s, v);
    if (!c.is_constant()) {
      Split out = split_squarefree(c);
      for (auto& f : split_squarefree(primitive(exact(s, c)))) out.push_back(std::move(f));
      return out;
    }
  }
  if (__builtin_popcount(sup) == 1) {
    const std::size_t v = static_cast<std::size_t>(lowest_variable(sup));
    Split out;
    for (const auto& z : detail::factor_squarefree(to_zpoly(s, v)))
      out.emplace_back(from_zpoly(z, ring, v), true);
    return out;
  }
  // Primitive and linear in some variable: any splitting would need a factor
  // free of that variable, which would divide the (trivial) content.
  for (std::size_t v = 0; v < ring->arity(); ++v)
    if (s.degree_in(v) == 1) return {{s, true}};
  if (primitive_newton_segment(s)) return {{s, true}};
  if (auto lin = find_linear_factor(s)) {
    Split out{{*lin, true}};
    for (auto& f : split_squarefree(primitive(exact(s, *lin)))) out.push_back(std::move(f));
    return out;
  }
  return {{s, false}};
}

}  // namespace

Factorization factorize(const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("factorize: zero polynomial");
  const RingPtr& ring = f.ring();
  Factorization out;
  const auto [scale, p] = integer_primitive(f);
  for (const auto& [s, m] : square_free_decomposition(p))
    for (auto& [g, cert] : split_squarefree(s)) out.factors.push_back({primitive(g), m, cert});
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& a, const Factor& b) { return compare(a.poly, b.poly) < 0; });
  Polynomial prod = Polynomial::constant(ring, 1);
  for (const auto& fac : out.factors) prod *= fac.poly.pow(static_cast<unsigned>(fac.multiplicity));
  out.unit = f.leading_coefficient() / prod.leading_coefficient();
  if (prod * out.unit != f) throw std::logic_error("factorize: product check failed");
  return out;
}

std::vector<Rational> rational_roots(const Polynomial& f, std::size_t var) {
  if (f.support() & ~(1u << var)) throw PreconditionError("rational_roots: polynomial is not univariate");
  std::vector<Rational> roots;
  if (f.is_constant()) return roots;
  for (const auto& [s, m] : square_free_decomposition(f)) {
    for (const auto& z : detail::factor_squarefree(to_zpoly(s, var))) {
      if (detail::degree(z) != 1) continue;
      Rational r(-z[0], z[1]);
      r.canonicalize();
      roots.push_back(r);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace logstrat
