#include "logstrat/primes.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "linalg.hpp"
#include "logstrat/budget.hpp"
#include "logstrat/errors.hpp"
#include "logstrat/factor.hpp"

namespace logstrat {

std::string to_string(Certification c) {
  switch (c) {
    case Certification::PrimeCertified: return "prime_certified";
    case Certification::PrimeAssumed: return "prime_assumed";
    case Certification::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

const RingPtr& univariate_ring() {
  static const RingPtr r = Ring::make({"t"}, MonomialOrder::DegRevLex);
  return r;
}

Polynomial univariate(const std::vector<Rational>& c) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (c[k] != 0) terms.push_back({Monomial::variable(0, static_cast<std::int32_t>(k)), c[k]});
  return Polynomial::from_terms(univariate_ring(), std::move(terms));
}

// p(u) for a univariate p over Q[t].
Polynomial compose(const Polynomial& p, const Polynomial& u) {
  const auto coeffs = p.coefficients_in(0);
  Polynomial acc(u.ring());
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc *= u;
    acc += Polynomial::constant(u.ring(), coeffs[k].constant_term());
  }
  return acc;
}

// Variables first, then x_1 + c x_2 + c^2 x_3 + ... for small c.
std::vector<Polynomial> probe_elements(const RingPtr& ring) {
  std::vector<Polynomial> out;
  const std::size_t n = ring->arity();
  for (std::size_t v = 0; v < n; ++v) out.push_back(Polynomial::variable(ring, v));
  if (n < 2) return out;
  for (int c : {1, 2, -1, 3, -2, 5, 7}) {
    Polynomial u(ring);
    Rational w = 1;
    for (std::size_t v = 0; v < n; ++v) {
      u += Polynomial::variable(ring, v) * w;
      w *= c;
    }
    out.push_back(std::move(u));
  }
  return out;
}

bool irreducible(const Factorization& f) {
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1 && f.factors[0].certified;
}

bool splits(const Factorization& f) {
  return f.factors.size() > 1 || (f.factors.size() == 1 && f.factors[0].multiplicity > 1);
}

}  // namespace

std::vector<Rational> minimal_polynomial(const Ideal& j, const Polynomial& u) {
  const std::vector<Monomial> basis = standard_monomials(j);
  const std::size_t d = basis.size();
  std::map<std::array<std::int32_t, kMaxVariables>, std::size_t> index;
  for (std::size_t k = 0; k < d; ++k) index.emplace(basis[k].exp, k);
  auto coords = [&](const Polynomial& f) {
    std::vector<Rational> v(d, Rational(0));
    const Polynomial r = j.normal_form(f);
    for (const auto& t : r.terms()) v[index.at(t.mono.exp)] = t.coeff;
    return v;
  };
  std::vector<std::vector<Rational>> columns;
  Polynomial power = Polynomial::constant(j.ring(), 1);
  for (std::size_t k = 0; k <= d; ++k) {
    columns.push_back(coords(power));
    detail::QMatrix m(d, std::vector<Rational>(columns.size()));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < columns.size(); ++c) m[r][c] = columns[c][r];
    auto ker = detail::kernel(std::move(m), columns.size());
    if (!ker.empty()) {
      std::vector<Rational> p = ker.front();
      const Rational lead = p.back();
      for (auto& c : p) c /= lead;
      return p;
    }
    power = j.normal_form(power * u);
  }
  throw std::logic_error("minimal_polynomial: no dependency found");
}

Certification is_prime(const Ideal& j) {
  if (j.is_unit()) throw PreconditionError("is_prime: unit ideal");
  if (j.is_zero()) return Certification::PrimeCertified;
  std::vector<Polynomial> nonlinear;
  for (const auto& g : j.groebner_basis())
    if (g.total_degree() > 1) nonlinear.push_back(g);
  // Reducedness keeps the leading variables of the linear elements out of the
  // rest, so A/J is a polynomial ring modulo the nonlinear part.
  if (nonlinear.empty()) return Certification::PrimeCertified;
  if (nonlinear.size() == 1 && irreducible(factorize(nonlinear[0]))) return Certification::PrimeCertified;
  if (dimension(j) == 0) {
    const std::size_t d = vector_space_dimension(j);
    for (const auto& u : probe_elements(j.ring())) {
      const std::vector<Rational> m = minimal_polynomial(j, u);
      if (m.size() - 1 != d) continue;
      return irreducible(factorize(univariate(m))) ? Certification::PrimeCertified : Certification::Unknown;
    }
  }
  return Certification::Unknown;
}

namespace {

void branch_on(const Ideal& j, const std::vector<Polynomial>& factors, std::vector<PrimeCandidate>& out);

void decompose(const Ideal& j, std::vector<PrimeCandidate>& out) {
  budget::charge();
  if (j.is_unit()) return;
  for (const auto& g : j.groebner_basis()) {
    if (g.total_degree() <= 1) continue;
    const Factorization fac = factorize(g);
    if (!splits(fac)) continue;
    std::vector<Polynomial> factors;
    for (const auto& f : fac.factors) factors.push_back(f.poly);
    branch_on(j, factors, out);
    return;
  }
  if (dimension(j) == 0) {
    const std::size_t d = vector_space_dimension(j);
    for (const auto& u : probe_elements(j.ring())) {
      const std::vector<Rational> m = minimal_polynomial(j, u);
      const Factorization fac = factorize(univariate(m));
      if (splits(fac)) {
        std::vector<Polynomial> factors;
        for (const auto& f : fac.factors) factors.push_back(compose(f.poly, u));
        branch_on(j, factors, out);
        return;
      }
      if (m.size() - 1 == d) {
        out.push_back({j, irreducible(fac) ? Certification::PrimeCertified : Certification::Unknown});
        return;
      }
    }
  }
  out.push_back({j, is_prime(j)});
}

// V(J) is the union of V(J + p_i); saturating by earlier factors drops the
// parts already covered by earlier branches.
void branch_on(const Ideal& j, const std::vector<Polynomial>& factors, std::vector<PrimeCandidate>& out) {
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Ideal b = j + std::vector<Polynomial>{factors[i]};
    for (std::size_t k = 0; k < i && !b.is_unit(); ++k) b = saturation(b, factors[k]);
    if (!b.is_unit()) decompose(b, out);
  }
}

}  // namespace

std::vector<PrimeCandidate> minimal_primes(const Ideal& j) {
  if (j.is_unit()) throw PreconditionError("minimal_primes: unit ideal has no primes");
  std::vector<PrimeCandidate> found;
  decompose(j, found);
  std::vector<PrimeCandidate> out;
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool minimal = true;
    for (std::size_t k = 0; k < found.size() && minimal; ++k) {
      if (k == i || !found[i].ideal.contains(found[k].ideal)) continue;
      const bool equal = found[k].ideal.contains(found[i].ideal);
      // Strictly larger, or a duplicate of an earlier entry.
      if (!equal || k < i) minimal = false;
    }
    if (minimal) out.push_back(found[i]);
  }
  std::sort(out.begin(), out.end(), [](const PrimeCandidate& a, const PrimeCandidate& b) {
    return compare(a.ideal, b.ideal) < 0;
  });
  return out;
}

void require_certified(const std::vector<PrimeCandidate>& primes, const std::vector<std::string>& path) {
  for (const auto& p : primes)
    if (!p.certified()) {
      std::vector<std::string> full = path;
      full.push_back(p.ideal.to_string());
      throw DecompositionIncomplete("could not certify " + p.ideal.to_string() + " as prime", full);
    }
}

PrimeCandidate maximal_ideal_of_point(const RingPtr& ring, const Point& p) {
  if (p.size() != ring->arity()) throw PreconditionError("maximal_ideal_of_point: point arity mismatch");
  std::vector<Polynomial> gens;
  for (std::size_t v = 0; v < ring->arity(); ++v)
    gens.push_back(Polynomial::variable(ring, v) - Polynomial::constant(ring, p[v]));
  return {Ideal(ring, std::move(gens)), Certification::PrimeCertified};
}

}  // namespace logstrat
