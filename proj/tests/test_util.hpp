#pragma once

#include <random>
#include <string>
#include <vector>

#include "logstrat/derivation.hpp"
#include "logstrat/polynomial.hpp"
#include "oracles.hpp"

namespace testutil {

using namespace logstrat;

inline RingPtr ring(std::vector<std::string> vars, MonomialOrder order = MonomialOrder::DegRevLex) {
  return Ring::make(std::move(vars), order);
}

inline RingPtr xyz() {
  static const RingPtr r = ring({"x", "y", "z"});
  return r;
}

inline RingPtr xy() {
  static const RingPtr r = ring({"x", "y"});
  return r;
}

inline Polynomial P(const std::string& text, const RingPtr& r = xyz()) {
  return parse_polynomial(text, r);
}

inline std::vector<Polynomial> Ps(const std::vector<std::string>& texts, const RingPtr& r = xyz()) {
  std::vector<Polynomial> out;
  for (const auto& t : texts) out.push_back(P(t, r));
  return out;
}

// Random polynomial with up to `terms` terms, total degree <= max_deg and
// integer coefficients in [-range, range].
inline Polynomial random_poly(std::mt19937_64& rng, const RingPtr& r, int terms, int max_deg,
                              int range = 5) {
  std::uniform_int_distribution<int> coeff(-range, range);
  std::uniform_int_distribution<int> var(0, static_cast<int>(r->arity()) - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) m[static_cast<std::size_t>(var(rng))] += 1;
    ts.push_back({m, Rational(coeff(rng))});
  }
  return Polynomial::from_terms(r, std::move(ts));
}

// Homogeneous of the given degree, `terms` random monomials, coefficients in [-3, 3].
inline Polynomial random_homogeneous(std::mt19937_64& rng, const RingPtr& r, int degree, int terms) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  const auto monos = oracle::monomials_of_degree(r->arity(), degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k) ts.push_back({monos[pick(rng)], Rational(coeff(rng))});
  return Polynomial::from_terms(r, std::move(ts));
}

inline Derivation random_derivation(std::mt19937_64& rng, const RingPtr& r) {
  std::vector<Polynomial> c;
  for (std::size_t j = 0; j < r->arity(); ++j) c.push_back(random_poly(rng, r, 3, 2, 3));
  return Derivation(r, std::move(c));
}

}  // namespace testutil
