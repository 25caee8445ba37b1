#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "logstrat/polynomial.hpp"

namespace logstrat {

// f / g when g divides f exactly, otherwise nullopt.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

// f = scale * primitive, where primitive has coprime integer coefficients and
// a positive leading coefficient.
std::pair<Rational, Polynomial> integer_primitive(const Polynomial& f);

// Greatest common divisor over Q, normalized by integer_primitive; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

// Content with respect to `var`: gcd of the coefficients of the powers of var.
Polynomial content_in(const Polynomial& f, std::size_t var);

// Pseudo-remainder of a by b viewed as polynomials in `var`.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var);

// Pairs (s_i, i) with f = c * prod s_i^i, s_i square-free and pairwise coprime.
std::vector<std::pair<Polynomial, int>> square_free_decomposition(const Polynomial& f);

struct Factor {
  Polynomial poly;
  int multiplicity;
  // false when the engine could not prove irreducibility.
  bool certified;
};

struct Factorization {
  Rational unit;
  std::vector<Factor> factors;

  bool complete() const;
  Polynomial expand(const RingPtr& ring) const;
};

// Factorization over Q into primitive integer factors with positive leading
// coefficients. Complete for univariate input, for factors that are linear in
// some variable after content removal, and for products of linear forms; an
// uncertified factor is square-free but may still split.
Factorization factorize(const Polynomial& f);

// Rational roots of a polynomial in the single variable `var`.
std::vector<Rational> rational_roots(const Polynomial& f, std::size_t var);

}  // namespace logstrat
