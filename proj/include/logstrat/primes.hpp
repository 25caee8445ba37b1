#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logstrat/ideal.hpp"

namespace logstrat {

enum class Certification { PrimeCertified, PrimeAssumed, Unknown };

// "prime_certified", "prime_assumed", "unknown".
std::string to_string(Certification c);

struct PrimeCandidate {
  Ideal ideal;
  Certification certification;

  bool certified() const { return certification == Certification::PrimeCertified; }
};

// Supported certificates: the reduced degrevlex basis is a set of linear forms
// plus at most one irreducible polynomial (in the remaining variables), or the
// ideal is zero-dimensional and some variable or linear form has an
// irreducible minimal polynomial of degree dim_Q A/J.
Certification is_prime(const Ideal& j);

// Minimal primes over a proper ideal by factor splitting, sorted by reduced
// basis. Branches that cannot be certified are returned with status Unknown.
std::vector<PrimeCandidate> minimal_primes(const Ideal& j);

// Throws DecompositionIncomplete naming the first uncertified prime.
void require_certified(const std::vector<PrimeCandidate>& primes, const std::vector<std::string>& path = {});

// (x_1 - p_1, ..., x_n - p_n).
PrimeCandidate maximal_ideal_of_point(const RingPtr& ring, const Point& p);

// Monic minimal polynomial over Q of u in A/J, as coefficients c_0..c_d
// (ascending). Requires J zero-dimensional.
std::vector<Rational> minimal_polynomial(const Ideal& j, const Polynomial& u);

}  // namespace logstrat
