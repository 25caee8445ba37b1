#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "logstrat/polynomial.hpp"

namespace logstrat {

// Finitely generated ideal of a polynomial ring. The reduced Groebner basis is
// computed on first use and shared between copies.
class Ideal {
 public:
  explicit Ideal(RingPtr ring, std::vector<Polynomial> generators = {});

  static Ideal unit(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }

  // Reduced basis: monic elements sorted by decreasing leading monomial.
  const std::vector<Polynomial>& groebner_basis() const;

  bool is_unit() const;
  bool is_zero() const { return generators_.empty(); }

  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
  bool contains(const Ideal& other) const;

  // Canonical text of the reduced basis; equal ideals give equal keys.
  std::string key() const;
  // "(g1, g2, ...)" over the reduced basis scaled to primitive integer form.
  std::string to_string() const;
  // The reduced basis scaled to primitive integer form.
  std::vector<Polynomial> display_generators() const;

  friend bool operator==(const Ideal& a, const Ideal& b);
  friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }

 private:
  struct Cache;

  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

Ideal operator+(const Ideal& a, const Ideal& b);
Ideal operator+(const Ideal& a, const std::vector<Polynomial>& more);

// Reduced Groebner basis of the ideal generated by `generators`, computed with
// Buchberger's algorithm, the normal selection strategy and the Gebauer-Moeller
// pair criteria.
std::vector<Polynomial> groebner_basis(const RingPtr& ring, const std::vector<Polynomial>& generators);

// Full reduction of f modulo an arbitrary list of polynomials (the result is
// canonical only when `basis` is a Groebner basis).
Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& basis);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

// Every S-polynomial of `basis` reduces to zero modulo `basis`.
bool buchberger_criterion_holds(const std::vector<Polynomial>& basis);

// Krull dimension of A/J; -1 for the unit ideal.
int dimension(const Ideal& j);

// Total order on ideals by reduced basis (term-wise compare, then length).
int compare(const Ideal& a, const Ideal& b);

// Bitmask of a largest set of variables independent modulo the leading-term
// ideal (lowest mask among ties). Requires a proper ideal.
std::uint32_t independent_set(const Ideal& j);

// Monomials outside the leading-term ideal. Requires dimension(j) == 0.
std::vector<Monomial> standard_monomials(const Ideal& j);

// dim_Q A/J for a zero-dimensional ideal.
std::size_t vector_space_dimension(const Ideal& j);

// (J : f) = {g : g*f in J}.
Ideal ideal_quotient(const Ideal& j, const Polynomial& f);

// (J : f^infinity), by iterated quotients until the chain stabilizes.
Ideal saturation(const Ideal& j, const Polynomial& f);

Ideal intersect(const Ideal& a, const Ideal& b);

}  // namespace logstrat
