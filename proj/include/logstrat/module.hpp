#pragma once

#include <memory>
#include <string>
#include <vector>

#include "logstrat/polynomial.hpp"

namespace logstrat {

// Element of the free module A^r.
class FreeModuleElement {
 public:
  FreeModuleElement(RingPtr ring, std::size_t rank);
  FreeModuleElement(RingPtr ring, std::vector<Polynomial> components);

  static FreeModuleElement unit(RingPtr ring, std::size_t rank, std::size_t index);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return components_.size(); }
  const std::vector<Polynomial>& components() const { return components_; }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  Polynomial& operator[](std::size_t i) { return components_[i]; }
  bool is_zero() const;

  // Lowest index with a nonzero component, or rank() for zero.
  std::size_t leading_position() const;

  FreeModuleElement& operator+=(const FreeModuleElement& other);
  FreeModuleElement& operator-=(const FreeModuleElement& other);
  FreeModuleElement& operator*=(const Polynomial& c);
  friend FreeModuleElement operator+(FreeModuleElement a, const FreeModuleElement& b) { return a += b; }
  friend FreeModuleElement operator-(FreeModuleElement a, const FreeModuleElement& b) { return a -= b; }
  friend FreeModuleElement operator*(const Polynomial& c, FreeModuleElement a) { return a *= c; }

  // Components [from, from + count).
  FreeModuleElement slice(std::size_t from, std::size_t count) const;

  std::string to_string() const;

  friend bool operator==(const FreeModuleElement& a, const FreeModuleElement& b);
  friend bool operator!=(const FreeModuleElement& a, const FreeModuleElement& b) { return !(a == b); }

 private:
  RingPtr ring_;
  std::vector<Polynomial> components_;
};

// Sum of c_j * columns[j].
FreeModuleElement combine(const std::vector<Polynomial>& coefficients,
                          const std::vector<FreeModuleElement>& columns);

// Submodule of A^r. Groebner bases use position over term: a lower position
// always dominates, monomials compare by the ring order within a position.
class Submodule {
 public:
  Submodule(RingPtr ring, std::size_t rank, std::vector<FreeModuleElement> generators = {});

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<FreeModuleElement>& generators() const { return generators_; }

  // Reduced module basis: no leading term divides another, tails reduced,
  // leading coefficients 1.
  const std::vector<FreeModuleElement>& groebner_basis() const;

  FreeModuleElement normal_form(const FreeModuleElement& v) const;
  bool contains(const FreeModuleElement& v) const { return normal_form(v).is_zero(); }
  bool contains(const Submodule& other) const;

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.contains(b) && b.contains(a);
  }

 private:
  struct Cache;

  RingPtr ring_;
  std::size_t rank_;
  std::vector<FreeModuleElement> generators_;
  std::shared_ptr<Cache> cache_;
};

// Module Groebner basis of arbitrary generators (reduced, position over term).
std::vector<FreeModuleElement> module_groebner_basis(const RingPtr& ring, std::size_t rank,
                                                     std::vector<FreeModuleElement> generators);

// All relations sum_j c_j * columns[j] = 0, as a submodule of A^m. The returned
// generators form a reduced basis of the relation module.
Submodule syzygies(const std::vector<FreeModuleElement>& columns);
Submodule syzygies(const std::vector<Polynomial>& columns);

inline bool module_membership(const FreeModuleElement& v, const Submodule& m) { return m.contains(v); }

}  // namespace logstrat
