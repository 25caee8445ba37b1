#pragma once

#include <string>
#include <vector>

#include "logstrat/errors.hpp"
#include "logstrat/ideal.hpp"
#include "logstrat/module.hpp"

namespace logstrat {

// Vector field sum_j a_j * d/dx_j with polynomial coefficients.
class Derivation {
 public:
  explicit Derivation(RingPtr ring);
  Derivation(RingPtr ring, std::vector<Polynomial> coefficients);

  static Derivation partial(RingPtr ring, std::size_t var);
  static Derivation from_vector(const FreeModuleElement& v);

  const RingPtr& ring() const { return ring_; }
  std::size_t arity() const { return coefficients_.size(); }
  const std::vector<Polynomial>& coefficients() const { return coefficients_; }
  const Polynomial& operator[](std::size_t j) const { return coefficients_[j]; }
  bool is_zero() const;

  Polynomial apply(const Polynomial& f) const;
  Polynomial operator()(const Polynomial& f) const { return apply(f); }

  FreeModuleElement as_vector() const { return FreeModuleElement(ring_, coefficients_); }

  Derivation& operator+=(const Derivation& other);
  Derivation& operator-=(const Derivation& other);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(const Polynomial& c, const Derivation& d);

  // "x*dx + y*dy", "(x + y*z)*dz"; "0" for the zero field.
  std::string to_string() const;

  friend bool operator==(const Derivation& a, const Derivation& b) {
    return a.coefficients_ == b.coefficients_;
  }
  friend bool operator!=(const Derivation& a, const Derivation& b) { return !(a == b); }

 private:
  RingPtr ring_;
  std::vector<Polynomial> coefficients_;
};

// [a, b] = a∘b - b∘a; component j is a(b_j) - b(a_j).
Derivation lie_bracket(const Derivation& a, const Derivation& b);

// Finitely generated A-submodule of the derivations of A.
class DerivationModule {
 public:
  DerivationModule(RingPtr ring, std::vector<Derivation> generators, bool bracket_closed = false);

  // All derivations: generated by the partials.
  static DerivationModule full(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Derivation>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  bool bracket_closed() const { return bracket_closed_; }

  const Submodule& submodule() const { return submodule_; }
  bool contains(const Derivation& d) const { return submodule_.contains(d.as_vector()); }
  bool contains(const DerivationModule& other) const { return submodule_.contains(other.submodule_); }

  // Drops generators lying in the span of the remaining ones.
  DerivationModule pruned() const;

  std::string to_string() const;

  friend bool operator==(const DerivationModule& a, const DerivationModule& b) {
    return a.submodule_ == b.submodule_;
  }

 private:
  RingPtr ring_;
  std::vector<Derivation> generators_;
  bool bracket_closed_;
  Submodule submodule_;
};

// Verifies that the bracket of every generator pair lies in the module.
bool is_bracket_closed(const DerivationModule& m);

// Smallest submodule containing m and closed under brackets.
DerivationModule close_under_bracket(const DerivationModule& m);

// {d : d(I) ⊆ I}, from relations sum_i a_i dg_j/dx_i + sum_k b_jk g_k = 0.
DerivationModule logarithmic_derivations(const Ideal& ideal);

// Raised by saito_free_check when the tuple size does not match the arity.
class DerivationCountMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Raised by saito_free_check when a derivation does not preserve (f).
class NotPreserving : public PreconditionError {
 public:
  NotPreserving(const std::string& what, std::size_t index) : PreconditionError(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

enum class SaitoVerdict { FreeWithBasis, Inconclusive };

struct SaitoResult {
  SaitoVerdict verdict;
  Polynomial determinant;
  // det = constant * f when the verdict is FreeWithBasis, otherwise 0.
  Rational constant;
};

SaitoResult saito_free_check(const std::vector<Derivation>& gens, const Polynomial& f);

// Determinant by fraction-free elimination.
Polynomial determinant(std::vector<std::vector<Polynomial>> m);

}  // namespace logstrat
