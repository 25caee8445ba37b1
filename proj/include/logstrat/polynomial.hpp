#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "logstrat/monomial.hpp"
#include "logstrat/ring.hpp"

namespace logstrat {

// Exact rational number, always canonical (reduced, positive denominator).
using Rational = mpq_class;

// Closed point with rational coordinates.
struct Point {
  std::vector<Rational> coordinates;

  std::size_t size() const { return coordinates.size(); }
  const Rational& operator[](std::size_t i) const { return coordinates[i]; }
  std::string to_string() const;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

// Sparse polynomial over Q. Terms are strictly decreasing in the ring order
// and carry no zero coefficients, so equal polynomials have equal term lists.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial term(RingPtr ring, const Monomial& m, const Rational& c);
  // Sorts and combines arbitrary terms.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
  // Trusts that `terms` is already canonical.
  static Polynomial from_sorted_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return is_constant() && !is_zero() && terms_[0].coeff == 1; }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Rational& leading_coefficient() const { return terms_.front().coeff; }
  Rational constant_term() const;

  // -1 for the zero polynomial.
  std::int64_t total_degree() const;
  std::int32_t degree_in(std::size_t var) const;
  bool uses(std::size_t var) const { return degree_in(var) > 0; }
  std::uint32_t support() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  // this - c * m * g, fused.
  Polynomial sub_mul_term(const Rational& c, const Monomial& m, const Polynomial& g) const;
  Polynomial mul_term(const Monomial& m, const Rational& c) const;

  Polynomial pow(unsigned e) const;
  // Scaled so the leading coefficient is 1 (zero stays zero).
  Polynomial monic() const;

  Polynomial derivative(std::size_t var) const;
  Rational evaluate(const Point& p) const;
  // Replace variable `var` by `value`.
  Polynomial substitute(std::size_t var, const Polynomial& value) const;
  // Fix variable `var` to a rational value.
  Polynomial specialize(std::size_t var, const Rational& value) const;
  // Coefficients c_k with this = sum_k c_k * var^k; c_k do not involve var.
  std::vector<Polynomial> coefficients_in(std::size_t var) const;
  static Polynomial from_coefficients(const RingPtr& ring, std::size_t var,
                                      const std::vector<Polynomial>& coeffs);

  // Same polynomial viewed in a ring with the same variables.
  Polynomial in_ring(const RingPtr& ring) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void check_ring(const Polynomial& other) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

// Total order on polynomials of one ring: compares term lists lexicographically
// (monomial first, then coefficient). Used for canonical sorting.
int compare(const Polynomial& a, const Polynomial& b);

std::string to_string(const std::vector<Polynomial>& polys);

// Grammar: integers, variable names, + - * / ^ and parentheses. '^' takes a
// non-negative integer exponent and binds tighter than '*' and '/', which bind
// tighter than '+' and '-'. Division is only by nonzero constants.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

// As above, with error positions reported relative to (line, column) of the
// first character of `text`.
Polynomial parse_polynomial_at(std::string_view text, const RingPtr& ring, std::size_t line,
                               std::size_t column);

}  // namespace logstrat
