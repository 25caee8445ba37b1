#pragma once

#include <vector>

#include "logstrat/polynomial.hpp"

namespace logstrat::detail {

// Leading monomials packed contiguously for the divisor-search kernel.
class LeadIndex {
 public:
  void add(const Monomial& lm, std::size_t id);
  // id of the first registered monomial dividing m, or kernels::npos.
  std::size_t find(const Monomial& m) const;
  std::size_t size() const { return lms_.size(); }

 private:
  std::vector<Monomial> lms_;
  std::vector<std::size_t> ids_;
};

// a[from..] - c * m * g[1..]: the reduction step with the leading terms
// already known to cancel.
std::vector<Term> sub_scaled_tail(const Ring& ring, const std::vector<Term>& a, std::size_t from,
                                  const Rational& c, const Monomial& m, const std::vector<Term>& g);

// Reduces f by polys[id] for ids found in `index`. With full = false only the
// leading term is reduced until it becomes irreducible.
Polynomial reduce_with(const Polynomial& f, const std::vector<const Polynomial*>& polys,
                       const LeadIndex& index, bool full);

}  // namespace logstrat::detail
