#include "logstrat/derivation.hpp"

#include <algorithm>

#include "logstrat/budget.hpp"
#include "logstrat/factor.hpp"

namespace logstrat {

Derivation::Derivation(RingPtr ring) : ring_(std::move(ring)), coefficients_(ring_->arity(), Polynomial(ring_)) {}

Derivation::Derivation(RingPtr ring, std::vector<Polynomial> coefficients)
    : ring_(std::move(ring)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != ring_->arity())
    throw PreconditionError("derivation has " + std::to_string(coefficients_.size()) +
                            " coefficients in a ring of arity " + std::to_string(ring_->arity()));
}

Derivation Derivation::partial(RingPtr ring, std::size_t var) {
  Derivation d(ring);
  d.coefficients_.at(var) = Polynomial::constant(ring, 1);
  return d;
}

Derivation Derivation::from_vector(const FreeModuleElement& v) { return Derivation(v.ring(), v.components()); }

bool Derivation::is_zero() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Polynomial& c) { return c.is_zero(); });
}

Polynomial Derivation::apply(const Polynomial& f) const {
  Polynomial out(ring_);
  for (std::size_t j = 0; j < coefficients_.size(); ++j)
    if (!coefficients_[j].is_zero() && f.uses(j)) out += coefficients_[j] * f.derivative(j);
  return out;
}

Derivation& Derivation::operator+=(const Derivation& other) {
  for (std::size_t j = 0; j < arity(); ++j) coefficients_[j] += other.coefficients_.at(j);
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& other) {
  for (std::size_t j = 0; j < arity(); ++j) coefficients_[j] -= other.coefficients_.at(j);
  return *this;
}

Derivation operator*(const Polynomial& c, const Derivation& d) {
  Derivation out = d;
  for (auto& a : out.coefficients_) a *= c;
  return out;
}

std::string Derivation::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < arity(); ++j) {
    const Polynomial& a = coefficients_[j];
    if (a.is_zero()) continue;
    const std::string d = "d" + ring_->name(j);
    bool negative = false;
    std::string body;
    if (a.size() == 1) {
      const Term& t = a.leading_term();
      negative = t.coeff < 0;
      const Polynomial mag = negative ? -a : a;
      body = mag.is_one() ? d : mag.to_string() + "*" + d;
    } else {
      body = "(" + a.to_string() + ")*" + d;
    }
    if (s.empty()) s = negative ? "-" + body : body;
    else s += (negative ? " - " : " + ") + body;
  }
  return s.empty() ? "0" : s;
}

Derivation lie_bracket(const Derivation& a, const Derivation& b) {
  if (!a.ring()->same_as(*b.ring())) throw PreconditionError("lie_bracket: derivations from different rings");
  std::vector<Polynomial> c;
  for (std::size_t j = 0; j < a.arity(); ++j) c.push_back(a.apply(b[j]) - b.apply(a[j]));
  return Derivation(a.ring(), std::move(c));
}

namespace {

std::vector<FreeModuleElement> vectors(const std::vector<Derivation>& ds) {
  std::vector<FreeModuleElement> v;
  for (const auto& d : ds) v.push_back(d.as_vector());
  return v;
}

}  // namespace

DerivationModule::DerivationModule(RingPtr ring, std::vector<Derivation> generators, bool bracket_closed)
    : ring_(ring),
      bracket_closed_(bracket_closed),
      submodule_(ring, ring->arity(), {}) {
  for (auto& g : generators) {
    if (g.arity() != ring_->arity()) throw PreconditionError("derivation arity does not match the ring");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
  submodule_ = Submodule(ring_, ring_->arity(), vectors(generators_));
}

DerivationModule DerivationModule::full(RingPtr ring) {
  std::vector<Derivation> d;
  for (std::size_t j = 0; j < ring->arity(); ++j) d.push_back(Derivation::partial(ring, j));
  return DerivationModule(ring, std::move(d), true);
}

DerivationModule DerivationModule::pruned() const {
  std::vector<Derivation> keep = generators_;
  for (std::size_t k = keep.size(); k-- > 0;) {
    std::vector<Derivation> rest;
    for (std::size_t m = 0; m < keep.size(); ++m)
      if (m != k) rest.push_back(keep[m]);
    if (Submodule(ring_, ring_->arity(), vectors(rest)).contains(keep[k].as_vector())) keep = std::move(rest);
  }
  return DerivationModule(ring_, std::move(keep), bracket_closed_);
}

std::string DerivationModule::to_string() const {
  std::string s = "{";
  for (std::size_t k = 0; k < generators_.size(); ++k) s += (k ? "; " : " ") + generators_[k].to_string();
  return s + (generators_.empty() ? "}" : " }");
}

bool is_bracket_closed(const DerivationModule& m) {
  const auto& g = m.generators();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (!m.contains(lie_bracket(g[i], g[j]))) return false;
  return true;
}

DerivationModule close_under_bracket(const DerivationModule& m) {
  if (m.bracket_closed()) return m;
  const RingPtr& ring = m.ring();
  std::vector<Derivation> gens = m.generators();
  Submodule span(ring, ring->arity(), vectors(gens));
  // Brackets of generators suffice: [aD, bE] = ab[D, E] + a D(b) E - b E(a) D.
  std::size_t done = 0;  // brackets among gens[0..done) are known to lie in span
  while (done < gens.size()) {
    const std::size_t j = done;
    for (std::size_t i = 0; i < j; ++i) {
      budget::charge();
      Derivation b = lie_bracket(gens[i], gens[j]);
      if (b.is_zero() || span.contains(b.as_vector())) continue;
      gens.push_back(std::move(b));
      span = Submodule(ring, ring->arity(), vectors(gens));
    }
    ++done;
  }
  return DerivationModule(ring, std::move(gens), true);
}

DerivationModule logarithmic_derivations(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring();
  const std::size_t n = ring->arity();
  if (ideal.is_zero() || ideal.is_unit()) return DerivationModule::full(ring);
  const std::vector<Polynomial>& g = ideal.generators();
  const std::size_t s = g.size();
  // Column i: the partials of all generators in x_i. Columns (j, k): g_k in row j.
  std::vector<FreeModuleElement> cols;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Polynomial> c;
    for (const auto& gj : g) c.push_back(gj.derivative(i));
    cols.emplace_back(ring, std::move(c));
  }
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t k = 0; k < s; ++k) {
      FreeModuleElement c(ring, s);
      c[j] = g[k];
      cols.push_back(std::move(c));
    }
  std::vector<Derivation> gens;
  const Submodule rel = syzygies(cols);
  for (const auto& r : rel.generators()) {
    Derivation d = Derivation::from_vector(r.slice(0, n));
    if (!d.is_zero()) gens.push_back(std::move(d));
  }
  // Preserving derivations are closed under brackets, so no closure is needed.
  return DerivationModule(ring, std::move(gens), true).pruned();
}

Polynomial determinant(std::vector<std::vector<Polynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw PreconditionError("determinant of an empty matrix");
  const RingPtr ring = m[0][0].ring();
  for (const auto& row : m)
    if (row.size() != n) throw PreconditionError("determinant of a non-square matrix");
  Polynomial sign = Polynomial::constant(ring, 1);
  Polynomial prev = Polynomial::constant(ring, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k].is_zero()) ++p;
    if (p == n) return Polynomial(ring);
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        budget::charge();
        // Bareiss: the division by the previous pivot is exact.
        const Polynomial num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        auto q = divide_exact(num, prev);
        if (!q) throw std::logic_error("determinant: inexact Bareiss step");
        m[i][j] = std::move(*q);
      }
      m[i][k] = Polynomial(ring);
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

SaitoResult saito_free_check(const std::vector<Derivation>& gens, const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("saito_free_check: f must be nonzero");
  const RingPtr& ring = f.ring();
  const std::size_t n = ring->arity();
  if (gens.size() != n)
    throw DerivationCountMismatch("saito_free_check: expected " + std::to_string(n) + " derivations, got " +
                                  std::to_string(gens.size()));
  for (const auto& [s, mult] : square_free_decomposition(f))
    if (mult > 1) throw PreconditionError("saito_free_check: f is not square-free");
  for (std::size_t i = 0; i < n; ++i)
    if (!divide_exact(gens[i].apply(f), f))
      throw NotPreserving("saito_free_check: derivation " + std::to_string(i + 1) + " (" + gens[i].to_string() +
                              ") does not preserve (f)",
                          i);
  std::vector<std::vector<Polynomial>> m;
  for (const auto& d : gens) m.push_back(d.coefficients());
  Polynomial det = determinant(std::move(m));
  SaitoResult out{SaitoVerdict::Inconclusive, det, Rational(0)};
  if (det.is_zero()) return out;
  if (auto q = divide_exact(det, f); q && q->is_constant()) {
    out.verdict = SaitoVerdict::FreeWithBasis;
    out.constant = q->constant_term();
  }
  return out;
}

}  // namespace logstrat
