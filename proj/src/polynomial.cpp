#include "logstrat/polynomial.hpp"

#include <algorithm>

#include "logstrat/errors.hpp"

namespace logstrat {

std::string Point::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    if (i) s += ", ";
    s += coordinates[i].get_str();
  }
  return s + ")";
}

namespace {

// a + sign * c * m * b for term lists already sorted in `ring` order.
std::vector<Term> merge_scaled(const Ring& ring, const std::vector<Term>& a,
                               const std::vector<Term>& b, const Rational& c,
                               const Monomial* m) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    const Monomial bm = m ? b[j].mono * *m : b[j].mono;
    const int cmp = i == a.size() ? -1 : ring.compare(a[i].mono, bm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({bm, c * b[j].coeff});
      ++j;
    } else {
      Rational s = a[i].coeff + c * b[j].coeff;
      if (s != 0) out.push_back({bm, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({Monomial::one(), c});
  if (c != 0) p.terms_.back().coeff.canonicalize();
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->arity()) throw PreconditionError("variable index out of range");
  return term(std::move(ring), Monomial::variable(index), 1);
}

Polynomial Polynomial::term(RingPtr ring, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({m, c});
  if (c != 0) p.terms_.back().coeff.canonicalize();
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const Ring& r = *ring;
  std::sort(terms.begin(), terms.end(),
            [&r](const Term& a, const Term& b) { return r.compare(a.mono, b.mono) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    t.coeff.canonicalize();
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  Polynomial p(std::move(ring));
  p.terms_ = std::move(out);
  return p;
}

Polynomial Polynomial::from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
  Polynomial p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

void Polynomial::check_ring(const Polynomial& other) const {
  if (ring_ != other.ring_ && !ring_->same_as(*other.ring_))
    throw PreconditionError("polynomials belong to different rings");
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return 0;
}

std::int64_t Polynomial::total_degree() const {
  std::int64_t d = -1;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

std::int32_t Polynomial::degree_in(std::size_t var) const {
  std::int32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

std::uint32_t Polynomial::support() const {
  std::uint32_t s = 0;
  for (const auto& t : terms_) s |= t.mono.support();
  return s;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_ring(other);
  terms_ = merge_scaled(*ring_, terms_, other.terms_, Rational(1), nullptr);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_ring(other);
  terms_ = merge_scaled(*ring_, terms_, other.terms_, Rational(-1), nullptr);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
  if (a.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
  std::vector<Term> prod;
  prod.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) prod.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Polynomial::from_terms(a.ring_, std::move(prod));
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial p(ring_);
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
  return p;
}

Polynomial Polynomial::sub_mul_term(const Rational& c, const Monomial& m,
                                    const Polynomial& g) const {
  check_ring(g);
  Polynomial p(ring_);
  p.terms_ = merge_scaled(*ring_, terms_, g.terms_, -c, &m);
  return p;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial p = *this;
  const Rational inv = 1 / leading_coefficient();
  p *= inv;
  return p;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= ring_->arity()) throw PreconditionError("derivative: variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    Monomial m = t.mono;
    const std::int32_t e = m[var];
    m[var] = e - 1;
    out.push_back({m, t.coeff * e});
  }
  // Dividing every surviving term by the same variable preserves the order.
  return from_sorted_terms(ring_, std::move(out));
}

Rational Polynomial::evaluate(const Point& p) const {
  if (p.size() != ring_->arity()) throw PreconditionError("evaluate: point arity mismatch");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < ring_->arity(); ++i) {
      const std::int32_t e = t.mono[i];
      if (e == 0) continue;
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), p[i].get_num_mpz_t(), static_cast<unsigned long>(e));
      mpz_pow_ui(den.get_mpz_t(), p[i].get_den_mpz_t(), static_cast<unsigned long>(e));
      Rational f(num, den);
      f.canonicalize();
      v *= f;
    }
    sum += v;
  }
  return sum;
}

std::vector<Polynomial> Polynomial::coefficients_in(std::size_t var) const {
  const std::int32_t d = degree_in(var);
  std::vector<std::vector<Term>> buckets(static_cast<std::size_t>(d) + 1);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    const std::int32_t e = m[var];
    m[var] = 0;
    buckets[static_cast<std::size_t>(e)].push_back({m, t.coeff});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(ring_, std::move(b)));
  return out;
}

Polynomial Polynomial::from_coefficients(const RingPtr& ring, std::size_t var,
                                         const std::vector<Polynomial>& coeffs) {
  std::vector<Term> all;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Monomial shift = Monomial::variable(var, static_cast<std::int32_t>(k));
    for (const auto& t : coeffs[k].terms()) all.push_back({t.mono * shift, t.coeff});
  }
  return from_terms(ring, std::move(all));
}

Polynomial Polynomial::substitute(std::size_t var, const Polynomial& value) const {
  check_ring(value);
  const auto cs = coefficients_in(var);
  Polynomial acc(ring_);
  for (std::size_t k = cs.size(); k-- > 0;) {
    acc *= value;
    acc += cs[k];
  }
  return acc;
}

Polynomial Polynomial::specialize(std::size_t var, const Rational& value) const {
  return substitute(var, constant(ring_, value));
}

Polynomial Polynomial::in_ring(const RingPtr& ring) const {
  if (ring->arity() != ring_->arity()) throw PreconditionError("in_ring: arity mismatch");
  if (ring->order() == ring_->order()) {
    Polynomial p = *this;
    p.ring_ = ring;
    return p;
  }
  return from_terms(ring, terms_);
}

namespace {

std::string monomial_string(const Ring& ring, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < ring.arity(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ring.name(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff < 0;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(t.coeff);
    const std::string ms = monomial_string(*ring_, t.mono);
    if (ms.empty()) {
      s += mag.get_str();
    } else if (mag == 1) {
      s += ms;
    } else {
      s += mag.get_str() + "*" + ms;
    }
  }
  return s;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

int compare(const Polynomial& a, const Polynomial& b) {
  const Ring& r = *a.ring();
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    const int c = r.compare(x[i].mono, y[i].mono);
    if (c != 0) return c;
    const int d = cmp(x[i].coeff, y[i].coeff);
    if (d != 0) return d > 0 ? 1 : -1;
  }
  if (x.size() == y.size()) return 0;
  return x.size() > y.size() ? 1 : -1;
}

std::string to_string(const std::vector<Polynomial>& polys) {
  std::string s = "(";
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (i) s += ", ";
    s += polys[i].to_string();
  }
  return s + ")";
}

}  // namespace logstrat
