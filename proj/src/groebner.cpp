#include <algorithm>
#include <mutex>

#include "logstrat/budget.hpp"
#include "logstrat/errors.hpp"
#include "logstrat/factor.hpp"
#include "logstrat/ideal.hpp"
#include "logstrat/module.hpp"
#include "reduce_kernel.hpp"

namespace logstrat {

namespace detail {

std::vector<Term> sub_scaled_tail(const Ring& ring, const std::vector<Term>& a, std::size_t from,
                                  const Rational& c, const Monomial& m, const std::vector<Term>& g) {
  std::vector<Term> out;
  out.reserve(a.size() - from + g.size());
  std::size_t i = from;
  std::size_t j = 1;  // the leading terms cancel by construction
  while (i < a.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(a[i++]);
      continue;
    }
    const Monomial gm = g[j].mono * m;
    const int cmp = i == a.size() ? -1 : ring.compare(a[i].mono, gm);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, -c * g[j].coeff});
      ++j;
    } else {
      Rational s = a[i].coeff - c * g[j].coeff;
      if (s != 0) out.push_back({gm, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

void LeadIndex::add(const Monomial& lm, std::size_t id) {
  lms_.push_back(lm);
  ids_.push_back(id);
}

std::size_t LeadIndex::find(const Monomial& m) const {
  const std::size_t k = kernels::active_kernels().find_divisor(lms_.empty() ? nullptr : lms_.front().data(),
                                                               lms_.size(), m.data());
  return k == kernels::npos ? kernels::npos : ids_[k];
}

Polynomial reduce_with(const Polynomial& f, const std::vector<const Polynomial*>& polys,
                       const LeadIndex& index, bool full) {
  const Ring& ring = *f.ring();
  std::vector<Term> cur = f.terms();
  std::vector<Term> rem;
  std::size_t head = 0;
  while (head < cur.size()) {
    const std::size_t k = index.find(cur[head].mono);
    if (k == kernels::npos) {
      if (!full) break;
      rem.push_back(std::move(cur[head++]));
      continue;
    }
    const Polynomial& g = *polys[k];
    budget::charge(g.size());
    const Rational c = cur[head].coeff / g.leading_coefficient();
    const Monomial q = quotient(cur[head].mono, g.leading_monomial());
    cur = sub_scaled_tail(ring, cur, head + 1, c, q, g.terms());
    head = 0;
  }
  for (std::size_t i = head; i < cur.size(); ++i) rem.push_back(std::move(cur[i]));
  return Polynomial::from_sorted_terms(f.ring(), std::move(rem));
}

}  // namespace detail

using detail::LeadIndex;

Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& basis) {
  std::vector<const Polynomial*> ptrs;
  LeadIndex index;
  for (const auto& g : basis) {
    if (g.is_zero()) continue;
    index.add(g.leading_monomial(), ptrs.size());
    ptrs.push_back(&g);
  }
  return detail::reduce_with(f, ptrs, index, true);
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  const Polynomial a = f.mul_term(quotient(l, f.leading_monomial()), Rational(1) / f.leading_coefficient());
  return a.sub_mul_term(Rational(1) / g.leading_coefficient(), quotient(l, g.leading_monomial()), g);
}

bool buchberger_criterion_holds(const std::vector<Polynomial>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!reduce(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
  return true;
}

namespace {

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Buchberger {
 public:
  explicit Buchberger(RingPtr ring) : ring_(std::move(ring)) {}

  // Returns false once the unit ideal is detected.
  bool add(const Polynomial& f) {
    Polynomial h = reduce_active(f);
    if (h.is_zero()) return true;
    if (h.is_constant()) return false;
    update(h.monic());
    return true;
  }

  bool run() {
    while (!pairs_.empty()) {
      budget::charge();
      const Pair p = pop_smallest();
      Polynomial h = reduce_active(s_polynomial(polys_[p.i], polys_[p.j]));
      if (h.is_zero()) continue;
      if (h.is_constant()) return false;
      update(h.monic());
    }
    return true;
  }

  std::vector<Polynomial> reduced() const {
    std::vector<Polynomial> g;
    for (std::size_t k : active_) g.push_back(polys_[k]);
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < g.size(); ++k) {
      std::vector<const Polynomial*> others;
      LeadIndex index;
      for (std::size_t m = 0; m < g.size(); ++m)
        if (m != k) {
          index.add(g[m].leading_monomial(), others.size());
          others.push_back(&g[m]);
        }
      // The leading term is irreducible by minimality, so only the tail moves.
      out.push_back(detail::reduce_with(g[k], others, index, true).monic());
    }
    std::sort(out.begin(), out.end(), [this](const Polynomial& a, const Polynomial& b) {
      return ring_->compare(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    return out;
  }

 private:
  Polynomial reduce_active(const Polynomial& f) const {
    std::vector<const Polynomial*> ptrs;
    LeadIndex index;
    for (std::size_t k : active_) {
      index.add(polys_[k].leading_monomial(), ptrs.size());
      ptrs.push_back(&polys_[k]);
    }
    return detail::reduce_with(f, ptrs, index, true);
  }

  Pair pop_smallest() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k)
      if (ring_->compare(pairs_[k].lcm, pairs_[best].lcm) < 0) best = k;
    Pair p = pairs_[best];
    pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
    return p;
  }

  // Gebauer-Moeller installation of a new basis element.
  void update(Polynomial h) {
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    const Monomial& lh = polys_[hi].leading_monomial();

    std::vector<Pair> c;
    for (std::size_t g : active_) c.push_back({g, hi, lcm(polys_[g].leading_monomial(), lh)});
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      bool keep = coprime(polys_[c[k].i].leading_monomial(), lh);
      if (!keep) {
        keep = true;
        for (std::size_t m = k + 1; m < c.size() && keep; ++m)
          if (divides(c[m].lcm, c[k].lcm)) keep = false;
        for (std::size_t m = 0; m < d.size() && keep; ++m)
          if (divides(d[m].lcm, c[k].lcm)) keep = false;
      }
      if (keep) d.push_back(c[k]);
    }
    std::vector<Pair> next;
    for (const Pair& p : pairs_) {
      const bool chain = divides(lh, p.lcm) &&
                         lcm(polys_[p.i].leading_monomial(), lh) != p.lcm &&
                         lcm(polys_[p.j].leading_monomial(), lh) != p.lcm;
      if (!chain) next.push_back(p);
    }
    for (const Pair& p : d)
      if (!coprime(polys_[p.i].leading_monomial(), lh)) next.push_back(p);
    pairs_ = std::move(next);

    std::vector<std::size_t> active;
    for (std::size_t g : active_)
      if (!divides(lh, polys_[g].leading_monomial())) active.push_back(g);
    active.push_back(hi);
    active_ = std::move(active);
  }

  RingPtr ring_;
  std::vector<Polynomial> polys_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

std::vector<Polynomial> groebner_basis(const RingPtr& ring, const std::vector<Polynomial>& generators) {
  Buchberger b(ring);
  for (const auto& f : generators) {
    if (!f.in_ring(ring).is_zero() && !b.add(f.in_ring(ring))) return {Polynomial::constant(ring, 1)};
  }
  if (!b.run()) return {Polynomial::constant(ring, 1)};
  return b.reduced();
}

struct Ideal::Cache {
  std::once_flag once;
  std::vector<Polynomial> gb;
  LeadIndex index;
  std::vector<const Polynomial*> ptrs;
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (g.ring() != ring_ && !g.ring()->same_as(*ring_))
      throw PreconditionError("ideal generator from a different ring");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(RingPtr ring) {
  Polynomial one = Polynomial::constant(ring, 1);
  return Ideal(std::move(ring), {std::move(one)});
}

const std::vector<Polynomial>& Ideal::groebner_basis() const {
  Cache& c = *cache_;
  std::call_once(c.once, [&] {
    c.gb = logstrat::groebner_basis(ring_, generators_);
    for (const auto& g : c.gb) {
      c.index.add(g.leading_monomial(), c.ptrs.size());
      c.ptrs.push_back(&g);
    }
  });
  return c.gb;
}

bool Ideal::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && gb[0].is_constant();
}

Polynomial Ideal::normal_form(const Polynomial& f) const {
  if (f.ring() != ring_ && !f.ring()->same_as(*ring_))
    throw PreconditionError("normal_form: polynomial from a different ring");
  groebner_basis();
  return detail::reduce_with(f, cache_->ptrs, cache_->index, true);
}

bool Ideal::contains(const Ideal& other) const {
  for (const auto& g : other.generators_)
    if (!contains(g)) return false;
  return true;
}

std::string Ideal::key() const {
  std::string s;
  for (const auto& g : groebner_basis()) s += g.to_string() + ";";
  return s;
}

std::vector<Polynomial> Ideal::display_generators() const {
  std::vector<Polynomial> out;
  for (const auto& g : groebner_basis()) out.push_back(integer_primitive(g).second);
  return out;
}

std::string Ideal::to_string() const {
  if (is_zero()) return "(0)";
  return logstrat::to_string(display_generators());
}

bool operator==(const Ideal& a, const Ideal& b) {
  const auto& ga = a.groebner_basis();
  const auto& gb = b.groebner_basis();
  if (ga.size() != gb.size()) return false;
  for (std::size_t k = 0; k < ga.size(); ++k)
    if (ga[k] != gb[k]) return false;
  return true;
}

Ideal operator+(const Ideal& a, const Ideal& b) {
  std::vector<Polynomial> g = a.groebner_basis();
  for (const auto& f : b.generators()) g.push_back(f);
  return Ideal(a.ring(), std::move(g));
}

Ideal operator+(const Ideal& a, const std::vector<Polynomial>& more) {
  std::vector<Polynomial> g = a.groebner_basis();
  for (const auto& f : more) g.push_back(f);
  return Ideal(a.ring(), std::move(g));
}

int compare(const Ideal& a, const Ideal& b) {
  const std::vector<Polynomial> ga = a.groebner_basis();
  const std::vector<Polynomial> gb = b.groebner_basis();
  for (std::size_t k = 0; k < std::min(ga.size(), gb.size()); ++k)
    if (int c = compare(ga[k], gb[k]); c != 0) return c;
  return ga.size() < gb.size() ? -1 : (ga.size() > gb.size() ? 1 : 0);
}

std::uint32_t independent_set(const Ideal& j) {
  if (j.is_unit()) throw PreconditionError("independent_set: unit ideal");
  const std::size_t n = j.ring()->arity();
  std::vector<std::uint32_t> supports;
  for (const auto& g : j.groebner_basis()) supports.push_back(g.leading_monomial().support());
  std::uint32_t best = 0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (__builtin_popcount(s) <= __builtin_popcount(best)) continue;
    // Independent: no leading monomial lives purely in the variables of s.
    const bool independent = std::none_of(supports.begin(), supports.end(),
                                          [s](std::uint32_t t) { return (t & ~s) == 0; });
    if (independent) best = s;
  }
  return best;
}

int dimension(const Ideal& j) {
  if (j.is_unit()) return -1;
  return __builtin_popcount(independent_set(j));
}

std::vector<Monomial> standard_monomials(const Ideal& j) {
  if (dimension(j) != 0) throw PreconditionError("standard_monomials: ideal is not zero-dimensional");
  std::vector<Monomial> lms;
  for (const auto& g : j.groebner_basis()) lms.push_back(g.leading_monomial());
  auto standard = [&](const Monomial& m) {
    return std::none_of(lms.begin(), lms.end(), [&](const Monomial& l) { return divides(l, m); });
  };
  std::vector<Monomial> out;
  std::vector<Monomial> frontier{Monomial::one()};
  const std::size_t n = j.ring()->arity();
  while (!frontier.empty()) {
    std::vector<Monomial> next;
    for (const Monomial& m : frontier) {
      out.push_back(m);
      // Generate each monomial once: only raise variables at or past the last used one.
      std::size_t last = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (m[v] > 0) last = v;
      for (std::size_t v = last; v < n; ++v) {
        Monomial t = m;
        t[v] += 1;
        budget::charge();
        if (standard(t)) next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  const Ring& r = *j.ring();
  std::sort(out.begin(), out.end(), [&r](const Monomial& a, const Monomial& b) { return r.compare(a, b) < 0; });
  return out;
}

std::size_t vector_space_dimension(const Ideal& j) { return standard_monomials(j).size(); }

Ideal ideal_quotient(const Ideal& j, const Polynomial& f) {
  if (f.is_zero()) throw PreconditionError("ideal_quotient: zero divisor");
  const RingPtr& ring = j.ring();
  if (j.is_zero()) return Ideal(ring);
  if (f.is_constant()) return j;
  std::vector<Polynomial> cols{f};
  for (const auto& g : j.groebner_basis()) cols.push_back(g);
  std::vector<Polynomial> gens;
  const Submodule rel = syzygies(cols);
  for (const auto& s : rel.generators()) gens.push_back(s[0]);
  return Ideal(ring, std::move(gens));
}

Ideal saturation(const Ideal& j, const Polynomial& f) {
  Ideal cur = j;
  for (;;) {
    budget::charge();
    Ideal next = ideal_quotient(cur, f);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  const RingPtr& ring = a.ring();
  if (a.is_zero() || b.is_zero()) return Ideal(ring);
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  std::vector<FreeModuleElement> cols;
  const Polynomial one = Polynomial::constant(ring, 1);
  const Polynomial zero(ring);
  cols.emplace_back(ring, std::vector<Polynomial>{one, one});
  for (const auto& g : a.groebner_basis()) cols.emplace_back(ring, std::vector<Polynomial>{g, zero});
  for (const auto& h : b.groebner_basis()) cols.emplace_back(ring, std::vector<Polynomial>{zero, h});
  std::vector<Polynomial> gens;
  const Submodule rel = syzygies(cols);
  for (const auto& s : rel.generators()) gens.push_back(s[0]);
  return Ideal(ring, std::move(gens));
}

}  // namespace logstrat
