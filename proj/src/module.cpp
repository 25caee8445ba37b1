#include <algorithm>
#include <mutex>

#include "logstrat/budget.hpp"
#include "logstrat/errors.hpp"
#include "logstrat/module.hpp"
#include "reduce_kernel.hpp"

namespace logstrat {

FreeModuleElement::FreeModuleElement(RingPtr ring, std::size_t rank)
    : ring_(std::move(ring)), components_(rank, Polynomial(ring_)) {}

FreeModuleElement::FreeModuleElement(RingPtr ring, std::vector<Polynomial> components)
    : ring_(std::move(ring)), components_(std::move(components)) {
  for (const auto& c : components_)
    if (c.ring() != ring_ && !c.ring()->same_as(*ring_))
      throw PreconditionError("module component from a different ring");
}

FreeModuleElement FreeModuleElement::unit(RingPtr ring, std::size_t rank, std::size_t index) {
  FreeModuleElement e(ring, rank);
  e.components_[index] = Polynomial::constant(ring, 1);
  return e;
}

bool FreeModuleElement::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& c) { return c.is_zero(); });
}

std::size_t FreeModuleElement::leading_position() const {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (!components_[i].is_zero()) return i;
  return components_.size();
}

FreeModuleElement& FreeModuleElement::operator+=(const FreeModuleElement& other) {
  if (other.rank() != rank()) throw PreconditionError("module elements of different rank");
  for (std::size_t i = 0; i < rank(); ++i) components_[i] += other.components_[i];
  return *this;
}

FreeModuleElement& FreeModuleElement::operator-=(const FreeModuleElement& other) {
  if (other.rank() != rank()) throw PreconditionError("module elements of different rank");
  for (std::size_t i = 0; i < rank(); ++i) components_[i] -= other.components_[i];
  return *this;
}

FreeModuleElement& FreeModuleElement::operator*=(const Polynomial& c) {
  for (auto& x : components_) x *= c;
  return *this;
}

FreeModuleElement FreeModuleElement::slice(std::size_t from, std::size_t count) const {
  return FreeModuleElement(ring_, std::vector<Polynomial>(components_.begin() + static_cast<std::ptrdiff_t>(from),
                                                          components_.begin() + static_cast<std::ptrdiff_t>(from + count)));
}

std::string FreeModuleElement::to_string() const { return logstrat::to_string(components_); }

bool operator==(const FreeModuleElement& a, const FreeModuleElement& b) {
  return a.components_ == b.components_;
}

FreeModuleElement combine(const std::vector<Polynomial>& coefficients,
                          const std::vector<FreeModuleElement>& columns) {
  if (coefficients.size() != columns.size() || columns.empty())
    throw PreconditionError("combine: coefficient count mismatch");
  FreeModuleElement out(columns.front().ring(), columns.front().rank());
  for (std::size_t j = 0; j < columns.size(); ++j)
    if (!coefficients[j].is_zero()) out += coefficients[j] * columns[j];
  return out;
}

namespace {

struct Lead {
  std::size_t pos;
  Monomial mono;
  Rational coeff;
};

Lead lead_of(const FreeModuleElement& v) {
  const std::size_t p = v.leading_position();
  const Term& t = v[p].leading_term();
  return {p, t.mono, t.coeff};
}

// Per-position divisor indices over a set of module elements.
class ModuleIndex {
 public:
  explicit ModuleIndex(std::size_t rank) : by_pos_(rank) {}

  void add(const FreeModuleElement* v) {
    const Lead l = lead_of(*v);
    by_pos_[l.pos].add(l.mono, elems_.size());
    elems_.push_back(v);
  }

  FreeModuleElement reduce(FreeModuleElement v) const {
    const Ring& ring = *v.ring();
    for (std::size_t p = 0; p < v.rank(); ++p) {
      if (v[p].is_zero()) continue;
      std::vector<Term> cur = v[p].terms();
      std::vector<Term> rem;
      std::size_t head = 0;
      while (head < cur.size()) {
        const std::size_t k = by_pos_[p].find(cur[head].mono);
        if (k == kernels::npos) {
          rem.push_back(std::move(cur[head++]));
          continue;
        }
        const FreeModuleElement& g = *elems_[k];
        budget::charge(g[p].size());
        const Rational c = cur[head].coeff / g[p].leading_coefficient();
        const Monomial q = quotient(cur[head].mono, g[p].leading_monomial());
        cur = detail::sub_scaled_tail(ring, cur, head + 1, c, q, g[p].terms());
        head = 0;
        for (std::size_t s = p + 1; s < v.rank(); ++s)
          if (!g[s].is_zero()) v[s] = v[s].sub_mul_term(c, q, g[s]);
      }
      for (std::size_t i = head; i < cur.size(); ++i) rem.push_back(std::move(cur[i]));
      v[p] = Polynomial::from_sorted_terms(v.ring(), std::move(rem));
    }
    return v;
  }

 private:
  std::vector<detail::LeadIndex> by_pos_;
  std::vector<const FreeModuleElement*> elems_;
};

FreeModuleElement monic(FreeModuleElement v) {
  const Rational inv = Rational(1) / lead_of(v).coeff;
  for (std::size_t i = 0; i < v.rank(); ++i) v[i] *= inv;
  return v;
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class ModuleBuchberger {
 public:
  ModuleBuchberger(RingPtr ring, std::size_t rank) : ring_(std::move(ring)), rank_(rank) {}

  void add(const FreeModuleElement& v) {
    FreeModuleElement h = reduce_active(v);
    if (!h.is_zero()) update(monic(std::move(h)));
  }

  void run() {
    while (!pairs_.empty()) {
      budget::charge();
      const Pair p = pop_smallest();
      FreeModuleElement h = reduce_active(s_vector(p));
      if (!h.is_zero()) update(monic(std::move(h)));
    }
  }

  std::vector<FreeModuleElement> reduced() const {
    std::vector<FreeModuleElement> g;
    for (std::size_t k : active_) g.push_back(elems_[k]);
    std::vector<FreeModuleElement> out;
    for (std::size_t k = 0; k < g.size(); ++k) {
      ModuleIndex index(rank_);
      for (std::size_t m = 0; m < g.size(); ++m)
        if (m != k) index.add(&g[m]);
      out.push_back(monic(index.reduce(g[k])));
    }
    const Ring& r = *ring_;
    std::sort(out.begin(), out.end(), [&r](const FreeModuleElement& a, const FreeModuleElement& b) {
      const Lead la = lead_of(a);
      const Lead lb = lead_of(b);
      if (la.pos != lb.pos) return la.pos < lb.pos;
      return r.compare(la.mono, lb.mono) > 0;
    });
    return out;
  }

 private:
  FreeModuleElement reduce_active(const FreeModuleElement& v) const {
    ModuleIndex index(rank_);
    for (std::size_t k : active_) index.add(&elems_[k]);
    return index.reduce(v);
  }

  FreeModuleElement s_vector(const Pair& p) const {
    const FreeModuleElement& a = elems_[p.i];
    const FreeModuleElement& b = elems_[p.j];
    const Monomial qa = quotient(p.lcm, leads_[p.i].mono);
    const Monomial qb = quotient(p.lcm, leads_[p.j].mono);
    FreeModuleElement s(ring_, rank_);
    for (std::size_t i = 0; i < rank_; ++i) s[i] = a[i].mul_term(qa, 1).sub_mul_term(1, qb, b[i]);
    return s;
  }

  Pair pop_smallest() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const std::size_t pk = leads_[pairs_[k].i].pos;
      const std::size_t pb = leads_[pairs_[best].i].pos;
      if (pk > pb || (pk == pb && ring_->compare(pairs_[k].lcm, pairs_[best].lcm) < 0)) best = k;
    }
    Pair p = pairs_[best];
    pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
    return p;
  }

  // Gebauer-Moeller bookkeeping restricted to equal positions. The product
  // criterion does not hold for modules, so only chain deletions apply.
  void update(FreeModuleElement h) {
    const std::size_t hi = elems_.size();
    leads_.push_back(lead_of(h));
    elems_.push_back(std::move(h));
    const Lead& lh = leads_[hi];

    std::vector<Pair> c;
    for (std::size_t g : active_)
      if (leads_[g].pos == lh.pos) c.push_back({g, hi, lcm(leads_[g].mono, lh.mono)});
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      bool keep = true;
      for (std::size_t m = k + 1; m < c.size() && keep; ++m)
        if (divides(c[m].lcm, c[k].lcm)) keep = false;
      for (std::size_t m = 0; m < d.size() && keep; ++m)
        if (divides(d[m].lcm, c[k].lcm)) keep = false;
      if (keep) d.push_back(c[k]);
    }
    std::vector<Pair> next;
    for (const Pair& p : pairs_) {
      const bool chain = leads_[p.i].pos == lh.pos && divides(lh.mono, p.lcm) &&
                         lcm(leads_[p.i].mono, lh.mono) != p.lcm &&
                         lcm(leads_[p.j].mono, lh.mono) != p.lcm;
      if (!chain) next.push_back(p);
    }
    for (const Pair& p : d) next.push_back(p);
    pairs_ = std::move(next);

    std::vector<std::size_t> active;
    for (std::size_t g : active_)
      if (leads_[g].pos != lh.pos || !divides(lh.mono, leads_[g].mono)) active.push_back(g);
    active.push_back(hi);
    active_ = std::move(active);
  }

  RingPtr ring_;
  std::size_t rank_;
  std::vector<FreeModuleElement> elems_;
  std::vector<Lead> leads_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

std::vector<FreeModuleElement> module_groebner_basis(const RingPtr& ring, std::size_t rank,
                                                     std::vector<FreeModuleElement> generators) {
  ModuleBuchberger b(ring, rank);
  for (const auto& v : generators) {
    if (v.rank() != rank) throw PreconditionError("module generator of wrong rank");
    if (!v.is_zero()) b.add(v);
  }
  b.run();
  return b.reduced();
}

struct Submodule::Cache {
  std::once_flag once;
  std::vector<FreeModuleElement> gb;
  std::unique_ptr<ModuleIndex> index;
};

Submodule::Submodule(RingPtr ring, std::size_t rank, std::vector<FreeModuleElement> generators)
    : ring_(std::move(ring)), rank_(rank), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (g.rank() != rank_) throw PreconditionError("submodule generator of wrong rank");
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

const std::vector<FreeModuleElement>& Submodule::groebner_basis() const {
  Cache& c = *cache_;
  std::call_once(c.once, [&] {
    c.gb = module_groebner_basis(ring_, rank_, generators_);
    c.index = std::make_unique<ModuleIndex>(rank_);
    for (const auto& g : c.gb) c.index->add(&g);
  });
  return c.gb;
}

FreeModuleElement Submodule::normal_form(const FreeModuleElement& v) const {
  if (v.rank() != rank_) throw PreconditionError("module_membership: rank mismatch");
  groebner_basis();
  return cache_->index->reduce(v);
}

bool Submodule::contains(const Submodule& other) const {
  for (const auto& g : other.generators_)
    if (!contains(g)) return false;
  return true;
}

Submodule syzygies(const std::vector<FreeModuleElement>& columns) {
  if (columns.empty()) throw PreconditionError("syzygies: no columns");
  const RingPtr& ring = columns.front().ring();
  const std::size_t r = columns.front().rank();
  const std::size_t m = columns.size();
  std::vector<FreeModuleElement> ext;
  for (std::size_t j = 0; j < m; ++j) {
    if (columns[j].rank() != r) throw PreconditionError("syzygies: columns of different rank");
    std::vector<Polynomial> comps = columns[j].components();
    for (std::size_t k = 0; k < m; ++k)
      comps.push_back(k == j ? Polynomial::constant(ring, 1) : Polynomial(ring));
    ext.emplace_back(ring, std::move(comps));
  }
  // Position over term with the column block first: basis elements whose
  // leading position falls in the identity block are exactly the relations.
  std::vector<FreeModuleElement> relations;
  for (const auto& g : module_groebner_basis(ring, r + m, std::move(ext)))
    if (g.leading_position() >= r) relations.push_back(g.slice(r, m));
  return Submodule(ring, m, std::move(relations));
}

Submodule syzygies(const std::vector<Polynomial>& columns) {
  if (columns.empty()) throw PreconditionError("syzygies: no columns");
  std::vector<FreeModuleElement> cols;
  for (const auto& c : columns) cols.emplace_back(c.ring(), std::vector<Polynomial>{c});
  return syzygies(cols);
}

}  // namespace logstrat
