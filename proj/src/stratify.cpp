#include "logstrat/stratify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "linalg.hpp"
#include "logstrat/budget.hpp"
#include "logstrat/errors.hpp"

namespace logstrat {

namespace {

void check_ring(const Ideal& j, const DerivationModule& g, const char* op) {
  if (j.ring() != g.ring()) throw PreconditionError(std::string(op) + ": ideal and module live in different rings");
}

// Calls fn on each r-subset of {0..n-1} in lex order until it returns true.
bool any_subset(std::size_t n, std::size_t r, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (r > n) return false;
  std::vector<std::size_t> idx(r);
  for (std::size_t k = 0; k < r; ++k) idx[k] = k;
  for (;;) {
    if (fn(idx)) return true;
    std::size_t k = r;
    while (k > 0 && idx[k - 1] == n - r + k - 1) --k;
    if (k == 0) return false;
    ++idx[k - 1];
    for (std::size_t t = k; t < r; ++t) idx[t] = idx[t - 1] + 1;
  }
}

// Coefficient matrix with entries already reduced modulo P.
std::vector<std::vector<Polynomial>> reduced_matrix(const Ideal& p, const DerivationModule& g) {
  auto m = coefficient_matrix(g);
  for (auto& row : m)
    for (auto& e : row) e = p.normal_form(e);
  return m;
}

Polynomial minor(const std::vector<std::vector<Polynomial>>& m, const std::vector<std::size_t>& rows,
                 const std::vector<std::size_t>& cols) {
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  std::vector<std::vector<Polynomial>> sub;
  for (std::size_t r : rows) {
    std::vector<Polynomial> line;
    for (std::size_t c : cols) line.push_back(m[r][c]);
    sub.push_back(std::move(line));
  }
  budget::charge(rows.size() * rows.size());
  return determinant(std::move(sub));
}

// Some r x r minor of m lies outside P.
bool has_minor_outside(const Ideal& p, const std::vector<std::vector<Polynomial>>& m, std::size_t n, std::size_t r) {
  return any_subset(m.size(), r, [&](const std::vector<std::size_t>& rows) {
    return any_subset(n, r, [&](const std::vector<std::size_t>& cols) { return !p.contains(minor(m, rows, cols)); });
  });
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

bool vanishes_at(const Ideal& j, const Point& p) {
  const std::vector<Polynomial> gb = j.groebner_basis();
  return std::all_of(gb.begin(), gb.end(), [&](const Polynomial& g) { return g.evaluate(p) == 0; });
}

// Point of a maximal ideal whose reduced basis is x_1 - a_1, ..., x_n - a_n.
std::optional<Point> rational_point(const Ideal& m) {
  const std::size_t n = m.ring()->arity();
  const std::vector<Polynomial> gb = m.groebner_basis();
  if (gb.size() != n) return std::nullopt;
  Point p{std::vector<Rational>(n, Rational(0))};
  for (const auto& g : gb) {
    if (g.total_degree() != 1) return std::nullopt;
    const std::uint32_t sup = g.leading_monomial().support();
    if (__builtin_popcount(sup) != 1 || __builtin_popcount(g.support()) != 1) return std::nullopt;
    p.coordinates[static_cast<std::size_t>(__builtin_ctz(sup))] = -g.constant_term() / g.leading_coefficient();
  }
  return p;
}

}  // namespace

bool is_preserved(const Ideal& j, const DerivationModule& g) {
  check_ring(j, g, "is_preserved");
  if (j.is_unit() || j.is_zero()) return true;
  for (const auto& d : g.generators())
    for (const auto& h : j.generators())
      if (!j.contains(d.apply(h))) return false;
  return true;
}

Ideal preserved_closure(const Ideal& j, const DerivationModule& g) {
  check_ring(j, g, "preserved_closure");
  Ideal cur = j;
  for (;;) {
    budget::charge();
    if (cur.is_unit() || cur.is_zero()) return cur;
    std::vector<Polynomial> added;
    const std::vector<Polynomial> gb = cur.groebner_basis();
    for (const auto& d : g.generators())
      for (const auto& h : gb) {
        Polynomial r = cur.normal_form(d.apply(h));
        if (!r.is_zero()) added.push_back(std::move(r));
      }
    if (added.empty()) return cur;
    cur = cur + added;
  }
}

std::vector<std::vector<Polynomial>> coefficient_matrix(const DerivationModule& g) {
  std::vector<std::vector<Polynomial>> m;
  for (const auto& d : g.generators()) m.push_back(d.coefficients());
  return m;
}

std::size_t generic_rank(const PrimeCandidate& p, const DerivationModule& g) {
  check_ring(p.ideal, g, "generic_rank");
  const auto m = reduced_matrix(p.ideal, g);
  const std::size_t n = g.ring()->arity();
  std::size_t r = 0;
  // Once every r x r minor lies in P, so do all larger ones.
  while (r < std::min(m.size(), n) && has_minor_outside(p.ideal, m, n, r + 1)) ++r;
  return r;
}

bool is_defining(const PrimeCandidate& p, const DerivationModule& g) {
  return static_cast<int>(generic_rank(p, g)) == dimension(p.ideal);
}

Ideal degeneracy_ideal(const PrimeCandidate& p, const DerivationModule& g) {
  const std::size_t r = generic_rank(p, g);
  if (r == 0) throw PreconditionError("degeneracy_ideal: generic rank is zero");
  const auto m = reduced_matrix(p.ideal, g);
  const std::size_t n = g.ring()->arity();
  std::vector<Polynomial> minors;
  any_subset(m.size(), r, [&](const std::vector<std::size_t>& rows) {
    any_subset(n, r, [&](const std::vector<std::size_t>& cols) {
      Polynomial d = p.ideal.normal_form(minor(m, rows, cols));
      if (!d.is_zero()) minors.push_back(std::move(d));
      return false;
    });
    return false;
  });
  return preserved_closure(p.ideal + minors, g);
}

std::vector<Polynomial> first_integrals(const PrimeCandidate& p, const DerivationModule& g, unsigned degree_bound) {
  check_ring(p.ideal, g, "first_integrals");
  const Ideal& ideal = p.ideal;
  if (ideal.is_unit()) return {};
  const RingPtr& ring = ideal.ring();
  const std::size_t n = ring->arity();
  std::vector<Monomial> lms;
  for (const auto& h : ideal.groebner_basis()) lms.push_back(h.leading_monomial());

  // Unknowns: standard monomials of degree 1..bound, largest first.
  std::vector<Monomial> unknowns;
  std::vector<Monomial> layer{Monomial::one()};
  for (unsigned d = 1; d <= degree_bound; ++d) {
    std::set<std::array<std::int32_t, kMaxVariables>> seen;
    std::vector<Monomial> next;
    for (const auto& m : layer)
      for (std::size_t v = 0; v < n; ++v) {
        Monomial t = m;
        t[v] += 1;
        if (seen.insert(t.exp).second) next.push_back(t);
      }
    for (const auto& t : next)
      if (std::none_of(lms.begin(), lms.end(), [&](const Monomial& l) { return divides(l, t); }))
        unknowns.push_back(t);
    layer = std::move(next);
  }
  const Ring& r = *ring;
  std::sort(unknowns.begin(), unknowns.end(), [&r](const Monomial& a, const Monomial& b) { return r.compare(a, b) > 0; });
  const std::size_t cols = unknowns.size();
  if (cols == 0) return {};

  std::map<std::pair<std::size_t, std::array<std::int32_t, kMaxVariables>>, std::size_t> row_of;
  detail::QMatrix a;
  for (std::size_t c = 0; c < cols; ++c) {
    const Polynomial m = Polynomial::term(ring, unknowns[c], 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Polynomial w = ideal.normal_form(g.generators()[i].apply(m));
      for (const auto& t : w.terms()) {
        auto [it, fresh] = row_of.try_emplace({i, t.mono.exp}, a.size());
        if (fresh) a.emplace_back(cols, Rational(0));
        a[it->second][c] = t.coeff;
      }
    }
  }
  const auto ker = detail::kernel(std::move(a), cols);
  const auto basis = detail::row_reduce(ker, cols);
  std::vector<Polynomial> out;
  for (const auto& row : basis) {
    std::vector<Term> terms;
    for (std::size_t c = 0; c < cols; ++c)
      if (row[c] != 0) terms.push_back({unknowns[c], row[c]});
    out.push_back(Polynomial::from_terms(ring, std::move(terms)));
  }
  return out;
}

std::string to_string(NodeKind k) { return k == NodeKind::Defining ? "defining" : "family"; }

const StratNode* StratificationDAG::find(const Ideal& prime) const {
  for (const auto& node : nodes)
    if (node.prime() == prime) return &node;
  return nullptr;
}

namespace {

struct Expansion {
  RankProfile profile;
  std::optional<Ideal> degeneracy;
  std::vector<PrimeCandidate> children;
};

struct Pending {
  PrimeCandidate prime;
  std::vector<std::string> path;
};

Expansion expand(const Pending& item, const DerivationModule& g) {
  const Ideal& p = item.prime.ideal;
  if (!is_preserved(p, g))
    throw std::logic_error("stratify: prime " + p.to_string() + " is not preserved");
  Expansion e{RankProfile{item.prime, dimension(p), generic_rank(item.prime, g)}, std::nullopt, {}};
  if (static_cast<int>(e.profile.generic_rank) > e.profile.dim)
    throw std::logic_error("stratify: generic rank exceeds dimension at " + p.to_string());
  if (e.profile.generic_rank == 0) return e;
  Ideal deg = degeneracy_ideal(item.prime, g);
  if (!is_preserved(deg, g)) throw std::logic_error("stratify: degeneracy ideal not preserved");
  if (!deg.is_unit()) {
    e.children = minimal_primes(deg);
    std::vector<std::string> path = item.path;
    path.push_back(deg.to_string());
    require_certified(e.children, path);
    for (const auto& c : e.children)
      if (!c.ideal.contains(p) || c.ideal == p)
        throw std::logic_error("stratify: descendant does not strictly contain its parent");
  }
  e.degeneracy = std::move(deg);
  return e;
}

std::vector<Expansion> expand_level(const std::vector<Pending>& level, const DerivationModule& g, unsigned threads) {
  std::vector<std::optional<Expansion>> results(level.size());
  std::vector<std::exception_ptr> errors(level.size());
  auto work = [&](std::size_t k) {
    try {
      results[k] = expand(level[k], g);
    } catch (const BudgetExceeded& e) {
      errors[k] = std::make_exception_ptr(
          BudgetExceeded(std::string(e.what()) + " while expanding " + join(level[k].path, " > ")));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };
  const std::size_t workers = std::min<std::size_t>(threads, level.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < level.size(); ++k) {
      work(k);
      if (errors[k]) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < level.size();) work(k);
      });
    for (auto& t : pool) t.join();
  }
  // Report the first failure in worklist order, as a sequential run would.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Expansion> out;
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

bool ideal_less(const Ideal& a, const Ideal& b) { return compare(a, b) < 0; }

}  // namespace

StratificationDAG stratify(const Ideal& i, const DerivationModule& g, const StratifyOptions& options) {
  check_ring(i, g, "stratify");
  if (i.is_unit()) throw PreconditionError("stratify: unit ideal");
  if (!g.bracket_closed() && !is_bracket_closed(g)) throw PreconditionError("stratify: module is not closed under bracket");
  if (!is_preserved(i, g)) throw PreconditionError("stratify: ideal is not preserved by the module");
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;

  struct Entry {
    Expansion expansion;
    std::vector<std::string> child_keys;
    bool root = false;
  };
  std::map<std::string, Entry> table;
  std::set<std::string> queued;

  const std::vector<std::string> top{i.to_string()};
  std::vector<PrimeCandidate> roots;
  try {
    roots = minimal_primes(i);
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(std::string(e.what()) + " while decomposing " + top.front());
  }
  require_certified(roots, top);
  std::vector<Pending> level;
  for (const auto& r : roots) {
    std::vector<std::string> path = top;
    path.push_back(r.ideal.to_string());
    queued.insert(r.ideal.key());
    level.push_back({r, std::move(path)});
  }

  while (!level.empty()) {
    std::vector<Expansion> done = expand_level(level, g, threads);
    std::vector<Pending> next;
    for (std::size_t k = 0; k < level.size(); ++k) {
      Entry entry{std::move(done[k]), {}, level[k].path.size() == 2};
      for (const auto& c : entry.expansion.children) {
        const std::string key = c.ideal.key();
        entry.child_keys.push_back(key);
        if (queued.insert(key).second) {
          std::vector<std::string> path = level[k].path;
          path.push_back(c.ideal.to_string());
          next.push_back({c, std::move(path)});
        }
      }
      table.emplace(level[k].prime.ideal.key(), std::move(entry));
    }
    std::sort(next.begin(), next.end(), [](const Pending& a, const Pending& b) { return ideal_less(a.prime.ideal, b.prime.ideal); });
    level = std::move(next);
  }

  std::vector<std::pair<std::string, Entry*>> order;
  for (auto& [key, entry] : table) order.emplace_back(key, &entry);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    const RankProfile& pa = a.second->expansion.profile;
    const RankProfile& pb = b.second->expansion.profile;
    if (pa.dim != pb.dim) return pa.dim > pb.dim;
    return ideal_less(pa.prime.ideal, pb.prime.ideal);
  });
  std::map<std::string, std::size_t> id_of;
  for (std::size_t k = 0; k < order.size(); ++k) id_of[order[k].first] = k;

  StratificationDAG dag{i.ring(), i, g, {}, {}};
  for (std::size_t k = 0; k < order.size(); ++k) {
    Entry& e = *order[k].second;
    StratNode node{k, e.expansion.profile, NodeKind::Defining, 0, {}, true, false, std::nullopt};
    node.fiber_dim = node.profile.generic_rank;
    node.kind = static_cast<int>(node.fiber_dim) == node.profile.dim ? NodeKind::Defining : NodeKind::Family;
    node.root = e.root;
    node.degeneracy = e.expansion.degeneracy;
    for (const auto& key : e.child_keys) node.children.push_back(id_of.at(key));
    std::sort(node.children.begin(), node.children.end());
    if (node.root) dag.roots.push_back(k);
    dag.nodes.push_back(std::move(node));
  }
  mark_holonomic(dag);
  return dag;
}

void mark_holonomic(StratificationDAG& dag) {
  for (auto& node : dag.nodes) {
    node.holonomic = std::none_of(dag.nodes.begin(), dag.nodes.end(), [&](const StratNode& other) {
      return other.kind == NodeKind::Family && node.prime().contains(other.prime());
    });
  }
}

std::vector<std::size_t> deepest_nodes(const StratificationDAG& dag, const Point& p) {
  std::vector<std::size_t> on;
  for (const auto& node : dag.nodes)
    if (vanishes_at(node.prime(), p)) on.push_back(node.id);
  std::vector<std::size_t> out;
  for (std::size_t a : on) {
    const bool deeper_exists = std::any_of(on.begin(), on.end(), [&](std::size_t b) {
      return b != a && dag.nodes[b].prime().contains(dag.nodes[a].prime());
    });
    if (!deeper_exists) out.push_back(a);
  }
  return out;
}

PointQuery defining_prime_of_point(const Point& p, const StratificationDAG& dag, unsigned first_integral_degree) {
  const RingPtr& ring = dag.ring;
  if (p.size() != ring->arity()) throw PreconditionError("defining_prime_of_point: point arity mismatch");
  if (!vanishes_at(dag.input, p)) throw PreconditionError("defining_prime_of_point: point " + p.to_string() + " is not on V(I)");
  const auto deepest = deepest_nodes(dag, p);
  if (deepest.size() != 1)
    throw Unresolved("defining_prime_of_point: " + std::to_string(deepest.size()) + " deepest strata at " + p.to_string());
  const StratNode& node = dag.nodes[deepest.front()];
  if (node.kind == NodeKind::Defining) return {node.prime(), node.id, node.holonomic};

  // Every ideal above a rank-0 family prime is preserved; the fiber is the point.
  if (node.fiber_dim == 0) return {node.prime() + maximal_ideal_of_point(ring, p).ideal.generators(), node.id, false};

  const auto integrals = first_integrals(node.profile.prime, dag.module, first_integral_degree);
  if (integrals.empty())
    throw Unresolved("defining_prime_of_point: no first integrals of degree <= " + std::to_string(first_integral_degree) +
                     " for the family over " + node.prime().to_string());
  std::vector<Polynomial> level;
  for (const auto& f : integrals) level.push_back(f - Polynomial::constant(ring, f.evaluate(p)));
  const Ideal fiber = node.prime() + level;
  std::vector<PrimeCandidate> through;
  for (auto& c : minimal_primes(fiber))
    if (vanishes_at(c.ideal, p)) through.push_back(std::move(c));
  if (through.size() != 1 || !through[0].certified())
    throw Unresolved("defining_prime_of_point: first integrals do not cut out a unique certified fiber through " +
                     p.to_string());
  const PrimeCandidate& q = through[0];
  if (!is_preserved(q.ideal, dag.module) || !is_defining(q, dag.module))
    throw Unresolved("defining_prime_of_point: fiber " + q.ideal.to_string() + " is not a defining prime");
  return {q.ideal, node.id, false};
}

std::vector<Point> sample_points(const Ideal& j, std::size_t count, std::uint64_t seed) {
  if (j.is_unit()) throw PreconditionError("sample_points: unit ideal");
  const RingPtr& ring = j.ring();
  const std::size_t n = ring->arity();
  // Sampling rotates through every d-subset of variables, the independent set
  // first; fixings that leave a positive-dimensional remainder are skipped.
  const int d = dimension(j);
  const std::uint32_t independent = independent_set(j);
  std::vector<std::uint32_t> sets{independent};
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    if (__builtin_popcount(s) == d && s != independent) sets.push_back(s);
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  auto known = [&](const Point& p) { return std::find(out.begin(), out.end(), p) != out.end(); };
  const std::size_t offset = seed % 5;
  for (std::size_t attempt = 0; attempt < 64 * count + 16 && out.size() < count; ++attempt) {
    const std::uint32_t free = sets[attempt % sets.size()];
    // Curves walk 0, 1, -1, 2, -2, ... so that sparse rational points (cusps)
    // are still reached; higher dimensions draw from a widening range.
    const std::size_t step = attempt / sets.size() + offset;
    const int range = 6 + static_cast<int>(attempt / 4);
    std::uniform_int_distribution<int> value(-range, range);
    auto next_value = [&] {
      if (d != 1) return value(rng);
      const int k = static_cast<int>((step + 1) / 2);
      return step % 2 ? k : -k;
    };
    std::vector<Polynomial> fix;
    for (std::size_t v = 0; v < n; ++v)
      if (free & (1u << v))
        fix.push_back(Polynomial::variable(ring, v) - Polynomial::constant(ring, Rational(next_value())));
    const Ideal k = j + fix;
    if (k.is_unit() || dimension(k) != 0) continue;
    for (const auto& c : minimal_primes(k)) {
      if (!c.certified()) continue;
      if (auto pt = rational_point(c.ideal); pt && !known(*pt)) {
        out.push_back(*pt);
        break;
      }
    }
    if (free == 0) break;
  }
  return out;
}

FrontierReport verify_frontier(const StratificationDAG& dag, std::size_t points_per_node, std::uint64_t seed,
                               unsigned first_integral_degree) {
  FrontierReport report;
  auto& v = report.violations;
  const auto& nodes = dag.nodes;
  auto name = [&](std::size_t k) { return nodes[k].prime().to_string(); };

  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const StratNode& x = nodes[a];
    const bool defining = static_cast<int>(x.profile.generic_rank) == x.profile.dim;
    if (defining != (x.kind == NodeKind::Defining)) v.push_back("kind does not match rank at " + name(a));
    for (std::size_t c : x.children)
      if (c <= a || !nodes[c].prime().contains(x.prime()) || nodes[c].prime() == x.prime())
        v.push_back("child " + name(c) + " does not strictly contain " + name(a));
    bool maximal = true;
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      if (a == b) continue;
      const bool contains = x.prime().contains(nodes[b].prime());
      const bool contained = nodes[b].prime().contains(x.prime());
      if (contains && contained) v.push_back("duplicate node primes " + name(a) + " and " + name(b));
      if (contained) maximal = false;
      // Closure of D(b) meets D(a): D(a) must lie in the boundary of D(b).
      if (x.kind == NodeKind::Defining && nodes[b].kind == NodeKind::Defining && contains &&
          x.profile.dim >= nodes[b].profile.dim)
        v.push_back("frontier: " + name(a) + " lies in the closure of " + name(b) + " without dropping dimension");
    }
    // A maximal Family is not a maximal preserved prime: its fibers lie above it.
    if (maximal && x.kind == NodeKind::Family) {
      const auto pts = sample_points(x.prime(), 1, seed + 7919 * (a + 1));
      bool fibered = false;
      if (!pts.empty()) {
        try {
          const PointQuery q = defining_prime_of_point(pts.front(), dag, first_integral_degree);
          fibered = q.prime.contains(x.prime()) && q.prime != x.prime() &&
                    is_defining({q.prime, Certification::PrimeCertified}, dag.module);
        } catch (const Unresolved&) {
        }
      }
      if (!fibered) v.push_back("maximal family " + name(a) + " has no defining fiber");
    }
  }

  // Reachability from the roots.
  std::vector<bool> seen(nodes.size(), false);
  std::vector<std::size_t> stack = dag.roots;
  while (!stack.empty()) {
    const std::size_t k = stack.back();
    stack.pop_back();
    if (seen[k]) continue;
    seen[k] = true;
    for (std::size_t c : nodes[k].children) stack.push_back(c);
  }
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (!seen[k]) v.push_back("node " + name(k) + " is unreachable from the roots");

  // Coverage: sampled points get exactly one deepest stratum lying over their node.
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (const Point& p : sample_points(nodes[k].prime(), points_per_node, seed + k)) {
      ++report.points_checked;
      const auto deepest = deepest_nodes(dag, p);
      if (deepest.size() != 1) {
        v.push_back(std::to_string(deepest.size()) + " deepest strata at " + p.to_string());
        continue;
      }
      if (!nodes[deepest[0]].prime().contains(nodes[k].prime()))
        v.push_back("deepest stratum at " + p.to_string() + " does not specialize " + name(k));
      try {
        const PointQuery q = defining_prime_of_point(p, dag, first_integral_degree);
        if (!vanishes_at(q.prime, p) || !is_preserved(q.prime, dag.module))
          v.push_back("defining prime at " + p.to_string() + " is not a preserved prime through the point");
      } catch (const Unresolved& e) {
        v.push_back(e.what());
      }
    }
  }
  return report;
}

}  // namespace logstrat
