#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "logstrat/derivation.hpp"
#include "logstrat/primes.hpp"

namespace logstrat {

// δ(g) ∈ J for every module generator δ and ideal generator g.
bool is_preserved(const Ideal& j, const DerivationModule& g);

// Smallest preserved ideal containing J.
Ideal preserved_closure(const Ideal& j, const DerivationModule& g);

// Coefficient matrix [δ_i(x_j)], one row per module generator.
std::vector<std::vector<Polynomial>> coefficient_matrix(const DerivationModule& g);

// Largest r with an r x r minor of the coefficient matrix outside P.
std::size_t generic_rank(const PrimeCandidate& p, const DerivationModule& g);

bool is_defining(const PrimeCandidate& p, const DerivationModule& g);

// Preserved closure of P plus the r x r minors, r = generic_rank(P, g) >= 1.
Ideal degeneracy_ideal(const PrimeCandidate& p, const DerivationModule& g);

// Basis of the polynomials f of degree 1..bound, taken modulo P and constants,
// with δ(f) ∈ P for every generator. Elements are in normal form modulo P.
std::vector<Polynomial> first_integrals(const PrimeCandidate& p, const DerivationModule& g, unsigned degree_bound);

struct RankProfile {
  PrimeCandidate prime;
  int dim = 0;
  std::size_t generic_rank = 0;
};

enum class NodeKind { Defining, Family };

std::string to_string(NodeKind k);

struct StratNode {
  std::size_t id = 0;
  RankProfile profile;
  NodeKind kind = NodeKind::Defining;
  std::size_t fiber_dim = 0;
  std::vector<std::size_t> children;
  bool holonomic = true;
  bool root = false;
  // Preserved locus the children were read off (present when rank >= 1).
  std::optional<Ideal> degeneracy;

  const Ideal& prime() const { return profile.prime.ideal; }
};

struct StratifyOptions {
  // Worker threads for expanding one level of the worklist; 0 picks the
  // hardware concurrency. The result does not depend on it.
  unsigned threads = 1;
};

struct StratificationDAG {
  RingPtr ring;
  Ideal input;
  DerivationModule module;
  // Sorted by decreasing dimension, then by reduced basis; ids are positions.
  std::vector<StratNode> nodes;
  std::vector<std::size_t> roots;

  const StratNode* find(const Ideal& prime) const;
};

// Requires g bracket-closed, I proper and preserved.
StratificationDAG stratify(const Ideal& i, const DerivationModule& g, const StratifyOptions& options = {});

// A node is holonomic when no node whose prime it contains (itself included)
// is a Family node.
void mark_holonomic(StratificationDAG& dag);

// Nodes whose prime vanishes at p and is contained in no other such node.
std::vector<std::size_t> deepest_nodes(const StratificationDAG& dag, const Point& p);

struct PointQuery {
  Ideal prime;
  std::size_t node = 0;
  bool holonomic = true;
};

// Throws PreconditionError for a point off V(I), Unresolved when a positive
// dimensional family has no usable first integrals within the bound.
PointQuery defining_prime_of_point(const Point& p, const StratificationDAG& dag, unsigned first_integral_degree = 3);

// Rational points of a proper ideal: from random integer values on a maximal
// independent set, solving the zero-dimensional remainder. Deterministic in seed.
std::vector<Point> sample_points(const Ideal& j, std::size_t count, std::uint64_t seed);

struct FrontierReport {
  std::vector<std::string> violations;
  std::size_t points_checked = 0;
  bool ok() const { return violations.empty(); }
};

FrontierReport verify_frontier(const StratificationDAG& dag, std::size_t points_per_node = 4, std::uint64_t seed = 1,
                               unsigned first_integral_degree = 3);

}  // namespace logstrat
