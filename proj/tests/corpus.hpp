#pragma once

#include <string>
#include <vector>

#include "logstrat/stratify.hpp"
#include "test_util.hpp"

namespace corpus {

using namespace logstrat;

struct Case {
  std::string name;
  Ideal ideal;
  DerivationModule module;
};

inline Derivation D(const std::vector<std::string>& coeffs, const RingPtr& r) {
  return Derivation(r, testutil::Ps(coeffs, r));
}

inline Case tangent(const std::string& name, const std::string& f, const RingPtr& r) {
  Ideal i(r, {testutil::P(f, r)});
  DerivationModule g = logarithmic_derivations(i);
  return {name, std::move(i), std::move(g)};
}

inline Case free_divisor() { return tangent("free divisor", "x*y*(x+y)*(x+y*z)", testutil::xyz()); }

inline Case planar_fields() {
  const RingPtr r = testutil::xyz();
  return {"planar fields", Ideal(r), DerivationModule(r, {Derivation::partial(r, 0), Derivation::partial(r, 1)})};
}

inline Case three_lines() { return tangent("three lines", "x*y*(x+y)", testutil::xy()); }

inline Case four_planes() { return tangent("four planes", "x*y*z*(x-y)", testutil::xyz()); }

inline Case cusp() { return tangent("cusp", "x^2 - y^3", testutil::xy()); }

inline Case normal_crossing() { return tangent("normal crossing", "x*y*z", testutil::xyz()); }

inline std::vector<Case> all() {
  return {free_divisor(), planar_fields(), three_lines(), four_planes(), cusp(), normal_crossing()};
}

}  // namespace corpus
