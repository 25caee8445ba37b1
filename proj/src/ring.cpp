#include "logstrat/ring.hpp"

#include <algorithm>
#include <set>

#include "logstrat/errors.hpp"

namespace logstrat {

std::string_view to_string(MonomialOrder order) {
  return order == MonomialOrder::Lex ? "lex" : "degrevlex";
}

std::optional<MonomialOrder> parse_order(std::string_view name) {
  if (name == "lex") return MonomialOrder::Lex;
  if (name == "degrevlex") return MonomialOrder::DegRevLex;
  return std::nullopt;
}

RingPtr Ring::make(std::vector<std::string> variables, MonomialOrder order) {
  if (variables.size() > kMaxVariables)
    throw PreconditionError("rings are limited to " + std::to_string(kMaxVariables) +
                            " variables");
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (v.empty()) throw PreconditionError("empty variable name");
    if (!seen.insert(v).second) throw PreconditionError("duplicate variable name '" + v + "'");
  }
  return RingPtr(new Ring(std::move(variables), order));
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  const auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

RingPtr Ring::with_order(MonomialOrder order) const { return make(variables_, order); }

std::string Ring::to_string() const {
  std::string s = "Q[";
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (i) s += ",";
    s += variables_[i];
  }
  s += "]";
  return s;
}

}  // namespace logstrat
