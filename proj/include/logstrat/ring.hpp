#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logstrat/monomial.hpp"

namespace logstrat {

enum class MonomialOrder { Lex, DegRevLex };

std::string_view to_string(MonomialOrder order);
std::optional<MonomialOrder> parse_order(std::string_view name);

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Q[x_1, ..., x_n] with a monomial order; x_1 has the highest precedence.
class Ring {
 public:
  static RingPtr make(std::vector<std::string> variables,
                      MonomialOrder order = MonomialOrder::DegRevLex);

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t arity() const { return variables_.size(); }
  MonomialOrder order() const { return order_; }
  const std::string& name(std::size_t i) const { return variables_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  // Three-way comparison in this ring's order: > 0 when a is larger.
  int compare(const Monomial& a, const Monomial& b) const {
    const auto& k = kernels::active_kernels();
    return order_ == MonomialOrder::Lex ? k.cmp_lex(a.data(), b.data())
                                        : k.cmp_degrevlex(a.data(), b.data());
  }

  // Same variables, different order.
  RingPtr with_order(MonomialOrder order) const;

  bool same_as(const Ring& other) const {
    return order_ == other.order_ && variables_ == other.variables_;
  }

  std::string to_string() const;

 private:
  Ring(std::vector<std::string> variables, MonomialOrder order)
      : variables_(std::move(variables)), order_(order) {}

  std::vector<std::string> variables_;
  MonomialOrder order_;
};

}  // namespace logstrat
