#pragma once

#include <vector>

#include "logstrat/polynomial.hpp"

namespace logstrat::detail {

using QMatrix = std::vector<std::vector<Rational>>;

// Basis of {x : A x = 0} for an m x cols matrix.
std::vector<std::vector<Rational>> kernel(QMatrix a, std::size_t cols);

std::size_t rank(QMatrix a);

// Nonzero rows of the reduced row echelon form.
QMatrix row_reduce(QMatrix a, std::size_t cols);

}  // namespace logstrat::detail
