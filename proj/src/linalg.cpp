#include "linalg.hpp"

#include "logstrat/budget.hpp"

namespace logstrat::detail {

namespace {

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(QMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Rational inv = Rational(1) / a[row][c];
    for (std::size_t k = c; k < cols; ++k) a[row][k] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      budget::charge(cols - c);
      const Rational f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> kernel(QMatrix a, std::size_t cols) {
  const std::vector<std::size_t> pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a[r][free];
    out.push_back(std::move(x));
  }
  return out;
}

std::size_t rank(QMatrix a) {
  if (a.empty()) return 0;
  const std::size_t cols = a.front().size();
  return rref(a, cols).size();
}

QMatrix row_reduce(QMatrix a, std::size_t cols) {
  const std::size_t r = rref(a, cols).size();
  a.resize(r);
  return a;
}

}  // namespace logstrat::detail
