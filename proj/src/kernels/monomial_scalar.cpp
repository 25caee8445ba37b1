#include "logstrat/kernels/monomial_kernels.hpp"

#include <algorithm>
#include <cstdint>

namespace logstrat::kernels {
namespace {

bool mul_scalar(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) {
  bool ok = true;
  for (std::size_t i = 0; i < kLanes; ++i) {
    const std::int64_t s = std::int64_t{a[i]} + std::int64_t{b[i]};
    ok &= s <= INT32_MAX;
    out[i] = static_cast<std::int32_t>(s);
  }
  return ok;
}

void quotient_scalar(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) {
  for (std::size_t i = 0; i < kLanes; ++i) out[i] = a[i] - b[i];
}

void lcm_scalar(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) {
  for (std::size_t i = 0; i < kLanes; ++i) out[i] = std::max(a[i], b[i]);
}

void gcd_scalar(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) {
  for (std::size_t i = 0; i < kLanes; ++i) out[i] = std::min(a[i], b[i]);
}

bool divides_scalar(const std::int32_t* b, const std::int32_t* a) {
  for (std::size_t i = 0; i < kLanes; ++i)
    if (b[i] > a[i]) return false;
  return true;
}

bool coprime_scalar(const std::int32_t* a, const std::int32_t* b) {
  for (std::size_t i = 0; i < kLanes; ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

std::int64_t degree_scalar(const std::int32_t* a) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < kLanes; ++i) d += a[i];
  return d;
}

int cmp_lex_scalar(const std::int32_t* a, const std::int32_t* b) {
  for (std::size_t i = 0; i < kLanes; ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  return 0;
}

int cmp_degrevlex_scalar(const std::int32_t* a, const std::int32_t* b) {
  const std::int64_t da = degree_scalar(a);
  const std::int64_t db = degree_scalar(b);
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = kLanes; i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

std::size_t find_divisor_scalar(const std::int32_t* blocks, std::size_t count,
                                const std::int32_t* m) {
  for (std::size_t k = 0; k < count; ++k)
    if (divides_scalar(blocks + k * kLanes, m)) return k;
  return npos;
}

constexpr MonomialKernels kScalar{
    "scalar",       mul_scalar,       quotient_scalar,      lcm_scalar,
    gcd_scalar,     divides_scalar,   coprime_scalar,       degree_scalar,
    cmp_lex_scalar, cmp_degrevlex_scalar, find_divisor_scalar,
};

}  // namespace

const MonomialKernels& scalar_kernels() { return kScalar; }

}  // namespace logstrat::kernels
