#include "logstrat/kernels/monomial_kernels.hpp"

#if defined(LOGSTRAT_HAVE_AVX2)

#include <immintrin.h>

#include <cstdint>

namespace logstrat::kernels {
namespace {

struct Block {
  __m256i lo;
  __m256i hi;
};

inline Block load(const std::int32_t* p) {
  return {_mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)),
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + 8))};
}

inline void store(std::int32_t* p, const Block& b) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), b.lo);
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p + 8), b.hi);
}

// One bit per lane, lane 0 in bit 0.
inline unsigned lane_mask(__m256i lo, __m256i hi) {
  const unsigned l = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(lo)));
  const unsigned h = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(hi)));
  return l | (h << 8);
}

inline unsigned differing_lanes(const Block& a, const Block& b) {
  return ~lane_mask(_mm256_cmpeq_epi32(a.lo, b.lo), _mm256_cmpeq_epi32(a.hi, b.hi)) & 0xFFFFu;
}

inline bool divides_block(const Block& b, const Block& a) {
  const __m256i gt = _mm256_or_si256(_mm256_cmpgt_epi32(b.lo, a.lo), _mm256_cmpgt_epi32(b.hi, a.hi));
  return _mm256_testz_si256(gt, gt) != 0;
}

inline std::int64_t hsum64(const Block& a) {
  const __m256i s = _mm256_add_epi64(
      _mm256_add_epi64(_mm256_cvtepi32_epi64(_mm256_castsi256_si128(a.lo)),
                       _mm256_cvtepi32_epi64(_mm256_extracti128_si256(a.lo, 1))),
      _mm256_add_epi64(_mm256_cvtepi32_epi64(_mm256_castsi256_si128(a.hi)),
                       _mm256_cvtepi32_epi64(_mm256_extracti128_si256(a.hi, 1))));
  const __m128i t = _mm_add_epi64(_mm256_castsi256_si128(s), _mm256_extracti128_si256(s, 1));
  return _mm_cvtsi128_si64(t) + _mm_extract_epi64(t, 1);
}

bool mul_avx2(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) {
  const Block x = load(a);
  const Block y = load(b);
  const Block s{_mm256_add_epi32(x.lo, y.lo), _mm256_add_epi32(x.hi, y.hi)};
  store(out, s);
  // Inputs are non-negative, so a wrapped lane shows up as a set sign bit.
  return lane_mask(s.lo, s.hi) == 0;
}

void quotient_avx2(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) {
  const Block x = load(a);
  const Block y = load(b);
  store(out, {_mm256_sub_epi32(x.lo, y.lo), _mm256_sub_epi32(x.hi, y.hi)});
}

void lcm_avx2(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) {
  const Block x = load(a);
  const Block y = load(b);
  store(out, {_mm256_max_epi32(x.lo, y.lo), _mm256_max_epi32(x.hi, y.hi)});
}

void gcd_avx2(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) {
  const Block x = load(a);
  const Block y = load(b);
  store(out, {_mm256_min_epi32(x.lo, y.lo), _mm256_min_epi32(x.hi, y.hi)});
}

bool divides_avx2(const std::int32_t* b, const std::int32_t* a) {
  return divides_block(load(b), load(a));
}

bool coprime_avx2(const std::int32_t* a, const std::int32_t* b) {
  const Block x = load(a);
  const Block y = load(b);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i both = _mm256_or_si256(
      _mm256_cmpgt_epi32(_mm256_min_epi32(x.lo, y.lo), zero),
      _mm256_cmpgt_epi32(_mm256_min_epi32(x.hi, y.hi), zero));
  return _mm256_testz_si256(both, both) != 0;
}

std::int64_t degree_avx2(const std::int32_t* a) { return hsum64(load(a)); }

int cmp_lex_avx2(const std::int32_t* a, const std::int32_t* b) {
  const unsigned diff = differing_lanes(load(a), load(b));
  if (diff == 0) return 0;
  const int i = __builtin_ctz(diff);
  return a[i] > b[i] ? 1 : -1;
}

int cmp_degrevlex_avx2(const std::int32_t* a, const std::int32_t* b) {
  const Block x = load(a);
  const Block y = load(b);
  const std::int64_t da = hsum64(x);
  const std::int64_t db = hsum64(y);
  if (da != db) return da > db ? 1 : -1;
  const unsigned diff = differing_lanes(x, y);
  if (diff == 0) return 0;
  const int i = 31 - __builtin_clz(diff);
  return a[i] < b[i] ? 1 : -1;
}

std::size_t find_divisor_avx2(const std::int32_t* blocks, std::size_t count,
                              const std::int32_t* m) {
  const Block target = load(m);
  for (std::size_t k = 0; k < count; ++k)
    if (divides_block(load(blocks + k * kLanes), target)) return k;
  return npos;
}

constexpr MonomialKernels kAvx2{
    "avx2",       mul_avx2,       quotient_avx2,      lcm_avx2,
    gcd_avx2,     divides_avx2,   coprime_avx2,       degree_avx2,
    cmp_lex_avx2, cmp_degrevlex_avx2, find_divisor_avx2,
};

}  // namespace

const MonomialKernels* avx2_kernels_unchecked() { return &kAvx2; }

}  // namespace logstrat::kernels

#endif
