#pragma once

#include <cstddef>
#include <cstdint>

// Exponent-vector kernels used by the Groebner inner loops.
//
// Every monomial is a fixed block of kLanes int32 exponents (zero padded past
// the ring arity), so a block is exactly two 256-bit vectors. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2 variant. The active
// table is chosen once at startup from CPUID; LOGSTRAT_FORCE_SCALAR=1 in the
// environment pins the scalar table.

namespace logstrat::kernels {

inline constexpr std::size_t kLanes = 16;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct MonomialKernels {
  const char* name;

  // out = a + b; returns false if any lane overflowed.
  bool (*mul)(const std::int32_t* a, const std::int32_t* b, std::int32_t* out);
  // out = a - b; caller guarantees b divides a.
  void (*quotient)(const std::int32_t* a, const std::int32_t* b, std::int32_t* out);
  void (*lcm)(const std::int32_t* a, const std::int32_t* b, std::int32_t* out);
  void (*gcd)(const std::int32_t* a, const std::int32_t* b, std::int32_t* out);
  // true iff b divides a.
  bool (*divides)(const std::int32_t* b, const std::int32_t* a);
  bool (*coprime)(const std::int32_t* a, const std::int32_t* b);
  std::int64_t (*degree)(const std::int32_t* a);
  int (*cmp_lex)(const std::int32_t* a, const std::int32_t* b);
  int (*cmp_degrevlex)(const std::int32_t* a, const std::int32_t* b);
  // First index i < count such that block i of `blocks` divides `m`, else npos.
  std::size_t (*find_divisor)(const std::int32_t* blocks, std::size_t count,
                              const std::int32_t* m);
};

const MonomialKernels& scalar_kernels();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const MonomialKernels* avx2_kernels();

const MonomialKernels& active_kernels();

}  // namespace logstrat::kernels
