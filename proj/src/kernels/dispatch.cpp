#include <cstdlib>
#include <cstring>

#include "logstrat/kernels/monomial_kernels.hpp"

namespace logstrat::kernels {

#if defined(LOGSTRAT_HAVE_AVX2)
const MonomialKernels* avx2_kernels_unchecked();
#endif

const MonomialKernels* avx2_kernels() {
#if defined(LOGSTRAT_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

namespace {

const MonomialKernels& select() {
  const char* force = std::getenv("LOGSTRAT_FORCE_SCALAR");
  if (force != nullptr && std::strcmp(force, "0") != 0) return scalar_kernels();
  if (const MonomialKernels* k = avx2_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const MonomialKernels& active_kernels() {
  static const MonomialKernels& k = select();
  return k;
}

}  // namespace logstrat::kernels
