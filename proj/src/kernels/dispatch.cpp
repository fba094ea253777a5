#include "infoacq/kernels/dispatch.hpp"

namespace infoacq::kernels {

#if defined(INFOACQ_HAVE_AVX2)
const KernelTable* avx2_table();  // defined in kernels_avx2.cpp
#endif

bool avx2_supported() {
#if defined(INFOACQ_HAVE_AVX2)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* avx2_kernels_or_null() {
#if defined(INFOACQ_HAVE_AVX2)
  if (avx2_supported()) return avx2_table();
#endif
  return nullptr;
}

namespace {
bool g_force_scalar = false;
}

void force_scalar_kernels(bool force) { g_force_scalar = force; }

const KernelTable& active_kernels() {
  if (!g_force_scalar) {
    if (const KernelTable* t = avx2_kernels_or_null()) return *t;
  }
  return scalar_kernels();
}

}  // namespace infoacq::kernels
