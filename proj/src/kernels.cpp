#include "e8jacobi/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace e8jac {

namespace {

KernelIsa detect() {
  const char* env = std::getenv("E8JAC_KERNEL");
  if (env != nullptr && std::string_view(env) == "scalar") return KernelIsa::Scalar;
  return cpu_has_avx2() ? KernelIsa::Avx2 : KernelIsa::Scalar;
}

FoldSumKeysFn pick(KernelIsa isa) {
#if defined(E8JAC_HAVE_AVX2)
  if (isa == KernelIsa::Avx2) return fold_sum_keys_avx2;
#endif
  return fold_sum_keys_scalar;
}

KernelIsa g_isa = detect();
FoldSumKeysFn g_fold = pick(g_isa);

}  // namespace

bool cpu_has_avx2() {
#if defined(E8JAC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

KernelIsa active_isa() { return g_isa; }

void set_active_isa(KernelIsa isa) {
  if (isa == KernelIsa::Avx2 && !cpu_has_avx2())
    throw std::runtime_error("AVX2 is not available on this CPU");
  g_isa = isa;
  g_fold = pick(isa);
}

const char* isa_name(KernelIsa isa) { return isa == KernelIsa::Avx2 ? "avx2" : "scalar"; }

void fold_sum_keys(const std::int32_t* base, const std::int8_t* ys, std::size_t count,
                   WeightKey* keys) {
  g_fold(base, ys, count, keys);
}

}  // namespace e8jac
