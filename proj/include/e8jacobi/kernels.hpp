#pragma once

// Batched Weyl folding.  Each call takes a base weight b and a block of orbit
// elements y_k (int8 labels, 8 per row) and writes the packed dominant key of
// b + y_k.  The scalar routine is the reference; the AVX2 routine holds one
// weight in a single 256-bit register and must agree with it bit for bit.

#include <cstddef>
#include <cstdint>

#include "e8jacobi/lattice.hpp"

namespace e8jac {

enum class KernelIsa { Scalar, Avx2 };

using FoldSumKeysFn = void (*)(const std::int32_t* base, const std::int8_t* ys,
                               std::size_t count, WeightKey* keys);

void fold_sum_keys_scalar(const std::int32_t* base, const std::int8_t* ys,
                          std::size_t count, WeightKey* keys);
#if defined(E8JAC_HAVE_AVX2)
void fold_sum_keys_avx2(const std::int32_t* base, const std::int8_t* ys,
                        std::size_t count, WeightKey* keys);
#endif

bool cpu_has_avx2();
// Chosen once from CPU features; E8JAC_KERNEL=scalar forces the reference path.
KernelIsa active_isa();
void set_active_isa(KernelIsa isa);  // throws if the CPU lacks the ISA
const char* isa_name(KernelIsa isa);

void fold_sum_keys(const std::int32_t* base, const std::int8_t* ys,
                   std::size_t count, WeightKey* keys);

}  // namespace e8jac
