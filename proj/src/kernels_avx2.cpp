#include <immintrin.h>

#include "e8jacobi/errors.hpp"
#include "e8jacobi/kernels.hpp"

namespace e8jac {

namespace {

struct CartanRows {
  alignas(32) std::int32_t row[kRank][kRank];
  CartanRows() {
    for (int i = 0; i < kRank; ++i)
      for (int j = 0; j < kRank; ++j) row[i][j] = kCartan[i][j];
  }
};

const CartanRows kRows;

}  // namespace

void fold_sum_keys_avx2(const std::int32_t* base, const std::int8_t* ys,
                        std::size_t count, WeightKey* keys) {
  const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(base));
  const __m256i zero = _mm256_setzero_si256();
  const __m256i cap = _mm256_set1_epi32(255);
  for (std::size_t k = 0; k < count; ++k) {
    const __m128i y8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(ys + k * kRank));
    __m256i v = _mm256_add_epi32(b, _mm256_cvtepi8_epi32(y8));
    for (;;) {
      const int neg = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(zero, v)));
      if (neg == 0) break;
      const int i = __builtin_ctz(static_cast<unsigned>(neg));
      const __m256i c = _mm256_permutevar8x32_epi32(v, _mm256_set1_epi32(i));
      const __m256i row = _mm256_load_si256(reinterpret_cast<const __m256i*>(kRows.row[i]));
      v = _mm256_sub_epi32(v, _mm256_mullo_epi32(c, row));
    }
    if (_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(v, cap))) != 0)
      throw ResourceError("weight label out of packing range");
    // Lanes are in [0,255]; two saturating packs leave v0..v3 in the low dword
    // of the first 128-bit half and v4..v7 in the low dword of the second.
    const __m256i p16 = _mm256_packus_epi32(v, v);
    const __m256i p8 = _mm256_packus_epi16(p16, p16);
    const auto lo = static_cast<std::uint32_t>(_mm256_extract_epi32(p8, 0));
    const auto hi = static_cast<std::uint32_t>(_mm256_extract_epi32(p8, 4));
    keys[k] = static_cast<WeightKey>(lo) | (static_cast<WeightKey>(hi) << 32);
  }
}

}  // namespace e8jac
