#include "e8jacobi/errors.hpp"
#include "e8jacobi/kernels.hpp"

namespace e8jac {

void fold_sum_keys_scalar(const std::int32_t* base, const std::int8_t* ys,
                          std::size_t count, WeightKey* keys) {
  for (std::size_t k = 0; k < count; ++k) {
    std::int32_t v[kRank];
    for (int i = 0; i < kRank; ++i) v[i] = base[i] + ys[k * kRank + i];
    for (;;) {
      int i = 0;
      while (i < kRank && v[i] >= 0) ++i;
      if (i == kRank) break;
      const std::int32_t c = v[i];
      for (int j = 0; j < kRank; ++j) v[j] -= c * kCartan[i][j];
    }
    WeightKey key = 0;
    for (int i = 0; i < kRank; ++i) {
      if (v[i] > 255) throw ResourceError("weight label out of packing range");
      key |= static_cast<WeightKey>(v[i]) << (8 * i);
    }
    keys[k] = key;
  }
}

}  // namespace e8jac
