#pragma once

// The ring of W-invariant finite exponential sums, in two bases: orbit sums
// orb(m) and monomials X^m = prod orb(w_i)^{m_i}.  The second basis makes the
// ring a polynomial ring, so products become key additions.  The transition
// table E[m] (orbit expansion of X^m) is built lazily and shared.

#include <cstdint>
#include <map>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "e8jacobi/lattice.hpp"
#include "e8jacobi/qseries.hpp"

namespace e8jac {

// Sparse integer combination, sorted by key.
using IntTerms = std::vector<std::pair<WeightKey, Integer>>;

class OrbitRing {
 public:
  static OrbitRing& instance();

  // Orbit elements of m as int8 label rows.
  const std::vector<std::int8_t>& orbit(WeightKey m);
  // orb(p) * orb(q) in the orbit basis.
  const std::vector<std::pair<WeightKey, std::int64_t>>& product(WeightKey p, WeightKey q);
  // Orbit expansion of X^m; the coefficient of orb(m) is 1, all others are lower in dominance order.
  const IntTerms& monomial(WeightKey m);

  IntTerms to_x(const IntTerms& orbit_coeffs);
  IntTerms to_orbit(const IntTerms& x_coeffs);

  std::int64_t stabilizer(WeightKey m) const;
  std::size_t table_size();
  // Memory guard: monomials of norm above this limit are refused.
  void set_max_norm(std::int64_t n);
  std::int64_t max_norm() const { return max_norm_; }

 private:
  OrbitRing();
  std::recursive_mutex mu_;
  std::array<std::int64_t, 256> stab_by_zero_pattern_{};
  std::unordered_map<WeightKey, std::vector<std::int8_t>> orbits_;
  std::map<std::pair<WeightKey, WeightKey>, std::vector<std::pair<WeightKey, std::int64_t>>> products_;
  std::unordered_map<WeightKey, IntTerms> monomials_;
  std::int64_t max_norm_ = 200;
};

// Dominance-compatible sort key: root-coordinate height, then key.
std::int64_t key_height(WeightKey m);

}  // namespace e8jac
