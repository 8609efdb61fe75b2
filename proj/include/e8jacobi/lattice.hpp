#pragma once

// E8 root lattice combinatorics.
//
// Vectors are stored in simple-root coordinates (Bourbaki labelling: the
// branch node is 4, attached to 2, 3 and 5; node 8 ends the long arm).  The
// Gram matrix of that basis is the Cartan matrix.  Weight-basis coordinates
// ("labels") are (v, alpha_i); since E8 is unimodular the two coordinate
// systems are related by an integral unimodular change of basis.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace e8jac {

inline constexpr int kRank = 8;
inline constexpr std::int64_t kWeylOrder = 696729600;

using Labels = std::array<std::int32_t, kRank>;

// Cartan matrix of E8 (Gram matrix of the simple roots).
extern const std::array<std::array<int, kRank>, kRank> kCartan;
// Gram matrix of the fundamental weights, the inverse of kCartan.
extern const std::array<std::array<int, kRank>, kRank> kWeightGram;
// T-grading coefficients (w_i, w_8).
extern const std::array<int, kRank> kTGrade;

struct LatticeVector {
  std::array<std::int64_t, kRank> root{};

  static LatticeVector simple_root(int node);  // node in 1..8
  LatticeVector operator+(const LatticeVector& o) const;
  LatticeVector operator-(const LatticeVector& o) const;
  LatticeVector operator-() const;
  LatticeVector operator*(std::int64_t s) const;
  auto operator<=>(const LatticeVector&) const = default;
};

// Dominant representative of a Weyl orbit, in fundamental-weight coordinates.
struct DominantWeight {
  std::array<std::int32_t, kRank> m{};

  static DominantWeight fundamental(int node);  // node in 1..8
  static DominantWeight from_labels(const Labels& labels);  // checks dominance
  bool is_zero() const;
  DominantWeight operator+(const DominantWeight& o) const;
  DominantWeight operator*(std::int32_t s) const;
  auto operator<=>(const DominantWeight&) const = default;
};

std::int64_t inner_product(const LatticeVector& u, const LatticeVector& v);
std::int64_t inner_product(const DominantWeight& u, const DominantWeight& v);
std::int64_t inner_product(const Labels& u, const Labels& v);

// Half the squared length: a vector of norm n has (v,v) = 2n.
std::int64_t norm(const DominantWeight& m);
std::int64_t norm(const Labels& labels);
std::int64_t t_grade(const DominantWeight& m);
std::int64_t height(const DominantWeight& m);  // sum of root coordinates

Labels labels_of(const LatticeVector& v);
Labels labels_of(const DominantWeight& m);
LatticeVector vector_of(const Labels& labels);
LatticeVector vector_of(const DominantWeight& m);

// Simple reflection s_i (node 1..8) acting on weight coordinates.
void reflect(Labels& labels, int node);

DominantWeight to_dominant(const LatticeVector& v);
DominantWeight to_dominant(const Labels& labels);

// Order of the stabilizer W_m: the parabolic subgroup on the nodes with m_i = 0.
std::int64_t stabilizer_order(const DominantWeight& m);
std::int64_t orbit_size(const DominantWeight& m);

// All orbit elements, generated downward from the dominant representative.
std::vector<Labels> orbit_labels(const DominantWeight& m,
                                 std::size_t budget = 5'000'000);

// Vectors with (v,v) = 2n, by exact backtracking over an LDL^T factorization.
std::vector<LatticeVector> shell(std::int64_t n, std::size_t budget = 20'000'000);

std::vector<DominantWeight> dominant_by_norm(std::int64_t n);
std::vector<DominantWeight> dominant_up_to_norm(std::int64_t n);
std::vector<DominantWeight> dominant_by_T(std::int64_t t);

// max{(y, v) : y in W m}, equal to (m, dominant(v)).
std::int64_t max_pairing(const DominantWeight& m, const LatticeVector& v);

// Canonical order: by norm, then lexicographically on labels.
bool canonical_less(const DominantWeight& a, const DominantWeight& b);

// Throws ConsistencyError when the coordinate model is not the expected one.
void self_test_coordinates();

// Dominant weights pack into a 64-bit key (one byte per label).
using WeightKey = std::uint64_t;
// "[00000011]"; labels above 9 are comma separated.
std::string label_string(const DominantWeight& m);

WeightKey pack(const DominantWeight& m);
DominantWeight unpack(WeightKey key);

}  // namespace e8jac

template <>
struct std::hash<e8jac::DominantWeight> {
  std::size_t operator()(const e8jac::DominantWeight& m) const noexcept {
    return std::hash<std::uint64_t>{}(e8jac::pack(m));
  }
};
