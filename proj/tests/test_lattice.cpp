#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "e8jacobi/lattice.hpp"
#include "e8jacobi/qseries.hpp"

using namespace e8jac;

namespace {

DominantWeight dw(std::initializer_list<int> labels) {
  Labels l{};
  int i = 0;
  for (int x : labels) l[i++] = x;
  return DominantWeight::from_labels(l);
}

}  // namespace

TEST_CASE("coordinate model") {
  CHECK_NOTHROW(self_test_coordinates());
  for (int i = 1; i <= 8; ++i) {
    auto a = LatticeVector::simple_root(i);
    CHECK(inner_product(a, a) == 2);
    CHECK(labels_of(vector_of(DominantWeight::fundamental(i).m)) == DominantWeight::fundamental(i).m);
  }
  CHECK(norm(DominantWeight::fundamental(8)) == 1);
  CHECK(norm(DominantWeight::fundamental(1)) == 2);
}

TEST_CASE("shell sizes match the E4 theta coefficients") {
  CHECK(shell(0).size() == 1);
  for (int n = 1; n <= 4; ++n)
    CHECK(Integer(static_cast<long>(shell(n).size())) == 240 * divisor_sigma(3, n));
}

TEST_CASE("folding a shell reproduces orbit sizes") {
  for (int n = 1; n <= 3; ++n) {
    std::map<DominantWeight, std::int64_t> count;
    for (const auto& v : shell(n)) ++count[to_dominant(v)];
    auto doms = dominant_by_norm(n);
    CHECK(count.size() == doms.size());
    for (const auto& m : doms) CHECK(count[m] == orbit_size(m));
  }
}

TEST_CASE("orbit sizes sum to shell sizes") {
  for (int n = 1; n <= 8; ++n) {
    Integer total = 0;
    for (const auto& m : dominant_by_norm(n)) total += Integer(static_cast<long>(orbit_size(m)));
    CHECK(total == 240 * divisor_sigma(3, n));
  }
}

TEST_CASE("orbit sizes") {
  CHECK(orbit_size(DominantWeight{}) == 1);
  CHECK(orbit_size(DominantWeight::fundamental(8)) == 240);
  CHECK(orbit_size(DominantWeight::fundamental(1)) == 2160);
  CHECK(orbit_size(dw({0, 0, 0, 0, 0, 0, 1, 1})) == 13440);
  CHECK(orbit_size(dw({1, 0, 0, 0, 0, 0, 0, 2})) == 30240);
  CHECK(orbit_size(dw({0, 0, 0, 0, 0, 1, 0, 1})) == 181440);
  CHECK(orbit_size(dw({1, 0, 0, 0, 0, 1, 0, 0})) == 604800);
}

TEST_CASE("orbit enumeration agrees with the parabolic formula") {
  for (auto m : {dw({0, 0, 0, 0, 0, 0, 0, 1}), dw({1, 0, 0, 0, 0, 0, 0, 0}),
                 dw({0, 0, 0, 0, 0, 0, 1, 0}), dw({0, 0, 0, 0, 0, 0, 1, 1}),
                 dw({1, 0, 0, 0, 0, 0, 0, 2}), dw({0, 1, 0, 0, 0, 0, 0, 0})}) {
    auto orbit = orbit_labels(m);
    CHECK(static_cast<std::int64_t>(orbit.size()) == orbit_size(m));
    std::set<Labels> distinct(orbit.begin(), orbit.end());
    CHECK(distinct.size() == orbit.size());
    for (std::size_t i = 0; i < orbit.size(); i += 97) CHECK(to_dominant(orbit[i]) == m);
  }
}

TEST_CASE("dominant weights by T-grade and norm") {
  CHECK(dominant_by_T(0).size() == 1);
  CHECK(dominant_by_T(2).size() == 3);
  CHECK(dominant_by_T(13).size() == 364);
  CHECK(dominant_up_to_norm(54).size() == 268);
  CHECK(dominant_by_norm(16).size() == 4);
  CHECK(dominant_by_norm(23).size() == 4);
  for (const auto& m : dominant_by_norm(12)) CHECK(norm(m) == 12);
}

TEST_CASE("max pairing") {
  std::mt19937 rng(7);
  const auto roots4 = shell(2);
  const auto& v4 = roots4[rng() % roots4.size()];
  const int expected[8] = {4, 5, 7, 10, 8, 6, 4, 2};
  for (int i = 1; i <= 8; ++i) CHECK(max_pairing(DominantWeight::fundamental(i), v4) == expected[i - 1]);
  CHECK(max_pairing(DominantWeight{}, v4) == 0);

  // brute-force maximum over the orbit
  for (auto m : {DominantWeight::fundamental(8), DominantWeight::fundamental(1), dw({0, 0, 0, 0, 0, 0, 1, 1})}) {
    const auto v = vector_of(Labels{1, -2, 0, 3, 0, -1, 2, 0});
    std::int64_t best = INT64_MIN;
    for (const auto& y : orbit_labels(m)) best = std::max(best, inner_product(vector_of(y), v));
    CHECK(max_pairing(m, v) == best);
  }

  auto doms = dominant_up_to_norm(12);
  for (int k = 0; k < 20; ++k) {
    const auto& x = doms[rng() % doms.size()];
    const auto& y = doms[rng() % doms.size()];
    CHECK(max_pairing(x + y, v4) == max_pairing(x, v4) + max_pairing(y, v4));
  }
}

TEST_CASE("key packing round-trips") {
  for (const auto& m : dominant_up_to_norm(20)) CHECK(unpack(pack(m)) == m);
  auto a = dw({1, 0, 2, 0, 0, 3, 0, 1}), b = dw({0, 4, 0, 0, 1, 0, 0, 2});
  CHECK(unpack(pack(a) + pack(b)) == a + b);
}
