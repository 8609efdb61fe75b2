#include <random>

#include "doctest.h"
#include "e8jacobi/qseries.hpp"

using namespace e8jac;

TEST_CASE("Eisenstein series") {
  CHECK(eisenstein(4, 3) == QSeries({1, 240, 2160}));
  CHECK(eisenstein(2, 1) == QSeries({1}));
  CHECK(eisenstein(6, 2) == QSeries({1, -504}));
  CHECK_THROWS(eisenstein(8, 2));
}

TEST_CASE("discriminant: Eisenstein formula against the product") {
  const auto d = discriminant(9);
  CHECK(d[0] == 0);
  CHECK(d[1] == 1);
  CHECK(d == discriminant_product(9));
  const auto e4 = eisenstein(4, 9), e6 = eisenstein(6, 9);
  const auto diff = e4 * e4 * e4 - e6 * e6;
  for (int n = 0; n < 9; ++n) CHECK(diff[n].get_den() == 1);
  for (int n = 0; n < 9; ++n) CHECK(mpz_divisible_ui_p(diff[n].get_num_mpz_t(), 1728));
}

TEST_CASE("ring arithmetic") {
  CHECK(QSeries({1, 1, 0}) * QSeries({1, -1, 0}) == QSeries({1, 0, -1}));
  std::mt19937 rng(3);
  auto rnd = [&] {
    std::vector<Rational> c(6);
    for (auto& x : c) x = frac(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
    c[0] = 1 + rng() % 3;
    return QSeries(c);
  };
  for (int k = 0; k < 10; ++k) {
    auto f = rnd(), g = rnd(), h = rnd();
    CHECK(series_div(f * g, g) == f);
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
  }
  CHECK((QSeries({1, 2, 3}) + QSeries({1, 1})).truncation() == 2);
  CHECK_THROWS(series_div(QSeries({1, 1}), QSeries({0, 1})));
  CHECK(series_div(QSeries({0, 1, 1}), QSeries({0, 1, 0}), 1) == QSeries({1, 1}));
}

TEST_CASE("Euler product powers") {
  const auto p24 = euler_power(24, 8);
  CHECK(p24.shift_up(1).truncated(8) == discriminant(8));
  CHECK(euler_power(-24, 8) * p24 == QSeries::constant(1, 8));
}
