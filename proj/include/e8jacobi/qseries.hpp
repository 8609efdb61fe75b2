#pragma once

// Truncated power series in q with exact rational coefficients.

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace e8jac {

using Rational = mpq_class;
using Integer = mpz_class;

// Reduced fraction a/b.
Rational frac(long a, long b);
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);  // "a" or "a/b"

class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(int truncation);  // zero series known to O(q^truncation)
  explicit QSeries(std::vector<Rational> coeffs);
  QSeries(std::initializer_list<Rational> coeffs) : c_(coeffs) {}
  static QSeries constant(const Rational& c, int truncation);

  int truncation() const { return static_cast<int>(c_.size()); }
  const Rational& operator[](int n) const;
  Rational& coeff(int n);
  const std::vector<Rational>& coeffs() const { return c_; }
  QSeries truncated(int n) const;
  bool is_zero() const;
  // Index of the first nonzero coefficient, or truncation() if none.
  int valuation() const;

  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator-() const;
  QSeries operator*(const QSeries& o) const;
  QSeries operator*(const Rational& s) const;
  bool operator==(const QSeries& o) const = default;

  // f(q) -> f(q^a), keeping the truncation.
  QSeries dilate(int a) const;
  // Divide by q^k; the first k coefficients must vanish.
  QSeries shift_down(int k) const;
  QSeries shift_up(int k) const;

  std::string to_string() const;

 private:
  std::vector<Rational> c_;
};

QSeries series_add(const QSeries& f, const QSeries& g);
QSeries series_mul(const QSeries& f, const QSeries& g);
QSeries series_scale(const QSeries& f, const Rational& s);
// Exact division; g must have a unit constant term unless valuation > 0 is
// declared, in which case both are divided by q^valuation first.
QSeries series_div(const QSeries& f, const QSeries& g, int valuation = 0);
QSeries series_pow(const QSeries& f, int e);

Integer divisor_sigma(int k, long n);
QSeries eisenstein(int k, int truncation);
QSeries discriminant(int truncation);          // (E4^3 - E6^2)/1728
QSeries discriminant_product(int truncation);  // q * prod (1-q^n)^24
// prod_{n>=1} (1-q^n)^e for integer e (negative allowed).
QSeries euler_power(int e, int truncation);

}  // namespace e8jac
