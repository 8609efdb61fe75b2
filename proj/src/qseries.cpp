#include "e8jacobi/qseries.hpp"

#include <algorithm>
#include <stdexcept>

#include "e8jacobi/errors.hpp"

namespace e8jac {

Rational frac(long a, long b) {
  Rational r(a, 1);
  r /= b;
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw ParseError("malformed rational '" + text + "'", 0);
  if (r.get_den() == 0) throw ParseError("zero denominator", 0);
  r.canonicalize();
  return r;
}

QSeries::QSeries(int truncation) : c_(std::max(truncation, 0)) {}

QSeries::QSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}

QSeries QSeries::constant(const Rational& c, int truncation) {
  QSeries s(truncation);
  if (truncation > 0) s.c_[0] = c;
  return s;
}

const Rational& QSeries::operator[](int n) const {
  if (n < 0 || n >= truncation())
    throw TruncationError("coefficient q^" + std::to_string(n) + " beyond truncation", n + 1);
  return c_[n];
}

Rational& QSeries::coeff(int n) {
  if (n < 0 || n >= truncation())
    throw TruncationError("coefficient q^" + std::to_string(n) + " beyond truncation", n + 1);
  return c_[n];
}

QSeries QSeries::truncated(int n) const {
  if (n > truncation()) throw TruncationError("cannot extend truncation", n);
  return QSeries(std::vector<Rational>(c_.begin(), c_.begin() + n));
}

bool QSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
}

int QSeries::valuation() const {
  for (int i = 0; i < truncation(); ++i)
    if (c_[i] != 0) return i;
  return truncation();
}

QSeries QSeries::operator+(const QSeries& o) const {
  QSeries r(std::min(truncation(), o.truncation()));
  for (int i = 0; i < r.truncation(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

QSeries QSeries::operator-(const QSeries& o) const {
  QSeries r(std::min(truncation(), o.truncation()));
  for (int i = 0; i < r.truncation(); ++i) r.c_[i] = c_[i] - o.c_[i];
  return r;
}

QSeries QSeries::operator-() const {
  QSeries r(truncation());
  for (int i = 0; i < r.truncation(); ++i) r.c_[i] = -c_[i];
  return r;
}

QSeries QSeries::operator*(const QSeries& o) const {
  QSeries r(std::min(truncation(), o.truncation()));
  const int n = r.truncation();
  for (int i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; i + j < n; ++j)
      if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
  }
  return r;
}

QSeries QSeries::operator*(const Rational& s) const {
  QSeries r(truncation());
  for (int i = 0; i < r.truncation(); ++i) r.c_[i] = c_[i] * s;
  return r;
}

QSeries QSeries::dilate(int a) const {
  if (a <= 0) throw std::invalid_argument("dilation factor must be positive");
  QSeries r(truncation());
  for (int i = 0; i * a < truncation(); ++i) r.c_[i * a] = c_[i];
  return r;
}

QSeries QSeries::shift_down(int k) const {
  for (int i = 0; i < std::min(k, truncation()); ++i)
    if (c_[i] != 0)
      throw ConsistencyError("series not divisible by q^" + std::to_string(k) +
                             ": coefficient q^" + std::to_string(i) + " = " + c_[i].get_str());
  QSeries r(std::max(truncation() - k, 0));
  for (int i = 0; i < r.truncation(); ++i) r.c_[i] = c_[i + k];
  return r;
}

QSeries QSeries::shift_up(int k) const {
  QSeries r(truncation() + k);
  for (int i = 0; i < truncation(); ++i) r.c_[i + k] = c_[i];
  return r;
}

std::string QSeries::to_string() const {
  std::string out;
  for (int i = 0; i < truncation(); ++i) {
    if (c_[i] == 0) continue;
    std::string c = c_[i].get_str();
    bool neg = c[0] == '-';
    if (neg) c.erase(0, 1);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (i == 0)
      out += c;
    else {
      if (c != "1") out += c + "*";
      out += i == 1 ? "q" : "q^" + std::to_string(i);
    }
  }
  if (out.empty()) out = "0";
  return out + " + O(q^" + std::to_string(truncation()) + ")";
}

QSeries series_add(const QSeries& f, const QSeries& g) { return f + g; }
QSeries series_mul(const QSeries& f, const QSeries& g) { return f * g; }
QSeries series_scale(const QSeries& f, const Rational& s) { return f * s; }

QSeries series_div(const QSeries& f, const QSeries& g, int valuation) {
  const QSeries a = valuation > 0 ? f.shift_down(valuation) : f;
  const QSeries b = valuation > 0 ? g.shift_down(valuation) : g;
  const int n = std::min(a.truncation(), b.truncation());
  if (n == 0) return QSeries(0);
  if (b[0] == 0) throw std::domain_error("series division by a non-unit");
  std::vector<Rational> r(n);
  const Rational inv = 1 / b[0];
  for (int i = 0; i < n; ++i) {
    Rational s = a[i];
    for (int j = 1; j <= i; ++j)
      if (b[j] != 0) s -= b[j] * r[i - j];
    r[i] = s * inv;
  }
  return QSeries(std::move(r));
}

QSeries series_pow(const QSeries& f, int e) {
  if (e < 0) return series_pow(series_div(QSeries::constant(1, f.truncation()), f), -e);
  QSeries r = QSeries::constant(1, f.truncation()), b = f;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Integer divisor_sigma(int k, long n) {
  Integer s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), d, k);
    s += p;
    if (d * d != n) {
      mpz_ui_pow_ui(p.get_mpz_t(), n / d, k);
      s += p;
    }
  }
  return s;
}

QSeries eisenstein(int k, int truncation) {
  long c;
  switch (k) {
    case 2: c = -24; break;
    case 4: c = 240; break;
    case 6: c = -504; break;
    default: throw std::invalid_argument("unsupported Eisenstein weight " + std::to_string(k));
  }
  QSeries e = QSeries::constant(1, truncation);
  for (int n = 1; n < truncation; ++n) e.coeff(n) = Rational(divisor_sigma(k - 1, n) * c);
  return e;
}

QSeries discriminant(int truncation) {
  const QSeries e4 = eisenstein(4, truncation), e6 = eisenstein(6, truncation);
  return (e4 * e4 * e4 - e6 * e6) * frac(1, 1728);
}

QSeries euler_power(int e, int truncation) {
  // log-derivative recursion: P = prod(1-q^n)^e satisfies n p_n = -e sum sigma_1(j) p_{n-j}.
  QSeries p = QSeries::constant(1, truncation);
  for (int n = 1; n < truncation; ++n) {
    Rational s = 0;
    for (int j = 1; j <= n; ++j) s += Rational(divisor_sigma(1, j)) * p[n - j];
    p.coeff(n) = s * frac(-e, n);
  }
  return p;
}

QSeries discriminant_product(int truncation) {
  if (truncation <= 0) return QSeries(0);
  // Direct expansion of the product, independent of the recursion above.
  std::vector<Integer> c(truncation, 0);
  c[0] = 1;
  for (int n = 1; n < truncation; ++n)
    for (int r = 0; r < 24; ++r)
      for (int i = truncation - 1; i >= n; --i) c[i] -= c[i - n];
  QSeries d(truncation);
  for (int i = 1; i < truncation; ++i) d.coeff(i) = Rational(c[i - 1]);
  return d;
}

}  // namespace e8jac
