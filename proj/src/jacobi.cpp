#include "e8jacobi/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "e8jacobi/errors.hpp"

namespace e8jac {

namespace {

void add_to(OrbitPoly& p, WeightKey k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Integer lcm_den(const std::vector<OrbitPoly>& terms) {
  Integer l = 1;
  for (const auto& p : terms)
    for (const auto& [k, c] : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

int mobius(int n) {
  int r = 1;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      r = -r;
    }
  if (n > 1) r = -r;
  return r;
}

}  // namespace

// ---------------------------------------------------------------- expansions

JacobiExpansion JacobiExpansion::zero(int weight, int index, int truncation) {
  JacobiExpansion e;
  e.weight = weight;
  e.index = index;
  e.terms.resize(std::max(truncation, 0));
  return e;
}

JacobiExpansion JacobiExpansion::one(int truncation) {
  JacobiExpansion e = zero(0, 0, truncation);
  e.holomorphic = true;
  if (truncation > 0) e.terms[0][0] = 1;
  return e;
}

Rational JacobiExpansion::coeff(int n, const DominantWeight& m) const {
  if (n < 0 || n >= truncation())
    throw TruncationError("q^" + std::to_string(n) + " beyond truncation", n + 1);
  auto it = terms[n].find(pack(m));
  return it == terms[n].end() ? Rational(0) : it->second;
}

JacobiExpansion JacobiExpansion::truncated(int n) const {
  if (n > truncation()) throw TruncationError("cannot extend truncation", n);
  JacobiExpansion e = *this;
  e.terms.resize(n);
  return e;
}

bool JacobiExpansion::is_zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const OrbitPoly& p) { return p.empty(); });
}

bool JacobiExpansion::operator==(const JacobiExpansion& o) const {
  return weight == o.weight && index == o.index && terms == o.terms;
}

JacobiExpansion JacobiExpansion::operator+(const JacobiExpansion& o) const {
  if (weight != o.weight || index != o.index) throw std::invalid_argument("adding forms of different bidegree");
  JacobiExpansion r = zero(weight, index, std::min(truncation(), o.truncation()));
  r.holomorphic = holomorphic && o.holomorphic;
  for (int n = 0; n < r.truncation(); ++n) {
    r.terms[n] = terms[n];
    for (const auto& [k, c] : o.terms[n]) add_to(r.terms[n], k, c);
  }
  return r;
}

JacobiExpansion JacobiExpansion::operator-(const JacobiExpansion& o) const { return *this + o * Rational(-1); }

JacobiExpansion JacobiExpansion::operator*(const Rational& s) const {
  JacobiExpansion r = *this;
  for (auto& p : r.terms) {
    if (s == 0) p.clear();
    for (auto& [k, c] : p) c *= s;
  }
  return r;
}

// ---------------------------------------------------------------- X basis

void XSeries::normalize() {
  Integer g = den;
  for (const auto& lv : levels)
    for (const auto& [k, c] : lv) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) break;
    }
  if (den < 0) g = -g;
  if (g != 1) {
    for (auto& lv : levels)
      for (auto& [k, c] : lv) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
  }
  for (auto& lv : levels) std::erase_if(lv, [](const auto& t) { return t.second == 0; });
}

bool XSeries::is_zero() const {
  return std::all_of(levels.begin(), levels.end(), [](const IntTerms& l) { return l.empty(); });
}

bool XSeries::operator==(const XSeries& o) const {
  XSeries a = *this, b = o;
  a.normalize();
  b.normalize();
  return a.weight == b.weight && a.index == b.index && a.den == b.den && a.levels == b.levels;
}

Rational XSeries::coeff(int n, WeightKey monomial) const {
  if (n < 0 || n >= truncation()) throw TruncationError("q^" + std::to_string(n) + " beyond truncation", n + 1);
  for (const auto& [k, c] : levels[n])
    if (k == monomial) {
      Rational r(c, den);
      r.canonicalize();
      return r;
    }
  return 0;
}

XSeries to_x(const JacobiExpansion& phi) {
  auto& ring = OrbitRing::instance();
  XSeries x;
  x.weight = phi.weight;
  x.index = phi.index;
  x.den = lcm_den(phi.terms);
  for (const auto& p : phi.terms) {
    IntTerms t;
    for (const auto& [k, c] : p) {
      Integer v = x.den / c.get_den() * c.get_num();
      t.emplace_back(k, std::move(v));
    }
    x.levels.push_back(ring.to_x(t));
  }
  x.normalize();
  return x;
}

JacobiExpansion from_x(const XSeries& x, bool holomorphic) {
  auto& ring = OrbitRing::instance();
  JacobiExpansion e = JacobiExpansion::zero(x.weight, x.index, x.truncation());
  e.holomorphic = holomorphic;
  for (int n = 0; n < x.truncation(); ++n)
    for (const auto& [k, c] : ring.to_orbit(x.levels[n])) {
      Rational r(c, x.den);
      r.canonicalize();
      e.terms[n].emplace(k, std::move(r));
    }
  return e;
}

namespace {

IntTerms merge_scaled(const IntTerms& a, const Integer& sa, const IntTerms& b, const Integer& sb) {
  IntTerms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.emplace_back(a[i].first, a[i].second * sa);
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, b[j].second * sb);
      ++j;
    } else {
      Integer v = a[i].second * sa;
      mpz_addmul(v.get_mpz_t(), b[j].second.get_mpz_t(), sb.get_mpz_t());
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

XSeries x_add(const XSeries& a, const XSeries& b) {
  if (a.weight != b.weight || a.index != b.index) throw std::invalid_argument("adding forms of different bidegree");
  XSeries r;
  r.weight = a.weight;
  r.index = a.index;
  mpz_lcm(r.den.get_mpz_t(), a.den.get_mpz_t(), b.den.get_mpz_t());
  const Integer sa = r.den / a.den, sb = r.den / b.den;
  const int n = std::min(a.truncation(), b.truncation());
  r.levels.resize(n);
  for (int i = 0; i < n; ++i) r.levels[i] = merge_scaled(a.levels[i], sa, b.levels[i], sb);
  r.normalize();
  return r;
}

XSeries x_scale(const XSeries& a, const Rational& s) {
  XSeries r = a;
  for (auto& lv : r.levels)
    for (auto& [k, c] : lv) c *= s.get_num();
  r.den *= s.get_den();
  r.normalize();
  return r;
}

XSeries x_truncated(const XSeries& a, int n) {
  if (n > a.truncation()) throw TruncationError("cannot extend truncation", n);
  XSeries r = a;
  r.levels.resize(n);
  return r;
}

XSeries x_mul(const XSeries& a, const XSeries& b) {
  XSeries r;
  r.weight = a.weight + b.weight;
  r.index = a.index + b.index;
  r.den = a.den * b.den;
  const int n = std::min(a.truncation(), b.truncation());
  r.levels.resize(n);
  std::unordered_map<WeightKey, Integer> acc;
  for (int lv = 0; lv < n; ++lv) {
    acc.clear();
    for (int i = 0; i <= lv; ++i)
      for (const auto& [ka, ca] : a.levels[i])
        for (const auto& [kb, cb] : b.levels[lv - i]) {
          Integer& slot = acc[ka + kb];
          mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        }
    auto& out = r.levels[lv];
    for (auto& [k, c] : acc)
      if (c != 0) out.emplace_back(k, std::move(c));
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  r.normalize();
  return r;
}

XSeries x_mul_series(const XSeries& a, const QSeries& f, int weight_shift) {
  XSeries r;
  r.weight = a.weight + weight_shift;
  r.index = a.index;
  Integer fd = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(fd.get_mpz_t(), fd.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> fi;
  for (const auto& c : f.coeffs()) fi.push_back(fd / c.get_den() * c.get_num());
  r.den = a.den * fd;
  const int n = std::min(a.truncation(), f.truncation());
  r.levels.resize(n);
  std::map<WeightKey, Integer> acc;
  for (int lv = 0; lv < n; ++lv) {
    acc.clear();
    for (int i = 0; i <= lv; ++i) {
      if (fi[lv - i] == 0) continue;
      for (const auto& [k, c] : a.levels[i]) {
        Integer& slot = acc[k];
        mpz_addmul(slot.get_mpz_t(), c.get_mpz_t(), fi[lv - i].get_mpz_t());
      }
    }
    for (auto& [k, c] : acc)
      if (c != 0) r.levels[lv].emplace_back(k, std::move(c));
  }
  r.normalize();
  return r;
}

XSeries x_div_delta(const XSeries& a, int power) {
  if (power < 0) throw std::invalid_argument("negative Delta power");
  for (int n = 0; n < std::min(power, a.truncation()); ++n)
    if (!a.levels[n].empty()) {
      const auto& [k, c] = a.levels[n].front();
      Rational r(c, a.den);
      r.canonicalize();
      throw ConsistencyError("not divisible by Delta^" + std::to_string(power) + ": q^" +
                             std::to_string(n) + " has X" + label_string(unpack(k)) + " coefficient " +
                             r.get_str());
    }
  XSeries s = a;
  s.levels.erase(s.levels.begin(), s.levels.begin() + std::min(power, a.truncation()));
  s.weight -= 12 * power;
  return x_mul_series(s, euler_power(-24 * power, s.truncation()), 0);
}

XSeries x_div_e4(const XSeries& a, int power) {
  const QSeries inv = series_pow(eisenstein(4, a.truncation()), -power);
  return x_mul_series(a, inv, -4 * power);
}

// ---------------------------------------------------------------- constructions

JacobiExpansion theta_e8(int truncation) {
  JacobiExpansion e = JacobiExpansion::zero(4, 1, truncation);
  e.holomorphic = true;
  for (int n = 0; n < truncation; ++n)
    for (const auto& m : dominant_by_norm(n)) e.terms[n][pack(m)] = 1;
  return e;
}

QSeries eval_zero(const JacobiExpansion& phi) {
  QSeries s(phi.truncation());
  for (int n = 0; n < phi.truncation(); ++n) {
    Rational v = 0;
    for (const auto& [k, c] : phi.terms[n]) v += c * Rational(static_cast<long>(orbit_size(unpack(k))));
    s.coeff(n) = v;
  }
  return s;
}

JacobiExpansion scale_z(const JacobiExpansion& phi, int a) {
  if (a <= 0) throw std::invalid_argument("scale factor must be positive");
  JacobiExpansion r = JacobiExpansion::zero(phi.weight, phi.index * a * a, phi.truncation());
  r.holomorphic = phi.holomorphic;
  for (int n = 0; n < phi.truncation(); ++n)
    for (const auto& [k, c] : phi.terms[n]) r.terms[n][pack(unpack(k) * a)] = c;
  return r;
}

JacobiExpansion hecke_v(const JacobiExpansion& phi, int m) {
  if (m <= 0) throw std::invalid_argument("Hecke index must be positive");
  if (phi.index < 1 || phi.index > 2) throw std::invalid_argument("hecke_v supports input index 1 or 2");
  const int out_n = phi.truncation() == 0 ? 0 : (phi.truncation() - 1) / m + 1;
  JacobiExpansion r = JacobiExpansion::zero(phi.weight, phi.index * m, out_n);
  r.holomorphic = phi.holomorphic;
  for (int n = 0; n < out_n; ++n)
    for (int a = 1; a <= m; ++a) {
      if (m % a != 0 || n % a != 0) continue;
      Integer ak;
      mpz_ui_pow_ui(ak.get_mpz_t(), a, phi.weight - 1);
      const Rational w(ak);
      for (const auto& [k, c] : phi.terms[n * m / (a * a)]) add_to(r.terms[n], pack(unpack(k) * a), w * c);
    }
  return r;
}

JacobiExpansion hecke_theta(int t, int truncation) {
  if (t < 1) throw std::invalid_argument("index must be positive");
  const JacobiExpansion x = hecke_v(theta_e8((truncation - 1) * t + 1), t);
  return x * (1 / Rational(divisor_sigma(3, t)));
}

int level_trace_classes(int t) {
  int count = 0;
  for (int a = 1; a <= t; ++a) {
    if (t % a) continue;
    const int d = t / a;
    for (int b = 0; b < d; ++b)
      if (std::gcd(std::gcd(a, b), d) == 1) ++count;
  }
  return count;
}

JacobiExpansion level_trace(int t, int truncation) {
  if (t < 2 || t > 6) throw std::invalid_argument("level_trace supports 2 <= t <= 6");
  JacobiExpansion out = JacobiExpansion::zero(6, t, truncation);
  out.holomorphic = true;
  const QSeries e2 = eisenstein(2, truncation * t + 1);
  for (int a = 1; a <= t; ++a) {
    if (t % a) continue;
    const int d = t / a;
    const int g = std::gcd(a, d);
    // Sum over B of e(B s / D) restricted to gcd(A, B, D) = 1.
    auto bsum = [&](long s) {
      long total = 0;
      for (int e = 1; e <= g; ++e)
        if (g % e == 0 && s % (d / e) == 0) total += mobius(e) * (d / e);
      return total;
    };
    const long smax = (static_cast<long>(truncation) * d - 1) / a;  // A s / D < truncation
    std::vector<std::vector<DominantWeight>> by_norm(smax + 1);
    for (long s = 0; s <= smax; ++s) by_norm[s] = dominant_by_norm(s);
    const Rational dk = 1 / Rational(Integer(d) * d * d * d);
    const Rational inv = 1 / Rational(t - 1);
    // (t/D^2) E2((A tau + B)/D) theta((A tau + B)/D, A z)
    for (long nl = 0; nl <= smax; ++nl)
      for (long k = 0; nl + k <= smax; ++k) {
        const long s = nl + k;
        const long bs = bsum(s);
        if (bs == 0 || e2[static_cast<int>(k)] == 0) continue;
        if ((a * s) % d != 0) throw ConsistencyError("fractional q-power survives the coset sum");
        const int p = static_cast<int>(a * s / d);
        const Rational c = dk * inv * frac(t, d * d) * e2[static_cast<int>(k)] * Rational(bs);
        for (const auto& m : by_norm[nl]) add_to(out.terms[p], pack(m * a), c);
      }
    // - E2(tau) theta((A tau + B)/D, A z)
    for (long nl = 0; nl <= smax; ++nl) {
      const long bs = bsum(nl);
      if (bs == 0) continue;
      if ((a * nl) % d != 0) throw ConsistencyError("fractional q-power survives the coset sum");
      const int p = static_cast<int>(a * nl / d);
      for (int j = 0; p + j < truncation; ++j) {
        if (e2[j] == 0) continue;
        const Rational c = -dk * inv * e2[j] * Rational(bs);
        for (const auto& m : by_norm[nl]) add_to(out.terms[p + j], pack(m * a), c);
      }
    }
  }
  if (truncation == 0) return out;
  const Rational c0 = out.coeff(0, DominantWeight{});
  if (c0 == 0) throw ConsistencyError("level trace has vanishing constant term");
  return out * (1 / c0);
}

// ---------------------------------------------------------------- products

JacobiExpansion multiply(const JacobiExpansion& a, const JacobiExpansion& b) {
  JacobiExpansion r = from_x(x_mul(to_x(a), to_x(b)));
  r.holomorphic = a.holomorphic && b.holomorphic;
  return r;
}

JacobiExpansion multiply_direct(const JacobiExpansion& a, const JacobiExpansion& b) {
  const int n = std::min(a.truncation(), b.truncation());
  JacobiExpansion r = JacobiExpansion::zero(a.weight + b.weight, a.index + b.index, n);
  r.holomorphic = a.holomorphic && b.holomorphic;
  auto max_norm = [](const OrbitPoly& p) {
    std::int64_t m = -1;
    for (const auto& [k, c] : p) m = std::max(m, norm(unpack(k)));
    return m;
  };
  for (int lv = 0; lv < n; ++lv)
    for (int i = 0; i <= lv; ++i) {
      const auto& pa = a.terms[i];
      const auto& pb = b.terms[lv - i];
      if (pa.empty() || pb.empty()) continue;
      // Expand the factor with the smaller total orbit size.
      std::int64_t sa = 0, sb = 0;
      for (const auto& [k, c] : pa) sa += orbit_size(unpack(k));
      for (const auto& [k, c] : pb) sb += orbit_size(unpack(k));
      const auto& expanded = sa <= sb ? pa : pb;
      const auto& lookup = sa <= sb ? pb : pa;
      const double bound = std::sqrt(static_cast<double>(max_norm(pa))) + std::sqrt(static_cast<double>(max_norm(pb)));
      const auto targets = dominant_up_to_norm(static_cast<std::int64_t>(bound * bound + 1e-9));
      std::vector<std::pair<Rational, std::vector<Labels>>> orbits;
      for (const auto& [k, c] : expanded) orbits.emplace_back(c, orbit_labels(unpack(k)));
      for (const auto& m : targets) {
        Rational total = 0;
        for (const auto& [c1, elems] : orbits)
          for (const auto& l1 : elems) {
            Labels diff;
            for (int j = 0; j < kRank; ++j) diff[j] = m.m[j] - l1[j];
            auto it = lookup.find(pack(to_dominant(diff)));
            if (it != lookup.end()) total += c1 * it->second;
          }
        add_to(r.terms[lv], pack(m), total);
      }
    }
  return r;
}

JacobiExpansion mul_series(const JacobiExpansion& phi, const QSeries& f, int weight_shift) {
  const int n = std::min(phi.truncation(), f.truncation());
  JacobiExpansion r = JacobiExpansion::zero(phi.weight + weight_shift, phi.index, n);
  for (int lv = 0; lv < n; ++lv)
    for (int i = 0; i <= lv; ++i) {
      if (f[lv - i] == 0) continue;
      for (const auto& [k, c] : phi.terms[i]) add_to(r.terms[lv], k, c * f[lv - i]);
    }
  return r;
}

JacobiExpansion div_delta(const JacobiExpansion& phi, int power) {
  for (int n = 0; n < std::min(power, phi.truncation()); ++n)
    if (!phi.terms[n].empty()) {
      const auto& [k, c] = *phi.terms[n].begin();
      throw ConsistencyError("not divisible by Delta^" + std::to_string(power) + ": q^" +
                             std::to_string(n) + " orbit " + label_string(unpack(k)) +
                             " has coefficient " + c.get_str());
    }
  JacobiExpansion s = phi;
  s.terms.erase(s.terms.begin(), s.terms.begin() + std::min(power, phi.truncation()));
  s.weight -= 12 * power;
  return mul_series(s, euler_power(-24 * power, s.truncation()), 0);
}

JacobiExpansion div_e4(const JacobiExpansion& phi) {
  const QSeries inv = series_div(QSeries::constant(1, phi.truncation()), eisenstein(4, phi.truncation()));
  return mul_series(phi, inv, -4);
}

// ---------------------------------------------------------------- checks

namespace {

std::optional<SupportViolation> scan_support(const JacobiExpansion& phi, bool singular) {
  for (int n = 0; n < phi.truncation(); ++n) {
    std::optional<SupportViolation> best;
    for (const auto& [k, c] : phi.terms[n]) {
      const DominantWeight m = unpack(k);
      const std::int64_t nm = norm(m), bound = std::int64_t{n} * phi.index;
      const bool bad = singular ? nm != bound : nm > bound;
      if (bad && (!best || canonical_less(m, best->m))) best = SupportViolation{n, m, c};
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

std::optional<SupportViolation> check_support(const JacobiExpansion& phi) { return scan_support(phi, false); }

std::optional<SupportViolation> check_singular_support(const JacobiExpansion& phi) {
  return scan_support(phi, true);
}

std::optional<PeriodicityViolation> check_quasi_periodicity(const JacobiExpansion& phi, int shell_norm) {
  const int t = phi.index;
  if (t == 0) return std::nullopt;
  struct Shift {
    LatticeVector x;
    Labels cx;  // labels of x
    std::int64_t norm;
  };
  std::vector<Shift> shifts;
  for (int s = 1; s <= shell_norm; ++s)
    for (const auto& x : shell(s)) shifts.push_back({x, labels_of(x), s});
  for (int n = 0; n < phi.truncation(); ++n)
    for (const auto& [k, c] : phi.terms[n]) {
      const DominantWeight m = unpack(k);
      for (const auto& [x, cx, xn] : shifts) {
        std::int64_t mx = 0;
        for (int i = 0; i < kRank; ++i) mx += m.m[i] * x.root[i];
        const std::int64_t n2 = n + mx + std::int64_t{t} * xn;
        if (n2 < 0 || n2 >= phi.truncation()) continue;
        Labels l2;
        for (int i = 0; i < kRank; ++i) l2[i] = m.m[i] + t * cx[i];
        const DominantWeight m2 = to_dominant(l2);
        if (phi.coeff(static_cast<int>(n2), m2) != c)
          return PeriodicityViolation{n, m, static_cast<int>(n2), m2};
      }
    }
  return std::nullopt;
}

}  // namespace e8jac
