#include "e8jacobi/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "e8jacobi/errors.hpp"

namespace e8jac {

// ---------------------------------------------------------------- counting

std::vector<std::int64_t> rank_r(int t_max) {
  std::vector<std::int64_t> r(t_max + 1, 0);
  r[0] = 1;
  // Multiply by 1/(1 - x^d) once per factor.
  for (int d : {1, 2, 2, 3, 3, 4, 4, 5, 6})
    for (int i = d; i <= t_max; ++i) r[i] += r[i - d];
  return r;
}

std::int64_t epsilon_t(int t, std::int64_t a) { return (a + t - 1) / t; }

std::int64_t delta_t(int t) {
  std::int64_t sum = 0;
  for (const auto& m : dominant_by_T(t))
    if (norm(m) > 0) sum += epsilon_t(t, norm(m));
  return sum;
}

int n_cap(int t) {
  const int t0 = t / 6;
  switch (t % 6) {
    case 0:
    case 1:
      return 5 * t0;
    case 2:
      return 5 * t0 + 1;
    case 3:
      return 5 * t0 + 2;
    default:
      return 5 * t0 + 3;
  }
}

int t1_of(int t) { return t / 5; }

int m_cap(int t) {
  std::int64_t best = 0;
  for (const auto& m : dominant_by_T(t)) best = std::max(best, norm(m));
  return static_cast<int>(epsilon_t(t, best));
}

std::int64_t orbit_count_norm(int t) { return static_cast<std::int64_t>(dominant_by_norm(t).size()); }

std::array<std::int64_t, 8> lemma62_pairings() {
  // Norm-2 vectors form a single orbit, that of w1.
  const LatticeVector v4 = vector_of(DominantWeight::fundamental(1));
  std::array<std::int64_t, 8> out{};
  for (int i = 0; i < 8; ++i) out[i] = max_pairing(DominantWeight::fundamental(i + 1), v4);
  return out;
}

// ---------------------------------------------------------------- columns

std::string column_label(const Column& c) { return std::to_string(c.j) + ":" + monomial_string(c.e); }

std::vector<Column> ansatz_columns(int w, int t, int t1) {
  std::vector<Column> out;
  for (int j = 0; j <= t1; ++j) {
    const int s = t1 - j;
    for (const auto& e : monomials(w - 12 * s, t - 5 * s, j == t1, true)) out.push_back({j, e});
  }
  return out;
}

Workspace::Workspace(int order) : order_(order), gens_(sakai_generators(order)) {}

Expander& Workspace::expander(int truncation) {
  std::lock_guard lock(mu_);
  require(truncation, "expansion");
  auto& slot = expanders_[truncation];
  if (!slot) slot = std::make_unique<Expander>(gens_, truncation);
  return *slot;
}

void Workspace::require(int levels, const std::string& what) const {
  if (levels > order_)
    throw TruncationError(what + " needs generator expansions to q^" + std::to_string(levels - 1) +
                              "; current order reaches q^" + std::to_string(order_ - 1),
                          levels);
}

const XSeries& Workspace::phi_power(int s, int truncation) {
  std::lock_guard lock(mu_);
  auto key = std::make_pair(truncation, s);
  auto it = phi_powers_.find(key);
  if (it != phi_powers_.end()) return it->second;
  XSeries p = s == 1 ? x_div_e4(expander(truncation).expand_x(poly_p165()))
                     : x_mul(phi_power(1, truncation), phi_power(s - 1, truncation));
  p.normalize();
  return phi_powers_.emplace(key, std::move(p)).first->second;
}

XSeries Workspace::column_x(const Column& c, int t1, int truncation) {
  std::lock_guard lock(mu_);
  const int s = t1 - c.j;
  XSeries m = expander(truncation).monomial(c.e);
  return s == 0 ? m : x_mul(m, phi_power(s, truncation));
}

namespace {

// Rows indexed by (level, key) for the given levels of each column.
RationalMatrix x_rows(const std::vector<XSeries>& cols, int from, int to) {
  std::map<std::pair<int, WeightKey>, std::size_t> index;
  for (const auto& c : cols)
    for (int n = from; n < to && n < c.truncation(); ++n)
      for (const auto& term : c.levels[n]) index.emplace(std::make_pair(n, term.first), 0);
  std::size_t r = 0;
  for (auto& [k, v] : index) v = r++;
  RationalMatrix m(index.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto& c = cols[j];
    for (int n = from; n < to && n < c.truncation(); ++n)
      for (const auto& [key, v] : c.levels[n]) {
        Rational q(v, c.den);
        q.canonicalize();
        m.at(index.at({n, key}), j) = q;
      }
  }
  return m;
}

XSeries combine(Workspace& ws, const std::vector<Column>& cols, int t1, const std::vector<Integer>& v, int trunc,
                int weight, int index) {
  XSeries acc;
  acc.weight = weight;
  acc.index = index;
  acc.levels.resize(trunc);
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (sgn(v[i]) != 0) acc = x_add(acc, x_scale(ws.column_x(cols[i], t1, trunc), Rational(v[i])));
  return acc;
}

// Exponent bookkeeping for multiplying numerators by E4 or E6.
std::vector<std::pair<Column, Rational>> times_eisenstein(const Column& c, Gen g, int t1) {
  std::vector<std::pair<Column, Rational>> out;
  if (g == kE6 || c.j == t1) {
    Column d = c;
    ++d.e[g];
    out.emplace_back(d, 1);
    return out;
  }
  // E4 P_j phi^s = P_j P165 phi^(s-1).
  static const GeneratorPolynomial p165 = poly_p165();
  for (const auto& [m, coef] : p165.terms()) {
    Column d{c.j + 1, c.e};
    for (int i = 0; i < kNumGens; ++i) d.e[i] += m[i];
    out.emplace_back(d, coef);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- weak forms

WeakSpace weak_basis(Workspace& ws, int k, int t, std::optional<int> n_override) {
  WeakSpace s;
  s.weight = k;
  s.index = t;
  s.delta_power = n_override.value_or(n_cap(t));
  s.t1 = t1_of(t);
  if (k % 2 != 0) return s;
  s.columns = ansatz_columns(k + 12 * s.delta_power, t, s.t1);
  if (s.columns.empty()) return s;
  ws.require(std::max(s.delta_power, 1), "weak basis of weight " + std::to_string(k) + " index " + std::to_string(t));
  if (s.delta_power == 0) {
    for (std::size_t i = 0; i < s.columns.size(); ++i) {
      std::vector<Integer> v(s.columns.size());
      v[i] = 1;
      s.kernel.push_back(std::move(v));
    }
    return s;
  }
  std::vector<XSeries> cols;
  for (const auto& c : s.columns) cols.push_back(ws.column_x(c, s.t1, s.delta_power));
  RationalMatrix m = x_rows(cols, 0, s.delta_power);
  std::vector<std::string> labels;
  for (const auto& c : s.columns) labels.push_back(column_label(c));
  m.set_col_labels(std::move(labels));
  s.kernel = kernel_basis(m);
  return s;
}

std::size_t weak_dim(Workspace& ws, int k, int t) { return weak_basis(ws, k, t).dim(); }

std::vector<GeneratorPolynomial> certificate(const WeakSpace& s, const std::vector<Integer>& v) {
  std::vector<GeneratorPolynomial> p(s.t1 + 1);
  for (std::size_t i = 0; i < s.columns.size(); ++i)
    if (sgn(v[i]) != 0) p[s.columns[i].j] = p[s.columns[i].j] + GeneratorPolynomial::monomial(s.columns[i].e, Rational(v[i]));
  return p;
}

std::optional<std::vector<Rational>> coordinates(const WeakSpace& s, const std::vector<GeneratorPolynomial>& p) {
  std::map<Column, std::size_t> where;
  for (std::size_t i = 0; i < s.columns.size(); ++i) where[s.columns[i]] = i;
  std::vector<Rational> v(s.columns.size());
  for (std::size_t j = 0; j < p.size(); ++j)
    for (const auto& [e, c] : p[j].terms()) {
      auto it = where.find(Column{static_cast<int>(j), e});
      if (it == where.end()) return std::nullopt;
      v[it->second] += c;
    }
  return v;
}

bool contains(const WeakSpace& s, const std::vector<GeneratorPolynomial>& p) {
  auto v = coordinates(s, p);
  if (!v) return false;
  if (std::all_of(v->begin(), v->end(), [](const Rational& x) { return sgn(x) == 0; })) return true;
  RationalMatrix m;
  for (const auto& k : s.kernel) m.add_row(std::vector<Rational>(k.begin(), k.end()));
  const std::size_t r = m.rows() == 0 ? 0 : rank(m);
  m.add_row(*v);
  return rank(m) == r;
}

GeneratorPolynomial delta_polynomial() {
  const auto e4 = GeneratorPolynomial::generator(kE4), e6 = GeneratorPolynomial::generator(kE6);
  return (e4.pow(3) - e6.pow(2)) * frac(1, 1728);
}

JacobiExpansion weak_form(Workspace& ws, const WeakSpace& s, const std::vector<Integer>& v, int order) {
  const int trunc = s.delta_power + order;
  ws.require(trunc, "weak form expansion");
  XSeries num = combine(ws, s.columns, s.t1, v, trunc, s.weight + 12 * s.delta_power, s.index);
  return from_x(x_div_delta(num, s.delta_power));
}

JacobiExpansion form_from_certificate(Workspace& ws, const std::vector<GeneratorPolynomial>& p, int k, int t, int n,
                                      int order) {
  const int t1 = static_cast<int>(p.size()) - 1;
  const int trunc = n + order;
  ws.require(trunc, "certificate expansion");
  GeneratorPolynomial total;
  const auto e4 = GeneratorPolynomial::generator(kE4);
  for (int j = 0; j <= t1; ++j)
    if (!p[j].is_zero()) total = total + p[j] * e4.pow(j) * poly_p165().pow(t1 - j);
  XSeries num = ws.expander(trunc).expand_x(total);
  if (total.is_zero()) {
    num.weight = k + 12 * n + 4 * t1;
    num.index = t;
  }
  XSeries f = x_div_e4(x_div_delta(num, n), t1);
  f.weight = k;
  return from_x(f);
}

int min_weight(Workspace& ws, int t) {
  std::map<int, std::size_t> dims;
  auto dim = [&](int k) {
    auto it = dims.find(k);
    if (it == dims.end()) it = dims.emplace(k, weak_dim(ws, k, t)).first;
    return it->second;
  };
  if (dim(4) == 0 && dim(2) == 0) {
    for (int k = 6; k <= 16; k += 2)
      if (dim(k) > 0) return k;
    throw ConsistencyError("no weak form of index " + std::to_string(t) + " up to weight 16");
  }
  int lowest = dim(4) > 0 ? 4 : 2;
  for (int k = lowest - 2; k >= -5 * t - 2; k -= 2) {
    if (dim(k) > 0) {
      lowest = k;
    } else if (dim(k - 2) == 0) {
      return lowest;
    }
  }
  return lowest;
}

std::int64_t ModuleDescription::total() const {
  std::int64_t s = 0;
  for (const auto& [k, n] : d) s += n;
  return s;
}

ModuleDescription module_generators(Workspace& ws, int t, int max_weight) {
  ModuleDescription md;
  md.index = t;
  md.max_weight = max_weight;
  md.min_weight = min_weight(ws, t);
  std::map<int, WeakSpace> spaces;
  for (int k = md.min_weight; k <= max_weight; k += 2) {
    WeakSpace s = weak_basis(ws, k, t);
    md.weak_dims[k] = s.dim();
    if (s.dim() == 0) {
      spaces.emplace(k, std::move(s));
      continue;
    }
    std::map<Column, std::size_t> where;
    for (std::size_t i = 0; i < s.columns.size(); ++i) where[s.columns[i]] = i;
    RationalMatrix span;
    std::vector<Rational> row(s.columns.size());
    for (auto [shift, g] : {std::pair{4, kE4}, std::pair{6, kE6}}) {
      auto it = spaces.find(k - shift);
      if (it == spaces.end()) continue;
      const WeakSpace& lower = it->second;
      for (const auto& v : lower.kernel) {
        std::fill(row.begin(), row.end(), Rational(0));
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (sgn(v[i]) == 0) continue;
          for (const auto& [c, coef] : times_eisenstein(lower.columns[i], g, s.t1))
            row[where.at(c)] += coef * Rational(v[i]);
        }
        span.add_row(row);
      }
    }
    std::size_t r = span.rows() == 0 ? 0 : rank(span);
    const std::size_t image = r;
    for (const auto& v : s.kernel) {
      if (r == s.dim()) break;
      for (std::size_t i = 0; i < v.size(); ++i) row[i] = Rational(v[i]);
      RationalMatrix trial = span;
      trial.add_row(row);
      const std::size_t r2 = rank(trial);
      if (r2 > r) {
        span = std::move(trial);
        r = r2;
        md.generators.push_back({k, v});
      }
    }
    if (s.dim() > image) md.d[k] = static_cast<int>(s.dim() - image);
    spaces.emplace(k, std::move(s));
  }
  return md;
}

Laurent gen_series(const std::map<int, int>& p, int to) {
  Laurent out;
  if (p.empty()) return out;
  const int lo = p.begin()->first;
  for (int k = lo; k <= to; ++k) out[k] = 0;
  for (const auto& [k, d] : p)
    for (int a = 0; k + 4 * a <= to; ++a)
      for (int b = 0; k + 4 * a + 6 * b <= to; ++b) out[k + 4 * a + 6 * b] += d;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::string laurent_string(const std::map<int, int>& p) {
  std::string s;
  for (const auto& [k, d] : p) {
    if (d == 0) continue;
    if (!s.empty()) s += " + ";
    const bool unit = k != 0 && d == 1;
    if (!unit) s += std::to_string(d);
    if (k != 0) s += std::string(unit ? "" : "*") + "x^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- holomorphic forms

std::size_t holo_dim_direct(Workspace& ws, int k, int t) {
  const WeakSpace s = weak_basis(ws, k, t);
  if (s.dim() == 0) return 0;
  const int m = m_cap(t);
  if (m == 0) return s.dim();
  std::map<std::pair<int, WeightKey>, std::size_t> index;
  std::vector<JacobiExpansion> forms;
  for (const auto& v : s.kernel) {
    forms.push_back(weak_form(ws, s, v, m));
    for (int n = 0; n < m; ++n)
      for (const auto& [key, c] : forms.back().terms[n])
        if (norm(unpack(key)) > static_cast<std::int64_t>(n) * t) index.emplace(std::make_pair(n, key), 0);
  }
  std::size_t r = 0;
  for (auto& [key, v] : index) v = r++;
  RationalMatrix mat(index.size(), forms.size());
  for (std::size_t j = 0; j < forms.size(); ++j)
    for (int n = 0; n < m; ++n)
      for (const auto& [key, c] : forms[j].terms[n])
        if (auto it = index.find({n, key}); it != index.end()) mat.at(it->second, j) = c;
  return s.dim() - (mat.rows() == 0 ? 0 : rank(mat));
}

std::int64_t holo_dim(Workspace& ws, int k, int t) {
  if (k % 2 != 0 || k < 4) return 0;
  if (k == 4) return static_cast<std::int64_t>(singular_solve(ws, t).dim());
  return static_cast<std::int64_t>(weak_dim(ws, k, t)) - delta_t(t);
}

namespace {

bool is_singular(int n, WeightKey key, int t) { return norm(unpack(key)) == static_cast<std::int64_t>(n) * t; }

// Row-reduces the forms on their singular coefficients (ordered by level,
// then canonical orbit order), dropping dependent ones.
std::vector<JacobiExpansion> reduce_on_singular(std::vector<JacobiExpansion> forms, int t) {
  std::vector<std::pair<int, DominantWeight>> coords;
  std::set<std::pair<int, WeightKey>> seen;
  for (const auto& f : forms)
    for (int n = 0; n < f.truncation(); ++n)
      for (const auto& [key, c] : f.terms[n])
        if (is_singular(n, key, t) && seen.insert({n, key}).second) coords.emplace_back(n, unpack(key));
  std::sort(coords.begin(), coords.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : canonical_less(a.second, b.second);
  });
  std::size_t r = 0;
  for (const auto& [n, m] : coords) {
    std::size_t p = r;
    while (p < forms.size() && forms[p].coeff(n, m) == 0) ++p;
    if (p == forms.size()) continue;
    std::swap(forms[p], forms[r]);
    forms[r] = forms[r] * (1 / forms[r].coeff(n, m));
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (i == r) continue;
      const Rational c = forms[i].coeff(n, m);
      if (c != 0) forms[i] = forms[i] - forms[r] * c;
    }
    ++r;
  }
  forms.resize(r);
  return forms;
}

}  // namespace

SingularSpace singular_solve(Workspace& ws, int t, std::optional<int> delta_power, int levels) {
  SingularSpace out;
  out.index = t;
  const int p = delta_power.value_or(n_cap(t) - 1);
  out.delta_power = p;
  const int L = std::max({m_cap(t), levels, 1});
  out.levels = L;
  const int t1 = t1_of(t);
  std::vector<JacobiExpansion> forms;
  if (p >= 0) {
    const auto cols = ansatz_columns(4 + 12 * p, t, t1);
    const int trunc = p + L;
    ws.require(trunc, "singular solve for index " + std::to_string(t));
    const QSeries inv = euler_power(-24 * p, trunc);
    std::vector<XSeries> shifted;
    std::vector<JacobiExpansion> orbit_form;
    for (const auto& c : cols) {
      XSeries g = x_mul_series(ws.column_x(c, t1, trunc), inv, -12 * p);
      XSeries upper = g;
      upper.levels.erase(upper.levels.begin(), upper.levels.begin() + p);
      orbit_form.push_back(from_x(upper));
      shifted.push_back(std::move(g));
    }
    // Rows: X coefficients below q^p, then non-singular orbit coefficients.
    RationalMatrix m = x_rows(shifted, 0, p);
    std::map<std::pair<int, WeightKey>, std::size_t> index;
    for (const auto& f : orbit_form)
      for (int n = 0; n < L; ++n)
        for (const auto& [key, c] : f.terms[n])
          if (!is_singular(n, key, t)) index.emplace(std::make_pair(n, key), 0);
    RationalMatrix extra(index.size(), cols.size());
    std::size_t r = 0;
    for (auto& [key, v] : index) v = r++;
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (int n = 0; n < L; ++n)
        for (const auto& [key, c] : orbit_form[j].terms[n])
          if (auto it = index.find({n, key}); it != index.end()) extra.at(it->second, j) = c;
    std::vector<Rational> row(cols.size());
    for (std::size_t i = 0; i < extra.rows(); ++i) {
      for (std::size_t j = 0; j < cols.size(); ++j) row[j] = extra.at(i, j);
      m.add_row(row);
    }
    if (m.cols() == 0) m = RationalMatrix(0, cols.size());
    for (const auto& v : kernel_basis(m)) {
      JacobiExpansion f = JacobiExpansion::zero(4, t, L);
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (sgn(v[j]) != 0) f = f + orbit_form[j] * Rational(v[j]);
      f.holomorphic = true;
      forms.push_back(std::move(f));
    }
  }
  const bool has_constant =
      std::any_of(forms.begin(), forms.end(), [](const auto& f) { return f.coeff(0, DominantWeight{}) != 0; });
  if (!has_constant) {
    JacobiExpansion x = hecke_theta(t, L);
    x.holomorphic = true;
    forms.insert(forms.begin(), std::move(x));
    out.added_xt = true;
  }
  out.basis = reduce_on_singular(std::move(forms), t);
  return out;
}

std::optional<JacobiExpansion> phi_tm(const SingularSpace& s, const DominantWeight& m) {
  const int t = s.index;
  if (norm(m) != t || s.levels < 2) return std::nullopt;
  const auto orbits = dominant_by_norm(t);
  RationalMatrix a(1 + orbits.size(), s.dim());
  std::vector<Rational> b(1 + orbits.size());
  for (std::size_t j = 0; j < s.dim(); ++j) {
    a.at(0, j) = s.basis[j].coeff(0, DominantWeight{});
    for (std::size_t i = 0; i < orbits.size(); ++i) a.at(i + 1, j) = s.basis[j].coeff(1, orbits[i]);
  }
  b[0] = 1;
  for (std::size_t i = 0; i < orbits.size(); ++i)
    if (orbits[i] == m) b[i + 1] = Rational(240) / Rational(orbit_size(m));
  auto x = solve(a, b);
  if (!x) return std::nullopt;
  JacobiExpansion f = JacobiExpansion::zero(4, t, s.levels);
  for (std::size_t j = 0; j < s.dim(); ++j)
    if ((*x)[j] != 0) f = f + s.basis[j] * (*x)[j];
  f.holomorphic = true;
  return f;
}

std::vector<IndexReport> conjecture_report(Workspace& ws, int t_max, int singular_max) {
  std::vector<IndexReport> out;
  for (int t = 1; t <= t_max; ++t) {
    IndexReport r;
    r.index = t;
    const ModuleDescription md = module_generators(ws, t);
    r.min_weight = md.min_weight;
    r.weight_bound = md.min_weight >= -4 * t;
    auto d = [&](int k) {
      auto it = md.d.find(k);
      return it == md.d.end() ? 0 : it->second;
    };
    r.d0 = d(0), r.dm2 = d(-2), r.dm4 = d(-4);
    if (t <= singular_max) r.singular_dim = singular_solve(ws, t).dim();
    r.norm_orbits = orbit_count_norm(t);
    out.push_back(r);
  }
  return out;
}

}  // namespace e8jac
