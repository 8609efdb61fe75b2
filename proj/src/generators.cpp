#include <mutex>

#include "e8jacobi/errors.hpp"
#include "e8jacobi/generators.hpp"

namespace e8jac {

namespace {

JacobiExpansion eisenstein_form(int k, int truncation) {
  const QSeries e = eisenstein(k, truncation);
  JacobiExpansion f = JacobiExpansion::zero(k, 0, truncation);
  f.holomorphic = true;
  for (int n = 0; n < truncation; ++n)
    if (e[n] != 0) f.terms[n][0] = e[n];
  return f;
}

XSeries lhs_b5(const SakaiGenerators& g, int truncation) {
  const QSeries f = discriminant(truncation) * eisenstein(4, truncation) * Rational(179712);
  return x_mul_series(to_x(g.b5hat.truncated(truncation)), f, 16);
}

}  // namespace

// ---------------------------------------------------------------- expander

Expander::Expander(std::shared_ptr<const SakaiGenerators> gens, int truncation)
    : gens_(std::move(gens)), truncation_(truncation) {
  if (truncation_ > gens_->truncation)
    throw TruncationError("generators are known to q^" + std::to_string(gens_->truncation - 1), truncation_);
}

const XSeries& Expander::generator_x(Gen g) {
  if (!gx_[g]) gx_[g] = to_x(gens_->forms[g].truncated(truncation_));
  return *gx_[g];
}

XSeries Expander::monomial(const Exponents& e) {
  auto it = memo_.find(e);
  if (it != memo_.end()) return it->second;
  XSeries r;
  if (e[kE4] != 0 || e[kE6] != 0) {
    Exponents core = e;
    core[kE4] = core[kE6] = 0;
    const auto key = std::make_pair(e[kE4], e[kE6]);
    auto qit = eisen_memo_.find(key);
    if (qit == eisen_memo_.end()) {
      const QSeries q = series_pow(eisenstein(4, truncation_), e[kE4]) * series_pow(eisenstein(6, truncation_), e[kE6]);
      qit = eisen_memo_.emplace(key, q).first;
    }
    r = x_mul_series(monomial(core), qit->second, 4 * e[kE4] + 6 * e[kE6]);
  } else {
    int last = -1;
    for (int g = 0; g < kNumGens; ++g)
      if (e[g] != 0) last = g;
    if (last < 0) {
      r.levels.resize(truncation_);
      if (truncation_ > 0) r.levels[0].emplace_back(0, 1);
    } else {
      Exponents lower = e;
      --lower[last];
      r = x_mul(monomial(lower), generator_x(static_cast<Gen>(last)));
    }
  }
  return memo_.emplace(e, std::move(r)).first->second;
}

XSeries Expander::expand_x(const GeneratorPolynomial& p) {
  const auto deg = p.bidegree();
  XSeries acc;
  acc.levels.resize(truncation_);
  if (!deg) {
    if (!p.is_zero()) throw std::invalid_argument("polynomial is not bihomogeneous");
    return acc;
  }
  acc.weight = deg->first;
  acc.index = deg->second;
  for (const auto& [e, c] : p.terms()) acc = x_add(acc, x_scale(monomial(e), c));
  return acc;
}

JacobiExpansion Expander::expand(const GeneratorPolynomial& p) { return from_x(expand_x(p), true); }

XSeries lemma31_residual(Expander& ex) {
  const GeneratorPolynomial rhs = GeneratorPolynomial::generator(kE6) * poly_p165() +
                                  GeneratorPolynomial::generator(kE4) * poly_q185();
  return x_add(lhs_b5(ex.generators(), ex.truncation()), x_scale(ex.expand_x(rhs), -1));
}

// ---------------------------------------------------------------- construction

Rational pin_b4(const SakaiGenerators& partial) {
  auto with_b4 = [&](const JacobiExpansion& b4) {
    auto g = std::make_shared<SakaiGenerators>(partial);
    g->forms[kB4] = b4;
    Expander ex(g, g->truncation);
    return lemma31_residual(ex);
  };
  const XSeries rl = with_b4(partial.b4_trace);
  const XSeries rh = with_b4(partial.b4_hecke);
  const XSeries diff = x_add(rl, x_scale(rh, -1));
  for (int n = 0; n < diff.truncation(); ++n)
    if (!diff.levels[n].empty()) {
      const WeightKey probe = diff.levels[n].front().first;
      const Rational d = diff.coeff(n, probe);
      return -rh.coeff(n, probe) / d;
    }
  throw ConsistencyError("B4 pinning system is singular: both candidates give the same residual");
}

std::shared_ptr<const SakaiGenerators> sakai_generators(int truncation) {
  static std::recursive_mutex mu;
  static std::map<int, std::shared_ptr<const SakaiGenerators>> cache;
  std::lock_guard lock(mu);  // recursive use below is for a different key
  if (auto it = cache.find(truncation); it != cache.end()) return it->second;
  if (truncation < 2) throw std::invalid_argument("generators need truncation >= 2");

  if (truncation < 3) {
    // The two B4 candidates first differ at q^1, which the identity sees at q^2.
    auto full = sakai_generators(3);
    auto g = std::make_shared<SakaiGenerators>(*full);
    g->truncation = truncation;
    for (auto& f : g->forms) f = f.truncated(truncation);
    for (auto* f : {&g->b5hat, &g->b4_trace, &g->b4_hecke}) *f = f->truncated(truncation);
    cache.emplace(truncation, g);
    return g;
  }
  auto g = std::make_shared<SakaiGenerators>();
  const int n = truncation;
  g->truncation = n;
  g->forms[kE4] = eisenstein_form(4, n);
  g->forms[kE6] = eisenstein_form(6, n);
  g->forms[kA1] = theta_e8(n);
  g->forms[kA2] = hecke_theta(2, n);
  g->forms[kA3] = hecke_theta(3, n);
  g->forms[kA4] = scale_z(theta_e8(n), 2);
  g->forms[kA5] = hecke_theta(5, n);
  g->forms[kB2] = level_trace(2, n);
  g->forms[kB3] = level_trace(3, n);
  g->forms[kB6] = level_trace(6, n);
  g->b5hat = level_trace(5, n);
  g->b4_trace = level_trace(4, n);
  const JacobiExpansion h = hecke_v(level_trace(2, 2 * n - 1), 2);
  const Rational h0 = h.coeff(0, DominantWeight{});
  if (h0 != 33) throw ConsistencyError("V_2 image of B2 has constant term " + h0.get_str());
  g->b4_hecke = h * (1 / h0);

  g->b4_alpha = pin_b4(*g);
  g->forms[kB4] = g->b4_trace * g->b4_alpha + g->b4_hecke * (1 - g->b4_alpha);
  g->forms[kB4].holomorphic = true;
  {
    Expander ex(g, n);
    const XSeries r = lemma31_residual(ex);
    if (!r.is_zero()) throw ConsistencyError("pinned B4 does not satisfy the index-5 identity");
  }
  cache.emplace(truncation, g);
  return g;
}

}  // namespace e8jac
