#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cache.hpp"
#include "e8jacobi/errors.hpp"
#include "e8jacobi/structure.hpp"
#include "json.hpp"

using namespace e8jac;
using nlohmann::json;

namespace {

enum class Format { kText, kJson, kCsv };

struct Options {
  int order = 0;  // 0: grow on demand
  std::string cache_dir = "cache";
  int jobs = 1;
  Format format = Format::kText;
  std::int64_t max_shell_norm = 200;
};
Options opt;

constexpr int kMaxAutoOrder = 12;

Workspace& workspace(int order) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Workspace>> spaces;
  std::lock_guard lock(mu);
  auto& w = spaces[order];
  if (!w) w = std::make_unique<Workspace>(order);
  return *w;
}

// Runs f on a workspace, raising the order on truncation errors unless --order was given.
template <class F>
auto with_workspace(F&& f, int start = 3) {
  int order = opt.order ? opt.order : start;
  for (;;) {
    try {
      return f(workspace(order));
    } catch (const TruncationError& e) {
      if (opt.order || e.required() <= order || e.required() > kMaxAutoOrder) throw;
      order = e.required();
    }
  }
}

// Runs f(i) for i in [0, n) on --jobs threads.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t workers = std::min<std::size_t>(std::max(opt.jobs, 1), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex fail_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(fail_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void emit(const json& j, const std::string& text, const std::string& csv = {}) {
  switch (opt.format) {
    case Format::kJson: std::cout << j.dump(2) << '\n'; break;
    case Format::kCsv: std::cout << (csv.empty() ? text : csv); break;
    case Format::kText: std::cout << text; break;
  }
}

std::string rat(const Rational& r) { return to_string(r); }
json rat_json(const Rational& r) { return json::array({r.get_num().get_str(), r.get_den().get_str()}); }

// ---------------------------------------------------------------- display

std::string orbit_symbol(const DominantWeight& m) {
  return "O_{" + std::to_string(norm(m)) + "," + std::to_string(orbit_size(m)) + "}^{" + label_string(m) + "}";
}

std::string orbit_poly_string(const OrbitPoly& p) {
  std::vector<std::pair<DominantWeight, Rational>> terms;
  for (const auto& [k, c] : p) terms.emplace_back(unpack(k), c);
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  std::string s;
  for (const auto& [m, c] : terms) {
    const bool neg = sgn(c) < 0;
    const Rational a = neg ? Rational(-c) : c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (m.is_zero()) s += rat(a);
    else s += (a == 1 ? "" : rat(a) + "*") + orbit_symbol(m);
  }
  return s.empty() ? "0" : s;
}

std::string expansion_text(const JacobiExpansion& f) {
  std::ostringstream o;
  o << "weight " << f.weight << ", index " << f.index << '\n';
  bool first = true;
  for (int n = 0; n < f.truncation(); ++n) {
    if (f.terms[n].empty()) continue;
    const std::string body = orbit_poly_string(f.terms[n]);
    const bool single = f.terms[n].size() == 1;
    o << (first ? "" : "+ ");
    if (n == 0) o << body;
    else o << "q" << (n > 1 ? "^" + std::to_string(n) : "") << "*" << (single ? body : "(" + body + ")");
    o << '\n';
    first = false;
  }
  if (first) o << "0\n";
  o << "+ O(q^" << f.truncation() << ")\n";
  return o.str();
}

json expansion_json(const JacobiExpansion& f) {
  json j = cli::expansion_to_json(f);
  json display = json::array();
  for (const auto& level : f.terms) display.push_back(orbit_poly_string(level));
  j["display"] = display;
  return j;
}

std::string series_string(const std::map<int, Integer>& p) {
  std::string s;
  for (auto it = p.begin(); it != p.end(); ++it) {
    const auto& [k, c] = *it;
    if (sgn(c) == 0) continue;
    if (!s.empty()) s += " + ";
    const std::string x = k == 0 ? "" : "x^" + std::to_string(k);
    if (x.empty()) s += c.get_str();
    else s += (c == 1 ? "" : c.get_str() + "*") + x;
  }
  return s.empty() ? "0" : s;
}

// Row-oriented tables: first row holds the column headers.
std::string table_text(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::string s;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += std::string(width[i] - r[i].size(), ' ') + r[i];
      s += i + 1 < r.size() ? " " : "\n";
    }
  }
  return s;
}

std::string table_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string s;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + r[i];
    s += '\n';
  }
  return s;
}

// ---------------------------------------------------------------- forms

JacobiExpansion expand_polynomial(const GeneratorPolynomial& p, int truncation) {
  const auto bd = p.bidegree();
  if (!p.is_zero() && !bd) throw std::invalid_argument("polynomial is not bihomogeneous");
  Expander ex(sakai_generators(truncation), truncation);
  return ex.expand(p);
}

// Named expansion or polynomial, through the cache.
JacobiExpansion expand_form(const std::string& text, int truncation) {
  static const std::regex xt(R"(X([0-9]+))");
  std::smatch mt;
  std::string canonical;
  std::optional<GeneratorPolynomial> poly;
  if (std::regex_match(text, mt, xt) || text == "theta") {
    canonical = text;
  } else {
    poly = parse_polynomial(text);
    canonical = poly->to_string();
    static const std::regex single(R"([A-Z][A-Za-z0-9]*)");
    if (std::regex_match(text, single)) canonical = text;  // named generators keep their name
  }
  const std::string id = cli::form_id(canonical);
  cli::ExpansionCache cache(opt.cache_dir);
  if (!opt.cache_dir.empty())
    if (auto hit = cache.load(id, truncation)) return *hit;
  JacobiExpansion f;
  if (text == "theta") f = theta_e8(truncation);
  else if (!poly) f = hecke_theta(std::stoi(mt[1]), truncation);
  else f = expand_polynomial(*poly, truncation);
  if (!opt.cache_dir.empty()) cache.store({cli::kSchemaVersion, id, f});
  return f;
}

// f as a combination of E4^a E6^b, when the truncation determines it.
std::optional<std::map<std::pair<int, int>, Rational>> modular_decomposition(const QSeries& f, int k) {
  if (k < 0 || k % 2) return std::nullopt;
  std::vector<std::pair<int, int>> basis;
  for (int b = 0; 6 * b <= k; ++b)
    if ((k - 6 * b) % 4 == 0) basis.emplace_back((k - 6 * b) / 4, b);
  if (basis.empty() || static_cast<int>(basis.size()) > f.truncation()) return std::nullopt;
  const int n = f.truncation();
  const QSeries e4 = eisenstein(4, n), e6 = eisenstein(6, n);
  RationalMatrix m(n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const QSeries g = series_pow(e4, basis[j].first) * series_pow(e6, basis[j].second);
    for (int i = 0; i < n; ++i) m.at(i, j) = g[i];
  }
  if (rank(m) < basis.size()) return std::nullopt;
  const auto x = solve(m, f.coeffs());
  if (!x) return std::nullopt;
  std::map<std::pair<int, int>, Rational> out;
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (sgn((*x)[j]) != 0) out[basis[j]] = (*x)[j];
  return out;
}

std::string decomposition_string(const std::map<std::pair<int, int>, Rational>& d) {
  std::string s;
  for (auto it = d.rbegin(); it != d.rend(); ++it) {
    const auto [a, b] = it->first;
    std::string mono;
    auto add = [&](const char* g, int e) {
      if (e == 0) return;
      mono += (mono.empty() ? "" : "*") + std::string(g) + (e > 1 ? "^" + std::to_string(e) : "");
    };
    add("E4", a);
    add("E6", b);
    const Rational& c = it->second;
    s += s.empty() ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
    const Rational abs_c = sgn(c) < 0 ? Rational(-c) : c;
    if (mono.empty()) s += rat(abs_c);
    else s += (abs_c == 1 ? "" : rat(abs_c) + "*") + mono;
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------- tables

std::vector<int> table_range(const std::string& range, int lo, int hi) {
  if (!range.empty()) {
    static const std::regex re(R"((-?[0-9]+)(?:(?::|-|\.\.)(-?[0-9]+))?)");
    std::smatch m;
    if (!std::regex_match(range, m, re)) throw CLI::ValidationError("--range", "expected a:b");
    lo = std::stoi(m[1]);
    hi = m[2].matched ? std::stoi(m[2]) : lo;
  }
  if (lo > hi) throw CLI::ValidationError("--range", "empty range");
  std::vector<int> out;
  for (int t = lo; t <= hi; ++t) out.push_back(t);
  return out;
}

int cmd_tables(const std::string& which, int max, const std::string& range) {
  std::vector<std::vector<std::string>> rows;
  json j{{"table", which}};
  auto simple = [&](const std::string& label, const std::vector<int>& ts, auto value) {
    std::vector<std::string> head{"t"}, row{label};
    json values = json::array();
    for (int t : ts) {
      const std::int64_t v = value(t);
      head.push_back(std::to_string(t));
      row.push_back(std::to_string(v));
      values.push_back(v);
    }
    rows = {head, row};
    j["t"] = ts;
    j["values"] = values;
  };
  if (which == "ranks") {
    const auto ts = table_range(range, 1, max ? max : 18);
    const auto r = rank_r(ts.back());
    simple("r(t)", ts, [&](int t) { return r.at(t); });
  } else if (which == "delta") {
    simple("delta_t", table_range(range, 1, max ? max : 18), [](int t) { return delta_t(t); });
  } else if (which == "norms") {
    simple("N(t)", table_range(range, 1, max ? max : 23), [](int t) { return orbit_count_norm(t); });
  } else if (which == "singular-dims") {
    const auto ts = table_range(range, 1, max ? max : 7);
    std::vector<std::optional<std::size_t>> dims(ts.size());
    std::vector<std::string> gaps(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
      try {
        dims[i] = with_workspace([&](Workspace& ws) { return singular_solve(ws, ts[i]).dim(); });
      } catch (const TruncationError& e) {
        gaps[i] = e.what();
      } catch (const ResourceError& e) {
        gaps[i] = e.what();
      }
    });
    std::vector<std::string> head{"t"}, row{"dim J_{4,t}"};
    json values = json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      head.push_back(std::to_string(ts[i]));
      row.push_back(dims[i] ? std::to_string(*dims[i]) : "?");
      values.push_back(dims[i] ? json(*dims[i]) : json(nullptr));
    }
    rows = {head, row};
    j["t"] = ts;
    j["values"] = values;
    json g = json::object();
    for (std::size_t i = 0; i < ts.size(); ++i)
      if (!dims[i]) g[std::to_string(ts[i])] = gaps[i];
    if (!g.empty()) j["gaps"] = g;
  } else if (which == "stability") {
    // d_{K,t} for K = 0..-24 and the computed indices.
    const auto ts = table_range(range, 2, max ? max : 6);
    std::vector<std::optional<std::map<int, int>>> d(ts.size());
    parallel_for(ts.size(), [&](std::size_t i) {
      try {
        d[i] = with_workspace([&](Workspace& ws) { return module_generators(ws, ts[i]).d; });
      } catch (const TruncationError&) {
      } catch (const ResourceError&) {
      }
    });
    std::vector<std::string> head{"K \\ t"};
    for (int t : ts) head.push_back(std::to_string(t));
    rows.push_back(head);
    json table = json::object();
    for (int k = 0; k >= -24; k -= 2) {
      std::vector<std::string> row{std::to_string(k)};
      json col = json::array();
      for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!d[i]) {
          row.push_back("?");
          col.push_back(nullptr);
          continue;
        }
        auto it = d[i]->find(k);
        const int v = it == d[i]->end() ? 0 : it->second;
        row.push_back(std::to_string(v));
        col.push_back(v);
      }
      rows.push_back(row);
      table[std::to_string(k)] = col;
    }
    j["t"] = ts;
    j["d"] = table;
  } else {
    throw CLI::ValidationError("tables", "unknown table " + which);
  }
  emit(j, table_text(rows), table_csv(rows));
  return 0;
}

// ---------------------------------------------------------------- expand

int cmd_expand(const std::string& form, int order, bool eval) {
  if (order < 1) throw CLI::ValidationError("order", "must be positive");
  const JacobiExpansion f = expand_form(form, order);
  json j{{"form", form}, {"expansion", expansion_json(f)}};
  std::string text = expansion_text(f);
  if (eval) {
    const QSeries z = eval_zero(f);
    json zj = json::array();
    for (const auto& c : z.coeffs()) zj.push_back(rat_json(c));
    j["eval_zero"] = zj;
    text += "at z = 0: " + z.to_string() + "\n";
    if (auto d = modular_decomposition(z, f.weight)) {
      j["eval_zero_modular"] = decomposition_string(*d);
      text += "         = " + decomposition_string(*d) + "\n";
    } else {
      text += "         (too few q-terms to write in E4, E6)\n";
    }
  }
  emit(j, text);
  return 0;
}

// ---------------------------------------------------------------- verify

struct Report {
  json j = json::object();
  std::string text;
  bool ok = true;
  void line(bool pass, const std::string& what) {
    text += (pass ? "PASS  " : "FAIL  ") + what + "\n";
    j["checks"].push_back({{"check", what}, {"pass", pass}});
    ok = ok && pass;
  }
  void note(const std::string& s) { text += "      " + s + "\n"; }
};

int finish(Report& r) {
  r.j["pass"] = r.ok;
  emit(r.j, r.text);
  return r.ok ? 0 : 1;
}

OrbitPoly single_orbit(int node) { return OrbitPoly{{pack(DominantWeight::fundamental(node)), 1}}; }

void verify_lemma31(Report& r, int order) {
  Expander ex(sakai_generators(order), order);
  const XSeries res = lemma31_residual(ex);
  std::optional<std::pair<int, WeightKey>> witness;
  for (int n = 0; n < res.truncation() && !witness; ++n)
    for (const auto& [k, c] : res.levels[n])
      if (sgn(c) != 0) {
        witness = {n, k};
        break;
      }
  r.line(!witness, "179712 Delta E4 B5hat = E6 P165 + E4 Q185 to q^" + std::to_string(order - 1));
  if (witness)
    r.note("first nonzero residual at q^" + std::to_string(witness->first) + " X^" +
           label_string(unpack(witness->second)) + ": " + rat(res.coeff(witness->first, witness->second)));
}

void verify_p165(Report& r, int order) {
  const JacobiExpansion f = expand_form("P165", order);
  const JacobiExpansion quotient = div_e4(f);
  const auto bad = check_support(quotient);
  r.line(!bad, "P165/E4 satisfies the holomorphic support condition to q^" + std::to_string(order - 1));
  if (bad) r.note("violation at q^" + std::to_string(bad->n) + " " + orbit_symbol(bad->m) + ": " + rat(bad->coeff));
  const QSeries e4 = eisenstein(4, order), e6 = eisenstein(6, order);
  const QSeries expected = e4 * e4 * e4 * e4 * Rational(864) + e4 * e6 * e6 * Rational(2296);
  const QSeries z = eval_zero(f);
  r.line(z == expected, "P165(tau, 0) = 864 E4^4 + 2296 E4 E6^2");
  if (z != expected) r.note("got " + z.to_string());
  // The reduction of P165/E4 has an E6^2 component, so a second E4 cannot divide.
  const auto d = modular_decomposition(eval_zero(quotient), 12);
  if (d) {
    const bool obstructed = d->count({0, 2}) && sgn(d->at({0, 2})) != 0;
    r.line(obstructed, "P165/E4^2 is not holomorphic: reduction of P165/E4 = " + decomposition_string(*d));
  } else {
    r.line(false, "E4^2 obstruction needs at least 2 q-terms");
  }
}

void verify_lemma34(Report& r, int order) {
  const int trunc = std::max(order, 3);
  const std::array<std::pair<int, int>, 4> cases{{{1, 1}, {2, 8}, {3, 7}, {4, 2}}};
  for (const auto& [j, node] : cases) {
    const int power = j == 4 ? 2 : 1;
    const JacobiExpansion f = div_delta(expand_form("P" + std::to_string(j), trunc), power);
    const bool ok = f.terms[0] == single_orbit(node);
    r.line(ok, "q^0 of P" + std::to_string(j) + "/Delta" + (power > 1 ? "^2" : "") + " is orb(w" +
                   std::to_string(node) + ")");
    if (!ok) r.note("got " + orbit_poly_string(f.terms[0]));
  }
}

struct PaperForm {
  const char* name;
  int weight;
  int index;
  int delta_power;
  const char* numerator;
};

void verify_forms(Report& r, const std::vector<PaperForm>& forms) {
  for (const auto& pf : forms) {
    with_workspace([&](Workspace& ws) {
      const WeakSpace s = weak_basis(ws, pf.weight, pf.index);
      GeneratorPolynomial p = parse_polynomial(pf.numerator);
      p = p * delta_polynomial().pow(s.delta_power - pf.delta_power);
      std::vector<GeneratorPolynomial> cert(s.t1 + 1);
      cert[s.t1] = p;
      const bool in = contains(s, cert);
      const ModuleDescription md = module_generators(ws, pf.index);
      const auto it = md.d.find(pf.weight);
      const int d = it == md.d.end() ? 0 : it->second;
      r.line(in && d == 1, std::string(pf.name) + " lies in J^w_{" + std::to_string(pf.weight) + "," +
                               std::to_string(pf.index) + "} (dim " + std::to_string(s.dim()) +
                               ") with one generator in that weight");
      return 0;
    });
  }
}

void verify_eq43(Report& r) {
  verify_forms(r, {{"phi_{-4,2}", -4, 2, 1, "A1^2 - A2*E4"},
                   {"phi_{-2,2}", -2, 2, 1, "A2*E6 - B2*E4"},
                   {"phi_{0,2}", 0, 2, 1, "A1^2*E4 - B2*E6"}});
  with_workspace([&](Workspace& ws) {
    const auto md = module_generators(ws, 2);
    r.line(laurent_string(md.d) == "x^-4 + x^-2 + 1", "P^w_2 = " + laurent_string(md.d));
    return 0;
  });
}

void verify_eq44(Report& r) {
  verify_forms(r, {{"phi_{-8,3}", -8, 3, 2,
                    "6*A1^3*E4 - 9*A1*A2*E4^2 + A3*(3*E4^3 - 10*E6^2) + 30*A1*B2*E6 - 20*B3*E4*E6"},
                   {"phi_{-6,3}", -6, 3, 2, "6*A1^3*E6 + 3*A1*E4*(10*B2*E4 - 3*A2*E6) - E4^2*(20*B3*E4 + 7*A3*E6)"},
                   {"phi_{-4,3}", -4, 3, 1, "A1*A2 - A3*E4"},
                   {"phi_{-2,3}", -2, 3, 1, "A1*B2 - A3*E6"},
                   {"phi_{0,3}", 0, 3, 1, "A1^3 - B3*E6"}});
  with_workspace([&](Workspace& ws) {
    const auto md = module_generators(ws, 3);
    r.line(laurent_string(md.d) == "x^-8 + x^-6 + x^-4 + x^-2 + 1", "P^w_3 = " + laurent_string(md.d));
    return 0;
  });
}

void verify_lemma62(Report& r) {
  const auto p = lemma62_pairings();
  const std::array<std::int64_t, 8> expected{4, 5, 7, 10, 8, 6, 4, 2};
  std::string s;
  for (auto v : p) s += (s.empty() ? "" : ",") + std::to_string(v);
  r.line(p == expected, "max pairing of orb(w_i) with a root: " + s);
  r.j["values"] = p;
}

void verify_conjectures(Report& r, int t_max, int singular_max) {
  const auto rep = with_workspace([&](Workspace& ws) { return conjecture_report(ws, t_max, singular_max); });
  std::vector<std::vector<std::string>> rows{{"t", "min weight", ">= -4t", "d0", "d-2", "d-4", "H(t)", "N(t)"}};
  for (const auto& x : rep) {
    rows.push_back({std::to_string(x.index), std::to_string(x.min_weight), x.weight_bound ? "yes" : "no",
                    std::to_string(x.d0), std::to_string(x.dm2), std::to_string(x.dm4),
                    x.singular_dim ? std::to_string(*x.singular_dim) : "-", std::to_string(x.norm_orbits)});
    r.j["rows"].push_back({{"t", x.index},
                           {"min_weight", x.min_weight},
                           {"d0", x.d0},
                           {"d-2", x.dm2},
                           {"d-4", x.dm4},
                           {"H", x.singular_dim ? json(*x.singular_dim) : json(nullptr)},
                           {"N", x.norm_orbits}});
  }
  r.text += table_text(rows);
  for (const auto& x : rep) {
    const std::string t = std::to_string(x.index);
    if (x.singular_dim)
      r.line(static_cast<std::int64_t>(*x.singular_dim) == x.norm_orbits, "H(" + t + ") = N(" + t + ")");
    r.line(x.weight_bound, "min weight of index " + t + " >= " + std::to_string(-4 * x.index));
    if (x.index >= 2) r.line(x.d0 == 1 && x.dm2 == 1 && x.dm4 == 1, "d_{0," + t + "} = d_{-2," + t + "} = d_{-4," + t + "} = 1");
  }
}

int cmd_verify(const std::string& check, int order, int t_max, int singular_max) {
  Report r;
  r.j["check"] = check;
  const int o = order ? order : (opt.order ? opt.order : 3);
  if (check == "lemma31") verify_lemma31(r, o);
  else if (check == "p165-holo") verify_p165(r, o);
  else if (check == "lemma34") verify_lemma34(r, o);
  else if (check == "eq43") verify_eq43(r);
  else if (check == "eq44") verify_eq44(r);
  else if (check == "lemma62") verify_lemma62(r);
  else if (check == "conjectures") verify_conjectures(r, t_max, singular_max);
  else throw CLI::ValidationError("verify", "unknown check " + check);
  return finish(r);
}

// ---------------------------------------------------------------- basis, generators, series

std::string denominator_string(int n, int t1) {
  std::string s;
  if (n) s += "Delta" + (n > 1 ? "^" + std::to_string(n) : "");
  if (t1) s += (s.empty() ? "" : "*") + std::string("E4") + (t1 > 1 ? "^" + std::to_string(t1) : "");
  return s.empty() ? "1" : s;
}

// sum_j P_j E4^j P165^(t1-j) as one string.
std::string certificate_string(const std::vector<GeneratorPolynomial>& cert) {
  const int t1 = static_cast<int>(cert.size()) - 1;
  std::string s;
  for (int j = 0; j <= t1; ++j) {
    if (cert[j].is_zero()) continue;
    std::string f = "(" + cert[j].to_string() + ")";
    if (j) f += "*E4" + (j > 1 ? "^" + std::to_string(j) : std::string());
    if (t1 - j) f += "*P165" + (t1 - j > 1 ? "^" + std::to_string(t1 - j) : std::string());
    s += (s.empty() ? "" : " + ") + f;
  }
  return s.empty() ? "0" : s;
}

int cmd_basis(const std::string& kind, std::vector<int> args, bool certificates, std::optional<int> delta_power,
              int levels) {
  if (kind == "weak" || kind == "holo") {
    if (args.size() != 2) throw CLI::ValidationError("basis", kind + " needs <weight> <index>");
    const int k = args[0], t = args[1];
    if (kind == "holo") {
      const auto [h, direct] = with_workspace([&](Workspace& ws) {
        const std::int64_t h = holo_dim(ws, k, t);
        std::optional<std::size_t> d;
        if (k >= 6) d = holo_dim_direct(ws, k, t);
        return std::pair{h, d};
      });
      json j{{"weight", k}, {"index", t}, {"dim", h}};
      std::string text = "dim J_{" + std::to_string(k) + "," + std::to_string(t) + "} = " + std::to_string(h) + "\n";
      if (direct) {
        j["dim_direct"] = *direct;
        text += "support condition imposed directly: " + std::to_string(*direct) + "\n";
        if (static_cast<std::int64_t>(*direct) != h) {
          emit(j, text);
          return 1;
        }
      }
      emit(j, text);
      return 0;
    }
    return with_workspace([&](Workspace& ws) {
      const WeakSpace s = weak_basis(ws, k, t);
      json j{{"weight", k}, {"index", t}, {"dim", s.dim()}, {"delta_power", s.delta_power}, {"t1", s.t1}};
      std::string text = "dim J^w_{" + std::to_string(k) + "," + std::to_string(t) + "} = " +
                         std::to_string(s.dim()) + "\n";
      if (certificates) {
        const std::string den = denominator_string(s.delta_power, s.t1);
        for (const auto& v : s.kernel) {
          const std::string c = certificate_string(certificate(s, v));
          text += "  [" + c + "] / " + den + "\n";
          j["basis"].push_back({{"numerator", c}, {"denominator", den}});
        }
      }
      emit(j, text);
      return 0;
    });
  }
  if (kind == "singular") {
    if (args.size() != 1) throw CLI::ValidationError("basis", "singular needs <index>");
    const int t = args[0];
    return with_workspace([&](Workspace& ws) {
      const SingularSpace s = singular_solve(ws, t, delta_power, levels);
      json j{{"index", t}, {"dim", s.dim()}, {"delta_power", s.delta_power}, {"levels", s.levels},
             {"added_xt", s.added_xt}};
      std::string text = "dim J_{4," + std::to_string(t) + "} = " + std::to_string(s.dim()) + " (Delta^" +
                         std::to_string(s.delta_power) + " ansatz, " + std::to_string(s.levels) + " q-levels" +
                         (s.added_xt ? ", X_t appended" : "") + ")\n";
      for (const auto& m : dominant_by_norm(t)) {
        if (auto phi = phi_tm(s, m)) {
          text += "\nPhi_{" + std::to_string(t) + "," + label_string(m) + "}:\n" + expansion_text(*phi);
          j["phi"].push_back({{"m", m.m}, {"expansion", expansion_json(*phi)}});
        } else {
          text += "\nPhi_{" + std::to_string(t) + "," + label_string(m) + "}: not in the solution space\n";
        }
      }
      if (certificates)
        for (const auto& f : s.basis) j["basis"].push_back(expansion_json(f));
      emit(j, text);
      return 0;
    });
  }
  throw CLI::ValidationError("basis", "unknown kind " + kind);
}

int cmd_generators(int t, int max_weight, bool certificates) {
  return with_workspace([&](Workspace& ws) {
    const ModuleDescription md = module_generators(ws, t, max_weight);
    json j{{"index", t}, {"min_weight", md.min_weight}, {"P", laurent_string(md.d)}, {"total", md.total()}};
    for (const auto& [k, n] : md.d) j["d"][std::to_string(k)] = n;
    std::string text = "P^w_" + std::to_string(t) + " = " + laurent_string(md.d) + "\n";
    std::string csv = "k,d\n";
    for (const auto& [k, n] : md.d) csv += std::to_string(k) + "," + std::to_string(n) + "\n";
    if (certificates) {
      for (const auto& g : md.generators) {
        const WeakSpace s = weak_basis(ws, g.weight, t);
        const std::string c = certificate_string(certificate(s, g.numerator));
        const std::string den = denominator_string(s.delta_power, s.t1);
        text += "  weight " + std::to_string(g.weight) + ": [" + c + "] / " + den + "\n";
        j["generators"].push_back({{"weight", g.weight}, {"numerator", c}, {"denominator", den}});
      }
    }
    emit(j, text, csv);
    return 0;
  });
}

int cmd_series(int t, int to) {
  return with_workspace([&](Workspace& ws) {
    const ModuleDescription md = module_generators(ws, t);
    const Laurent s = gen_series(md.d, to);
    json j{{"index", t}, {"to", to}};
    std::string csv = "k,dim\n";
    for (const auto& [k, c] : s) {
      j["coefficients"][std::to_string(k)] = c.get_str();
      csv += std::to_string(k) + "," + c.get_str() + "\n";
    }
    emit(j, "J_" + std::to_string(t) + " = " + series_string(s) + " + O(x^" + std::to_string(to + 1) + ")\n", csv);
    return 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"W(E8)-invariant Jacobi forms"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--order", opt.order, "q-levels of generator expansions (default: grow as needed)")
      ->check(CLI::Range(0, 64));
  app.add_option("--cache-dir", opt.cache_dir, "expansion cache root; empty disables");
  app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--max-shell-norm", opt.max_shell_norm, "refuse orbit tables beyond this norm")
      ->check(CLI::PositiveNumber);

  std::function<int()> run;

  auto* tables = app.add_subcommand("tables", "ranks, delta, singular-dims, norms, stability");
  std::string table;
  int tmax = 0;
  std::string range;
  tables->add_option("table", table)->required()->check(CLI::IsMember({"ranks", "delta", "singular-dims", "norms", "stability"}));
  tables->add_option("--max", tmax, "last index");
  tables->add_option("--range", range, "index range a:b");
  tables->callback([&] { run = [&] { return cmd_tables(table, tmax, range); }; });

  auto* expand = app.add_subcommand("expand", "Fourier expansion of a form or polynomial");
  std::string form;
  int eorder = 2;
  bool eval = false;
  expand->add_option("form", form, "generator polynomial, X<t> or theta")->required();
  expand->add_option("order", eorder, "number of q-terms");
  expand->add_flag("--eval-zero", eval, "also print the reduction at z = 0");
  expand->callback([&] { run = [&] { return cmd_expand(form, eorder, eval); }; });

  auto* verify = app.add_subcommand("verify", "identity checks");
  std::string check;
  int vorder = 0, vmax = 7, smax = 7;
  verify->add_option("check", check)->required()->check(
      CLI::IsMember({"lemma31", "p165-holo", "lemma34", "eq43", "eq44", "lemma62", "conjectures"}));
  verify->add_option("--order", vorder, "q-terms to compare");
  verify->add_option("--max", vmax, "largest index for conjectures");
  verify->add_option("--singular-max", smax, "largest index for the singular-weight count");
  verify->callback([&] { run = [&] { return cmd_verify(check, vorder, vmax, smax); }; });

  auto* basis = app.add_subcommand("basis", "weak, holo or singular bases");
  std::string kind;
  std::vector<int> bargs;
  bool certs = false;
  std::optional<int> bdelta;
  int blevels = 0;
  basis->add_option("kind", kind)->required()->check(CLI::IsMember({"weak", "holo", "singular"}));
  basis->add_option("args", bargs, "weight index | index")->required();
  basis->add_flag("--certificates", certs, "print numerator polynomials or full expansions");
  basis->add_option("--delta-power", bdelta, "singular ansatz Delta power");
  basis->add_option("--levels", blevels, "singular: q-levels to impose");
  basis->callback([&] { run = [&] { return cmd_basis(kind, bargs, certs, bdelta, blevels); }; });

  auto* gens = app.add_subcommand("generators", "generator weights of the weak module");
  int gt = 0, gmax = 16;
  bool gcerts = false;
  gens->add_option("index", gt)->required()->check(CLI::PositiveNumber);
  gens->add_option("--max-weight", gmax, "weight scan bound");
  gens->add_flag("--certificates", gcerts, "print generator numerators");
  gens->callback([&] { run = [&] { return cmd_generators(gt, gmax, gcerts); }; });

  auto* series = app.add_subcommand("series", "generating series of weak forms");
  int st = 0, sto = 20;
  series->add_option("index", st)->required()->check(CLI::PositiveNumber);
  series->add_option("--to", sto, "last power of x");
  series->callback([&] { run = [&] { return cmd_series(st, sto); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  opt.format = format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kText;
  OrbitRing::instance().set_max_norm(opt.max_shell_norm);

  try {
    return run();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 3;
  } catch (const TruncationError& e) {
    std::cerr << "truncation: " << e.what() << " (needs order " << e.required() << ")\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 2;
  } catch (const cli::CacheError& e) {
    std::cerr << "cache: " << e.what() << '\n';
    return 2;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
