#pragma once

// Structure of the modules of W(E8)-invariant weak and holomorphic Jacobi
// forms of fixed index: ranks, dimension gaps, bases, generators, and
// singular-weight forms.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "e8jacobi/generators.hpp"
#include "e8jacobi/linalg.hpp"

namespace e8jac {

// r(0..t_max): coefficients of 1/((1-x)(1-x^2)^2(1-x^3)^2(1-x^4)^2(1-x^5)(1-x^6)).
std::vector<std::int64_t> rank_r(int t_max);
std::int64_t epsilon_t(int t, std::int64_t a);  // ceil(a / t)
std::int64_t delta_t(int t);
int n_cap(int t);
int t1_of(int t);
int m_cap(int t);
std::int64_t orbit_count_norm(int t);
// max over the orbit of w_i of the pairing with a norm-2 vector, i = 1..8.
std::array<std::int64_t, 8> lemma62_pairings();

// A term e * phi^(t1 - j) of the numerator, phi = P165 / E4.  E4 may occur in
// e only when j = t1.
struct Column {
  int j = 0;
  Exponents e{};
  bool operator<(const Column& o) const { return j != o.j ? j < o.j : e < o.e; }
  bool operator==(const Column& o) const = default;
};
std::string column_label(const Column& c);

// Numerator columns of weight w - 12 (t1 - j) and index t - 5 (t1 - j), j = 0..t1.
std::vector<Column> ansatz_columns(int w, int t, int t1);

// Generator expansions at a fixed order plus memoized column expansions.
class Workspace {
 public:
  explicit Workspace(int order);
  int order() const { return order_; }
  const SakaiGenerators& generators() const { return *gens_; }
  Expander& expander(int truncation);
  XSeries column_x(const Column& c, int t1, int truncation);
  // (P165 / E4)^s.
  const XSeries& phi_power(int s, int truncation);
  // Throws TruncationError when more than order() levels are needed.
  void require(int levels, const std::string& what) const;
  std::recursive_mutex& mutex() { return mu_; }

 private:
  int order_;
  std::shared_ptr<const SakaiGenerators> gens_;
  std::map<int, std::unique_ptr<Expander>> expanders_;
  std::map<std::pair<int, int>, XSeries> phi_powers_;
  std::recursive_mutex mu_;
};

struct WeakSpace {
  int weight = 0;
  int index = 0;
  int delta_power = 0;  // N
  int t1 = 0;
  std::vector<Column> columns;
  std::vector<std::vector<Integer>> kernel;  // numerator coordinates, canonical
  std::size_t dim() const { return kernel.size(); }
};

// Forms of weight k and index t written as sum_j P_j phi^(t1 - j) / Delta^N.
WeakSpace weak_basis(Workspace& ws, int k, int t, std::optional<int> n_override = std::nullopt);
std::size_t weak_dim(Workspace& ws, int k, int t);

// P_0..P_t1 of a numerator vector (the form is sum P_j E4^j P165^(t1-j) / (Delta^N E4^t1)).
std::vector<GeneratorPolynomial> certificate(const WeakSpace& s, const std::vector<Integer>& v);
// Numerator coordinates of P_0..P_t1, or nullopt if a monomial is not a column.
std::optional<std::vector<Rational>> coordinates(const WeakSpace& s, const std::vector<GeneratorPolynomial>& p);
// Whether the numerator lies in the span of the kernel.
bool contains(const WeakSpace& s, const std::vector<GeneratorPolynomial>& p);
// (E4^3 - E6^2) / 1728.
GeneratorPolynomial delta_polynomial();

// Expansion to q^(order-1) through the column expansions.
JacobiExpansion weak_form(Workspace& ws, const WeakSpace& s, const std::vector<Integer>& v, int order);
// Expansion from the certificate: full polynomial, then Delta^N and E4^t1 divisions.
JacobiExpansion form_from_certificate(Workspace& ws, const std::vector<GeneratorPolynomial>& p, int k, int t,
                                      int n, int order);

// Smallest weight with a nonzero weak form, scanning down until two
// consecutive weights are empty.
int min_weight(Workspace& ws, int t);

struct ModuleGenerator {
  int weight = 0;
  std::vector<Integer> numerator;  // coordinates in weak_basis(weight, t).columns
};

struct ModuleDescription {
  int index = 0;
  int min_weight = 0;
  int max_weight = 16;
  std::map<int, std::size_t> weak_dims;  // scanned weights
  std::map<int, int> d;                  // d_{k,t}, nonzero entries only
  std::vector<ModuleGenerator> generators;
  std::int64_t total() const;
};

ModuleDescription module_generators(Workspace& ws, int t, int max_weight = 16);

using Laurent = std::map<int, Integer>;
// P / ((1 - x^4)(1 - x^6)) up to and including x^to.
Laurent gen_series(const std::map<int, int>& p, int to);
std::string laurent_string(const std::map<int, int>& p);

// Holomorphic dimension by imposing the support condition on the weak space.
std::size_t holo_dim_direct(Workspace& ws, int k, int t);
// k >= 6: weak dimension minus delta_t; k = 4: singular_solve; k < 4: 0.
std::int64_t holo_dim(Workspace& ws, int k, int t);

struct SingularSpace {
  int index = 0;
  int delta_power = 0;
  int levels = 0;                      // q^0..q^(levels-1) known for each basis form
  std::vector<JacobiExpansion> basis;  // reduced on singular coefficients, q^0 term 1 or 0
  bool added_xt = false;               // X_t appended because the ansatz had no q^0 = 1 form
  std::size_t dim() const { return basis.size(); }
};

// Weight 4 forms sum_j P_j phi^(t1-j) / Delta^p whose coefficients at
// (n, l) with (l, l) != 2nt vanish for n < max(M_t, levels); singular
// coefficients are free.  p defaults to N_t - 1.
SingularSpace singular_solve(Workspace& ws, int t, std::optional<int> delta_power = std::nullopt, int levels = 0);
// The element 1 + 240/|orb(m)| q orb(m) + O(q^2) of the space, if present.
std::optional<JacobiExpansion> phi_tm(const SingularSpace& s, const DominantWeight& m);

struct IndexReport {
  int index = 0;
  int min_weight = 0;
  bool weight_bound = false;  // min_weight >= -4t
  int d0 = 0, dm2 = 0, dm4 = 0;
  std::optional<std::size_t> singular_dim;
  std::int64_t norm_orbits = 0;
};
std::vector<IndexReport> conjecture_report(Workspace& ws, int t_max, int singular_max);

}  // namespace e8jac
