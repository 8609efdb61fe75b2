#pragma once

// Fourier expansions of W(E8)-invariant Jacobi forms.  The q^n term is a
// finite combination of Weyl orbit sums, stored by dominant representative.

#include <map>
#include <optional>
#include <vector>

#include "e8jacobi/lattice.hpp"
#include "e8jacobi/orbit_ring.hpp"
#include "e8jacobi/qseries.hpp"

namespace e8jac {

using OrbitPoly = std::map<WeightKey, Rational>;

struct JacobiExpansion {
  int weight = 0;
  int index = 0;
  bool holomorphic = false;
  std::vector<OrbitPoly> terms;  // terms[n] is the q^n coefficient

  static JacobiExpansion zero(int weight, int index, int truncation);
  static JacobiExpansion one(int truncation);

  int truncation() const { return static_cast<int>(terms.size()); }
  Rational coeff(int n, const DominantWeight& m) const;
  JacobiExpansion truncated(int n) const;
  bool is_zero() const;
  // Same weight, index and coefficients (holomorphic flag ignored).
  bool operator==(const JacobiExpansion& o) const;

  JacobiExpansion operator+(const JacobiExpansion& o) const;
  JacobiExpansion operator-(const JacobiExpansion& o) const;
  JacobiExpansion operator*(const Rational& s) const;
};

// Same data in the monomial basis X^m, with one common denominator.
struct XSeries {
  int weight = 0;
  int index = 0;
  Integer den = 1;
  std::vector<IntTerms> levels;

  int truncation() const { return static_cast<int>(levels.size()); }
  void normalize();
  bool is_zero() const;
  bool operator==(const XSeries& o) const;
  Rational coeff(int n, WeightKey monomial) const;
};

XSeries to_x(const JacobiExpansion& phi);
JacobiExpansion from_x(const XSeries& x, bool holomorphic = false);

XSeries x_add(const XSeries& a, const XSeries& b);
XSeries x_scale(const XSeries& a, const Rational& s);
XSeries x_mul(const XSeries& a, const XSeries& b);
XSeries x_mul_series(const XSeries& a, const QSeries& f, int weight_shift);
XSeries x_div_delta(const XSeries& a, int power);
XSeries x_div_e4(const XSeries& a, int power = 1);
XSeries x_truncated(const XSeries& a, int n);

JacobiExpansion theta_e8(int truncation);
QSeries eval_zero(const JacobiExpansion& phi);
JacobiExpansion scale_z(const JacobiExpansion& phi, int a);
// Index-raising operator V_m on an expansion of weight k.
JacobiExpansion hecke_v(const JacobiExpansion& phi, int m);
// X_t = hecke_v(theta, t) / sigma_3(t).
JacobiExpansion hecke_theta(int t, int truncation);
// Weight 6 index t trace of g_t(tau) theta(t tau, t z) over Gamma_0(t) cosets, with constant term 1.
JacobiExpansion level_trace(int t, int truncation);
// Number of coset triples (A, B, D) used by level_trace.
int level_trace_classes(int t);

JacobiExpansion multiply(const JacobiExpansion& a, const JacobiExpansion& b);
// Orbit-by-orbit product over dominant targets; reference implementation.
JacobiExpansion multiply_direct(const JacobiExpansion& a, const JacobiExpansion& b);
JacobiExpansion mul_series(const JacobiExpansion& phi, const QSeries& f, int weight_shift);
JacobiExpansion div_delta(const JacobiExpansion& phi, int power);
JacobiExpansion div_e4(const JacobiExpansion& phi);

struct SupportViolation {
  int n;
  DominantWeight m;
  Rational coeff;
};
// First (n, m) with 2nt < (m, m) and nonzero coefficient, in canonical order.
std::optional<SupportViolation> check_support(const JacobiExpansion& phi);
// Coefficients at (n, l) with (l, l) != 2nt; used for singular weight.
std::optional<SupportViolation> check_singular_support(const JacobiExpansion& phi);

struct PeriodicityViolation {
  int n1;
  DominantWeight m1;
  int n2;
  DominantWeight m2;
};
// Compares c(n, l) with c(n + (l,x) + t(x,x)/2, l + t x) for x in the shells of norm <= shell_norm.
std::optional<PeriodicityViolation> check_quasi_periodicity(const JacobiExpansion& phi,
                                                            int shell_norm = 1);

}  // namespace e8jac
