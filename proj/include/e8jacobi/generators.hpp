#pragma once

// Polynomials in E4, E6 and the W(E8)-invariant generators A1..A5, B2, B3,
// B4, B6, and their Fourier expansions.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "e8jacobi/jacobi.hpp"

namespace e8jac {

enum Gen { kE4, kE6, kA1, kA2, kA3, kA4, kA5, kB2, kB3, kB4, kB6, kNumGens };
using Exponents = std::array<int, kNumGens>;

int gen_weight(int g);
int gen_index(int g);
const char* gen_name(int g);
int weight_of(const Exponents& e);
int index_of(const Exponents& e);
std::string monomial_string(const Exponents& e);  // "A1^3*A2", "1" for the empty monomial

class GeneratorPolynomial {
 public:
  GeneratorPolynomial() = default;
  static GeneratorPolynomial constant(const Rational& c);
  static GeneratorPolynomial generator(Gen g);
  static GeneratorPolynomial monomial(const Exponents& e, const Rational& c = 1);

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Weight and index of a bihomogeneous polynomial; nullopt otherwise or when zero.
  std::optional<std::pair<int, int>> bidegree() const;

  GeneratorPolynomial operator+(const GeneratorPolynomial& o) const;
  GeneratorPolynomial operator-(const GeneratorPolynomial& o) const;
  GeneratorPolynomial operator*(const GeneratorPolynomial& o) const;
  GeneratorPolynomial operator*(const Rational& s) const;
  GeneratorPolynomial pow(int e) const;
  bool operator==(const GeneratorPolynomial& o) const = default;

  // Canonical text: terms in descending exponent order, factors ordered A1..B6, E4, E6.
  std::string to_string() const;

 private:
  void add(const Exponents& e, const Rational& c);
  std::map<Exponents, Rational> terms_;
};

// Accepts +, -, *, ^, parentheses, rationals, implicit multiplication, the
// generator names and the named polynomials P165, Q185, P1..P4.
GeneratorPolynomial parse_polynomial(const std::string& text);

GeneratorPolynomial poly_p165();
GeneratorPolynomial poly_q185();
GeneratorPolynomial poly_p(int j);  // j = 1..4

// All exponent vectors of the given bidegree.
std::vector<Exponents> monomials(int weight, int index, bool allow_e4 = true, bool allow_e6 = true);

struct SakaiGenerators {
  int truncation = 0;
  std::array<JacobiExpansion, kNumGens> forms;  // E4 and E6 as index-0 expansions
  JacobiExpansion b5hat;
  JacobiExpansion b4_trace;  // level_trace(4)
  JacobiExpansion b4_hecke;  // hecke_v(B2, 2) / 33
  Rational b4_alpha;         // B4 = alpha * b4_trace + (1 - alpha) * b4_hecke
};

// Cached by truncation; construction pins B4 and verifies the pinning identity.
std::shared_ptr<const SakaiGenerators> sakai_generators(int truncation);

// B4 from the two index-4 candidates: the combination with reduction E6 that
// satisfies 179712 Delta E4 B5hat = E6 P165 + E4 Q185.
Rational pin_b4(const SakaiGenerators& partial);

class Expander {
 public:
  Expander(std::shared_ptr<const SakaiGenerators> gens, int truncation);
  int truncation() const { return truncation_; }
  const SakaiGenerators& generators() const { return *gens_; }
  const XSeries& generator_x(Gen g);
  XSeries monomial(const Exponents& e);
  XSeries expand_x(const GeneratorPolynomial& p);
  JacobiExpansion expand(const GeneratorPolynomial& p);

 private:
  std::shared_ptr<const SakaiGenerators> gens_;
  int truncation_;
  std::array<std::optional<XSeries>, kNumGens> gx_;
  std::map<Exponents, XSeries> memo_;
  std::map<std::pair<int, int>, QSeries> eisen_memo_;
};

// Residual 179712 Delta E4 B5hat - E6 P165 - E4 Q185 for the given generators.
XSeries lemma31_residual(Expander& ex);

}  // namespace e8jac
