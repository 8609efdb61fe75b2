#include <cctype>

#include "e8jacobi/errors.hpp"
#include "e8jacobi/generators.hpp"

namespace e8jac {

namespace {

constexpr int kWeights[kNumGens] = {4, 6, 4, 4, 4, 4, 4, 6, 6, 6, 6};
constexpr int kIndices[kNumGens] = {0, 0, 1, 2, 3, 4, 5, 2, 3, 4, 6};
constexpr const char* kNames[kNumGens] = {"E4", "E6", "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B6"};
// Printing order of factors: A1..A5, B2..B6, E4, E6.
constexpr int kPrintOrder[kNumGens] = {kA1, kA2, kA3, kA4, kA5, kB2, kB3, kB4, kB6, kE4, kE6};

Exponents print_key(const Exponents& e) {
  Exponents k{};
  for (int i = 0; i < kNumGens; ++i) k[i] = e[kPrintOrder[i]];
  return k;
}

}  // namespace

int gen_weight(int g) { return kWeights[g]; }
int gen_index(int g) { return kIndices[g]; }
const char* gen_name(int g) { return kNames[g]; }

int weight_of(const Exponents& e) {
  int w = 0;
  for (int i = 0; i < kNumGens; ++i) w += kWeights[i] * e[i];
  return w;
}

int index_of(const Exponents& e) {
  int t = 0;
  for (int i = 0; i < kNumGens; ++i) t += kIndices[i] * e[i];
  return t;
}

std::string monomial_string(const Exponents& e) {
  std::string s;
  for (int g : kPrintOrder) {
    if (e[g] == 0) continue;
    if (!s.empty()) s += "*";
    s += kNames[g];
    if (e[g] > 1) s += "^" + std::to_string(e[g]);
  }
  return s.empty() ? "1" : s;
}

// ---------------------------------------------------------------- polynomial

GeneratorPolynomial GeneratorPolynomial::constant(const Rational& c) { return monomial(Exponents{}, c); }

GeneratorPolynomial GeneratorPolynomial::generator(Gen g) {
  Exponents e{};
  e[g] = 1;
  return monomial(e);
}

GeneratorPolynomial GeneratorPolynomial::monomial(const Exponents& e, const Rational& c) {
  GeneratorPolynomial p;
  p.add(e, c);
  return p;
}

void GeneratorPolynomial::add(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::optional<std::pair<int, int>> GeneratorPolynomial::bidegree() const {
  if (terms_.empty()) return std::nullopt;
  const auto& first = terms_.begin()->first;
  const std::pair<int, int> d{weight_of(first), index_of(first)};
  for (const auto& [e, c] : terms_)
    if (weight_of(e) != d.first || index_of(e) != d.second) return std::nullopt;
  return d;
}

GeneratorPolynomial GeneratorPolynomial::operator+(const GeneratorPolynomial& o) const {
  GeneratorPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add(e, c);
  return r;
}

GeneratorPolynomial GeneratorPolynomial::operator-(const GeneratorPolynomial& o) const {
  GeneratorPolynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add(e, -c);
  return r;
}

GeneratorPolynomial GeneratorPolynomial::operator*(const GeneratorPolynomial& o) const {
  GeneratorPolynomial r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e;
      for (int i = 0; i < kNumGens; ++i) e[i] = e1[i] + e2[i];
      r.add(e, c1 * c2);
    }
  return r;
}

GeneratorPolynomial GeneratorPolynomial::operator*(const Rational& s) const {
  GeneratorPolynomial r;
  for (const auto& [e, c] : terms_) r.add(e, c * s);
  return r;
}

GeneratorPolynomial GeneratorPolynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power of a polynomial");
  GeneratorPolynomial r = constant(1), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

std::string GeneratorPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, const std::pair<const Exponents, Rational>*>> order;
  for (const auto& t : terms_) order.emplace_back(print_key(t.first), &t);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::string s;
  for (const auto& [key, term] : order) {
    const auto& [e, c] = *term;
    const bool neg = c < 0;
    const Rational a = neg ? Rational(-c) : c;
    s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    const std::string mono = monomial_string(e);
    if (mono == "1")
      s += a.get_str();
    else if (a == 1)
      s += mono;
    else
      s += a.get_str() + "*" + mono;
  }
  return s;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  GeneratorPolynomial parse() {
    auto p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
  }

  GeneratorPolynomial expr() {
    GeneratorPolynomial p;
    bool neg = false;
    if (peek('+') || peek('-')) neg = s_[pos_++] == '-';
    p = term();
    if (neg) p = p * Rational(-1);
    for (;;) {
      if (peek('+')) {
        ++pos_;
        p = p + term();
      } else if (peek('-')) {
        ++pos_;
        p = p - term();
      } else {
        return p;
      }
    }
  }

  GeneratorPolynomial term() {
    GeneratorPolynomial p = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        p = p * power();
      } else if (peek('/')) {
        ++pos_;
        skip();
        const Integer d = integer();
        if (d == 0) fail("division by zero");
        p = p * (1 / Rational(d));
      } else if (starts_factor()) {
        p = p * power();
      } else {
        return p;
      }
    }
  }

  GeneratorPolynomial power() {
    GeneratorPolynomial base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      const Integer e = integer();
      if (e > 10000) fail("exponent too large");
      base = base.pow(static_cast<int>(e.get_si()));
    }
    return base;
  }

  Integer integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(s_.substr(start, pos_ - start));
  }

  GeneratorPolynomial primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c == '-') {
      ++pos_;
      return power() * Rational(-1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return GeneratorPolynomial::constant(Rational(integer()));
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      for (int g = 0; g < kNumGens; ++g)
        if (name == kNames[g]) return GeneratorPolynomial::generator(static_cast<Gen>(g));
      if (name == "P165") return poly_p165();
      if (name == "Q185") return poly_q185();
      if (name.size() == 2 && name[0] == 'P' && name[1] >= '1' && name[1] <= '4') return poly_p(name[1] - '0');
      pos_ = start;
      fail("unknown symbol '" + name + "'");
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

GeneratorPolynomial parse_polynomial(const std::string& text) { return Parser(text).parse(); }

GeneratorPolynomial poly_p165() {
  static const GeneratorPolynomial p = parse_polynomial(
      "864*A1^3*A2 + 3825*A1*B2^2 - 770*A3*B2*E6 - 840*A2*B3*E6 + 60*A1*B4*E6 + 21*A5*E6^2");
  return p;
}

GeneratorPolynomial poly_q185() {
  static const GeneratorPolynomial p = parse_polynomial(
      "-2880*A1^3*B2 + 1350*A1*A2*B2*E4 + 1920*A1^2*B3*E4 - 70*A3*B2*E4^2 - 600*A2*B3*E4^2"
      " - 60*A1*B4*E4^2 - 567*A1*A2^2*E6 + 672*A1^2*A3*E6 - 2400*B2*B3*E6 - 504*A2*A3*E4*E6"
      " - 21*A5*E4^2*E6");
  return p;
}

GeneratorPolynomial poly_p(int j) {
  static const GeneratorPolynomial p[4] = {
      parse_polynomial("1/4*(-12*A1^2*E4^2 + 17*A2*E4^3 + 10*A2*E6^2 - 15*B2*E4*E6)"),
      parse_polynomial("1/72*(24*A1^2*E4^2 - 14*A2*E4^3 + 5*A2*E6^2 - 15*B2*E4*E6)"),
      parse_polynomial("7/18*(-27*A1*A2*E4^2 - 45*A1*B2*E6 + 37*A3*E4^3 + 35*A3*E6^2)"),
      parse_polynomial(
          "1/864*(126*A1^3*E4^4 - 414*A1^3*E4*E6^2 + 675*A1*A2*E4^2*E6^2 - 243*A1*A2*E4^5"
          " - 1440*A1*B2*E6^3 - 251*A3*E4^3*E6^2 + 122*A3*E4^6 + 465*A3*E6^4 - 20*B3*E4^4*E6"
          " + 980*B3*E4*E6^3)"),
  };
  if (j < 1 || j > 4) throw std::invalid_argument("P_j is defined for j = 1..4");
  return p[j - 1];
}

// ---------------------------------------------------------------- monomials

std::vector<Exponents> monomials(int weight, int index, bool allow_e4, bool allow_e6) {
  std::vector<Exponents> out;
  if (weight < 0 || index < 0 || weight % 2) return out;
  // Index-carrying generators first, then E4^a E6^b fills the remaining weight.
  static constexpr int kIndexed[] = {kA1, kA2, kA3, kA4, kA5, kB2, kB3, kB4, kB6};
  Exponents e{};
  auto rec = [&](auto&& self, int pos, int w_left, int t_left) -> void {
    if (pos == 9) {
      if (t_left != 0) return;
      for (int b = 0; 6 * b <= w_left; ++b) {
        if (b > 0 && !allow_e6) break;
        const int rest = w_left - 6 * b;
        if (rest % 4) continue;
        const int a = rest / 4;
        if (a > 0 && !allow_e4) continue;
        e[kE4] = a;
        e[kE6] = b;
        out.push_back(e);
      }
      e[kE4] = e[kE6] = 0;
      return;
    }
    const int g = kIndexed[pos];
    for (int c = 0; c * kIndices[g] <= t_left && c * kWeights[g] <= w_left; ++c) {
      e[g] = c;
      self(self, pos + 1, w_left - c * kWeights[g], t_left - c * kIndices[g]);
    }
    e[g] = 0;
  };
  rec(rec, 0, weight, index);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace e8jac
