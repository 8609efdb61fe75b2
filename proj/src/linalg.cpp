#include "e8jacobi/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace e8jac {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

void RationalMatrix::add_row(const std::vector<Rational>& row, std::string label) {
  if (rows_ == 0 && a_.empty() && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("row length does not match column count");
  if (!label.empty()) {
    if (row_labels_.size() < rows_) row_labels_.resize(rows_);
    if (std::find(row_labels_.begin(), row_labels_.end(), label) != row_labels_.end())
      throw std::invalid_argument("duplicate row label " + label);
  }
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
  if (!label.empty() || !row_labels_.empty()) {
    row_labels_.resize(rows_);
    row_labels_.back() = std::move(label);
  }
}

void RationalMatrix::set_col_labels(std::vector<std::string> labels) {
  if (labels.size() != cols_) throw std::invalid_argument("column label count mismatch");
  std::unordered_set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw std::invalid_argument("column labels are not unique");
  col_labels_ = std::move(labels);
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length does not match column count");
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn(at(i, j)) != 0 && sgn(v[j]) != 0) out[i] += at(i, j) * v[j];
  return out;
}

void canonicalize(std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return;
  auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return sgn(x) != 0; });
  if (sgn(*first) < 0) g = -g;
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

std::vector<Integer> clear_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (l / v[i].get_den());
  return out;
}

namespace {

struct RowHash {
  std::size_t operator()(const std::vector<Integer>& r) const {
    std::size_t h = r.size();
    for (const auto& x : r) h = h * 1000003u ^ mpz_get_ui(x.get_mpz_t()) ^ (sgn(x) < 0 ? 0x9e37u : 0u);
    return h;
  }
};

// Integer rows, each content-reduced and sign-normalized; zero rows and
// repeated rows are dropped since they do not change the row space.
std::vector<std::vector<Integer>> integer_rows(const RationalMatrix& m) {
  std::vector<std::vector<Integer>> out;
  std::unordered_set<std::vector<Integer>, RowHash> seen;
  std::vector<Rational> row(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row[j] = m.at(i, j);
      nonzero |= sgn(row[j]) != 0;
    }
    if (!nonzero) continue;
    auto r = clear_denominators(row);
    canonicalize(r);
    if (seen.insert(r).second) out.push_back(std::move(r));
  }
  // Deterministic order independent of the input row order.
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
      if (int c = cmp(a[j], b[j]); c != 0) return c < 0;
    return false;
  });
  return out;
}

Echelon bareiss(std::vector<std::vector<Integer>> a, std::size_t cols) {
  Echelon e;
  e.cols = cols;
  Integer prev = 1;
  std::size_t r = 0;
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    std::size_t best = n;
    std::size_t best_bits = 0;
    for (std::size_t i = r; i < n; ++i) {
      if (sgn(a[i][c]) == 0) continue;
      const std::size_t bits = mpz_sizeinbase(a[i][c].get_mpz_t(), 2);
      if (best == n || bits < best_bits) best = i, best_bits = bits;
    }
    if (best == n) continue;
    std::swap(a[r], a[best]);
    const Integer& p = a[r][c];
    for (std::size_t i = r + 1; i < n; ++i) {
      Integer& f = a[i][c];
      if (sgn(f) == 0) {
        for (std::size_t j = c + 1; j < cols; ++j)
          if (sgn(a[i][j]) != 0) {
            a[i][j] *= p;
            mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
          }
        continue;
      }
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer& x = a[i][j];
        x *= p;
        mpz_submul(x.get_mpz_t(), f.get_mpz_t(), a[r][j].get_mpz_t());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
      f = 0;
    }
    prev = p;
    e.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

// Reduced echelon rows over Q: row i has 1 at pivots[i] and 0 at other pivots.
std::vector<std::vector<Rational>> reduced(const Echelon& e) {
  const std::size_t r = e.rows.size();
  std::vector<std::vector<Rational>> red(r, std::vector<Rational>(e.cols));
  for (std::size_t i = r; i-- > 0;) {
    auto& row = red[i];
    for (std::size_t j = 0; j < e.cols; ++j) row[j] = Rational(e.rows[i][j]);
    for (std::size_t k = i + 1; k < r; ++k) {
      const Rational f = row[e.pivots[k]];
      if (sgn(f) == 0) continue;
      for (std::size_t j = e.pivots[k]; j < e.cols; ++j)
        if (sgn(red[k][j]) != 0) row[j] -= f * red[k][j];
    }
    const Rational p = row[e.pivots[i]];
    for (auto& x : row)
      if (sgn(x) != 0) x /= p;
  }
  return red;
}

}  // namespace

Echelon echelon(const RationalMatrix& m) { return bareiss(integer_rows(m), m.cols()); }

std::size_t rank(const RationalMatrix& m) { return echelon(m).pivots.size(); }

std::vector<std::vector<Integer>> kernel_basis(const RationalMatrix& m) {
  const Echelon e = echelon(m);
  const auto red = reduced(e);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Integer>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < red.size(); ++i) v[e.pivots[i]] = -red[i][f];
    auto iv = clear_denominators(v);
    canonicalize(iv);
    out.push_back(std::move(iv));
  }
  return out;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length does not match row count");
  RationalMatrix aug;
  std::vector<Rational> row(m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
    row[m.cols()] = b[i];
    aug.add_row(row);
  }
  if (m.rows() == 0) return std::vector<Rational>(m.cols());
  const Echelon e = echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  const auto red = reduced(e);
  std::vector<Rational> x(m.cols());
  for (std::size_t i = 0; i < red.size(); ++i) x[e.pivots[i]] = red[i][m.cols()];
  return x;
}

}  // namespace e8jac
