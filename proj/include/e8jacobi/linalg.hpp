#pragma once

// Exact dense linear algebra over Q by fraction-free (Bareiss) elimination.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "e8jacobi/qseries.hpp"

namespace e8jac {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  // Appends a row; labels are optional but must stay unique when given.
  void add_row(const std::vector<Rational>& row, std::string label = {});
  void set_col_labels(std::vector<std::string> labels);
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }

  std::vector<Rational> apply(const std::vector<Rational>& v) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
  std::vector<std::string> row_labels_, col_labels_;
};

// Row echelon form with integer entries; pivots[i] is the pivot column of row i.
struct Echelon {
  std::vector<std::vector<Integer>> rows;
  std::vector<std::size_t> pivots;
  std::size_t cols = 0;
};

Echelon echelon(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

// Canonical kernel basis: one vector per free column (reduced echelon order),
// integer entries with content 1 and first nonzero entry positive.
std::vector<std::vector<Integer>> kernel_basis(const RationalMatrix& m);

// Solution with all free variables zero, or nullopt when M x = b is inconsistent.
std::optional<std::vector<Rational>> solve(const RationalMatrix& m, const std::vector<Rational>& b);

// Divides by the content and makes the first nonzero entry positive.
void canonicalize(std::vector<Integer>& v);
std::vector<Integer> clear_denominators(const std::vector<Rational>& v);

}  // namespace e8jac
