#pragma once

// Dense exact linear algebra over the rationals. Sizes here stay in the low
// hundreds, so dense storage is the simple choice.

#include <optional>
#include <vector>

#include "hypjac/numbers.hpp"

namespace hypjac {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank by fraction-free (Bareiss) elimination on an integer rescaling.
std::size_t rank(const Matrix& m);

struct Echelon {
  Matrix reduced;                   ///< reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  ///< pivot column of each row
};

Echelon rref(const Matrix& m);

/// A solution of a x = b: pivot variables solved, free variables zero.
/// Empty when the system is inconsistent.
std::optional<std::vector<Rational>> solve(const Matrix& a, const std::vector<Rational>& b);

/// Basis of {x : a x = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const Matrix& a);

/// Row space grown one vector at a time, kept in reduced echelon form.
class IncrementalSpan {
 public:
  explicit IncrementalSpan(std::size_t dim) : dim_(dim) {}
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  /// Adds v; returns false (and leaves the span unchanged) if v already lies in it.
  bool add(std::vector<Rational> v);
  bool contains(std::vector<Rational> v) const;

 private:
  /// Reduces v against the stored rows; returns the first nonzero index or dim_.
  std::size_t reduce(std::vector<Rational>& v) const;

  std::size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace hypjac
