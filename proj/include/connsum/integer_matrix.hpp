#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "connsum/integer.hpp"

namespace connsum {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntegerMatrix from_columns(const std::vector<std::vector<Integer>>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Integer> column(std::size_t c) const;
  bool is_zero() const;
  IntegerMatrix transpose() const;
  /// Columns [first, first + count).
  IntegerMatrix column_range(std::size_t first, std::size_t count) const;
  /// Rows [first, first + count).
  IntegerMatrix row_range(std::size_t first, std::size_t count) const;
  /// Largest absolute entry, 0 for an empty matrix.
  Integer max_abs() const;

  std::string to_string() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// [A | B]; both must have the same row count.
IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b);
/// [A ; B]; both must have the same column count.
IntegerMatrix vstack(const IntegerMatrix& a, const IntegerMatrix& b);

/// U·M·V = D with U, V unimodular and D diagonal, d1 | d2 | ... (all >= 0).
struct SmithDecomposition {
  IntegerMatrix u;
  IntegerMatrix d;
  IntegerMatrix v;
  std::size_t rank = 0;
};

/// Full Smith normal form with transforms. The identity U·M·V = D and the
/// divisibility chain are re-checked before returning (throws std::logic_error
/// on failure).
SmithDecomposition smith_normal_form(const IntegerMatrix& m);

/// Nonzero invariant factors d1 | d2 | ... | dr of M (positive, r = rank).
struct InvariantFactors {
  std::size_t rank = 0;
  std::vector<Integer> factors;

  /// Invariant factors greater than one: the torsion of coker M.
  std::vector<Integer> torsion() const;
};

/// Invariant factors without transforms; cheaper than smith_normal_form.
InvariantFactors invariant_factors(const IntegerMatrix& m);

std::size_t rank(const IntegerMatrix& m);

/// Rank over the prime field F_p.
std::size_t rank_mod_p(const IntegerMatrix& m, std::uint32_t p);

/// Columns form a basis of the integer kernel lattice {x ∈ Z^cols | M x = 0}.
IntegerMatrix kernel_basis(const IntegerMatrix& m);

/// Canonical (Hermite normal form) basis of the lattice spanned by the
/// columns of `generators`, returned as columns. Two generator sets span the
/// same lattice iff their hermite bases are equal.
IntegerMatrix hermite_basis(const IntegerMatrix& generators);

}  // namespace connsum
