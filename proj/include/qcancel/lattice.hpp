#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "qcancel/cyclotomic.hpp"

namespace qcancel {

using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector col(std::size_t c) const;
  bool is_zero() const;
  IntMatrix transpose() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);
  void append_row(const IntVector& row);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Determinant of a square integer matrix (fraction-free elimination).
Integer determinant(const IntMatrix& m);

struct HermiteForm {
  IntMatrix H;  // row Hermite normal form
  IntMatrix U;  // unimodular, U * M == H
};

/// Row Hermite normal form: pivots positive, entries above a pivot reduced
/// into [0, pivot), zero rows last.  Pivot ties go to the lowest row index.
HermiteForm hnf(const IntMatrix& m);

struct SmithForm {
  IntMatrix D;  // diagonal, d_1 | d_2 | ..., all >= 0
  IntMatrix U;  // unimodular rows
  IntMatrix V;  // unimodular columns, U * M * V == D
};

SmithForm snf(const IntMatrix& m);

/// Sublattice of Z^n, stored by its canonical (HNF) basis.
class IntegerLattice {
 public:
  explicit IntegerLattice(std::size_t ambient = 0) : ambient_(ambient) {}
  static IntegerLattice from_generators(std::size_t ambient, const std::vector<IntVector>& generators);
  /// (scale Z)^n
  static IntegerLattice scaled_standard(std::size_t ambient, const Integer& scale);
  static IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b);

  std::size_t ambient_dimension() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  /// HNF basis rows.
  const std::vector<IntVector>& basis() const { return basis_; }
  IntMatrix basis_matrix() const { return IntMatrix::from_rows(ambient_, basis_); }

  bool contains(const IntVector& v) const;
  bool is_full_rank() const { return rank() == ambient_; }

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) = default;

 private:
  std::size_t ambient_ = 0;
  std::vector<IntVector> basis_;
};

/// g_i = gcd of the i-th coordinates of all lattice vectors (0 if identically zero).
IntVector coordinate_gcds(const IntegerLattice& lattice);

/// [Z^n : L]; std::nullopt stands for an infinite index (L not of full rank).
std::optional<Integer> lattice_index(const IntegerLattice& lattice);

/// Smallest positive k with k*e_axis in L, or 0 if no nonzero multiple lies in L.
Integer axis_period(const IntegerLattice& lattice, std::size_t axis);

struct NonnegSearchOptions {
  /// Coefficient bound for HNF combinations; 0 selects 3 * max HNF pivot.
  long coefficient_bound = 0;
  /// Maximum number of combinations enumerated before giving up.
  unsigned long long max_combinations = 20'000'000ULL;
};

/// Decides whether L contains a nonzero vector with all coordinates >= 0 and
/// returns one when it does.  Axis multiples are tried first, then bounded
/// enumeration of HNF combinations; throws BoundExceededError if the search
/// space is larger than the configured cap.
std::optional<IntVector> find_nonzero_nonneg_vector(const IntegerLattice& lattice, NonnegSearchOptions options = {});

inline bool has_nonzero_nonneg_vector(const IntegerLattice& lattice, NonnegSearchOptions options = {}) {
  return find_nonzero_nonneg_vector(lattice, options).has_value();
}

/// Mixed system A d = b where row i is read modulo moduli[i] (0 = over Z).
struct CongruenceSystem {
  explicit CongruenceSystem(std::size_t variables = 0) : coefficients(0, variables) {}

  IntMatrix coefficients;  // s x t
  IntVector rhs;           // length s
  IntVector moduli;        // length s, entries >= 0

  std::size_t variables() const { return coefficients.cols(); }
  std::size_t equations() const { return coefficients.rows(); }
  /// Appends one equation; row.size() must equal variables().
  void add_equation(const IntVector& row, const Integer& value, const Integer& modulus);
  bool is_satisfied_by(const IntVector& d) const;
};

struct Solvable {
  IntVector particular;
  IntegerLattice kernel;
};

struct Unsolvable {};

using SolveResult = std::variant<Solvable, Unsolvable>;

/// Solves a mixed congruence system by appending modulus columns and
/// running Smith normal form.  The kernel lattice lives in the original
/// t variables.
SolveResult solve(const CongruenceSystem& system);

}  // namespace qcancel
