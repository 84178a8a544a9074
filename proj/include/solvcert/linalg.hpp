#pragma once

// Exact integer and mod-2 matrix arithmetic.
//
// IntMatrix is a dense row-major matrix of arbitrary-precision integers.
// F2Matrix stores each row bit-packed into 64-bit words so elimination is
// word-wise XOR.

#include "solvcert/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace solvcert {

/// Raised when operand shapes do not fit the operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<Integer>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Integer> entries);
  static IntMatrix diagonal(std::initializer_list<Integer> entries);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Integer> data() const noexcept { return data_; }
  IntVector row(std::size_t r) const;
  IntVector column(std::size_t c) const;

  IntMatrix transpose() const;
  IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const IntMatrix& src);
  /// Submatrix on the given row and column index sets (in the order given).
  IntMatrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t r);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVector data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& s, const IntMatrix& m);
IntVector operator*(const IntMatrix& m, std::span<const Integer> x);
inline IntVector operator*(const IntMatrix& m, const IntVector& x) { return m * std::span<const Integer>(x); }

std::string to_string(const IntMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination. Throws DimensionError if non-square.
Integer det(const IntMatrix& m);

/// True iff `p` is square with |det p| = 1.
bool is_unimodular(const IntMatrix& p);

/// U * M * V = D with U, V unimodular and D diagonal, nonnegative, d1 | d2 | ...
struct SNFDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const;
  IntVector invariant_factors() const;  // nonzero diagonal entries
};

SNFDecomposition smith_normal_form(const IntMatrix& m);

/// Inverse of a unimodular matrix. Throws std::invalid_argument if `p` is not unimodular.
IntMatrix unimodular_inverse(const IntMatrix& p);

/// Some x with m * x = t over the integers, or nullopt if t is not in the image.
std::optional<IntVector> z_image_membership(const IntMatrix& m, std::span<const Integer> t);
inline std::optional<IntVector> z_image_membership(const IntMatrix& m, const IntVector& t) {
  return z_image_membership(m, std::span<const Integer>(t));
}

/// True iff the columns of `m` span a direct summand of Z^rows (all invariant factors equal 1).
bool spans_direct_summand(const IntMatrix& m);

class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);

  static F2Matrix identity(std::size_t n);
  /// Entry-wise reduction mod 2 (negative entries handled).
  static F2Matrix reduce(const IntMatrix& m);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (words_[r * stride_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool v);
  void flip(std::size_t r, std::size_t c) { words_[r * stride_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

  std::size_t rank() const;
  BitVector operator*(const BitVector& x) const;

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

 private:
  friend std::optional<BitVector> f2_solve(const F2Matrix& m, const BitVector& t);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;  // words per row
  std::vector<std::uint64_t> words_;
};

/// Onto iff the GF(2) rank equals the number of rows.
bool f2_is_onto(const F2Matrix& m);

/// Some x with m * x = t over GF(2), or nullopt if inconsistent.
std::optional<BitVector> f2_solve(const F2Matrix& m, const BitVector& t);

}  // namespace solvcert
