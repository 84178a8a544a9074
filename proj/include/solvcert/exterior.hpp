#pragma once

// Wedge-power coordinates and compound (minor) matrices of grade 2 and 3.
//
// Basis of Λ^k Z^g is e_I for strictly increasing index sets I, enumerated
// lexicographically. Indices are 0-based here; the wire format adds one.

#include "solvcert/linalg.hpp"

#include <cstddef>
#include <vector>

namespace solvcert {

using WedgeIndex = std::vector<std::size_t>;

/// All strictly increasing index sets of size `grade` from {0..g-1}, in lexicographic order.
std::vector<WedgeIndex> wedge_basis(std::size_t g, std::size_t grade);

/// Position of `idx` in wedge_basis(g, idx.size()). Throws std::out_of_range for bad indices.
std::size_t wedge_position(const WedgeIndex& idx, std::size_t g);

struct WedgeVector {
  std::size_t grade = 2;
  std::size_t g = 0;
  IntVector coefficients;  // size choose(g, grade)

  static WedgeVector zero(std::size_t g, std::size_t grade);
  /// The basis vector e_I (I strictly increasing).
  static WedgeVector basis(std::size_t g, const WedgeIndex& idx);

  const Integer& operator[](const WedgeIndex& idx) const { return coefficients[wedge_position(idx, g)]; }
  bool is_zero() const;

  friend bool operator==(const WedgeVector&, const WedgeVector&) = default;
};

/// Matrix of the induced map Λ^grade A in lexicographic wedge coordinates.
struct CompoundOperator {
  std::size_t grade = 2;
  std::size_t g = 0;
  IntMatrix entries;  // choose(g, grade) square

  WedgeVector apply(const WedgeVector& v) const;

  friend bool operator==(const CompoundOperator&, const CompoundOperator&) = default;
};

/// Λ^grade A for grade in {2, 3}: entry (I, J) is the minor A[I, J].
CompoundOperator wedge_power(const IntMatrix& a, std::size_t grade);
inline CompoundOperator wedge_square(const IntMatrix& a) { return wedge_power(a, 2); }
inline CompoundOperator wedge_cube(const IntMatrix& a) { return wedge_power(a, 3); }

/// Λ^grade A - Λ^grade B^T.
CompoundOperator difference_operator(const IntMatrix& a, const IntMatrix& b, std::size_t grade);
/// Λ^grade A - Λ^grade B^T reduced mod 2.
F2Matrix difference_operator_mod2(const IntMatrix& a, const IntMatrix& b, std::size_t grade);

/// C e_{p1} ∧ ... ∧ C e_{pk} for the picked columns of a g x n matrix C (k = picks.size() in {2, 3}).
WedgeVector column_wedge(const IntMatrix& c, const std::vector<std::size_t>& picks);

}  // namespace solvcert
