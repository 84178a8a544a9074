#pragma once

// Seifert matrices, their block form [[0, A], [B, C]] relative to a derivative,
// the Alexander polynomial, the Arf invariant and a bounded metabolizer search.
//
// Convention: M(i, j) = lk(L_i, L_j^+). In block form the derivative is the
// first g basis elements, so the columns of A record lk(L_., alpha_.^+) and
// the columns of B^T record lk(L_., alpha_.^-).

#include "solvcert/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace solvcert {

class InvalidSeifertMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A 2g x 2g integer matrix with det(M - M^T) = 1.
class SeifertMatrix {
 public:
  /// Throws InvalidSeifertMatrix unless `m` is square of even size with det(M - M^T) = 1.
  static SeifertMatrix create(IntMatrix m);

  std::size_t genus() const noexcept { return m_.rows() / 2; }
  const IntMatrix& matrix() const noexcept { return m_; }

 private:
  explicit SeifertMatrix(IntMatrix m) : m_(std::move(m)) {}
  IntMatrix m_;
};

/// Seifert matrix [[0, A], [B, C]] whose zero block certifies the derivative.
class BlockSeifert {
 public:
  /// Throws InvalidSeifertMatrix unless the blocks are g x g and A - B^T is unimodular.
  static BlockSeifert from_blocks(IntMatrix a, IntMatrix b, IntMatrix c);
  /// Splits a 2g x 2g matrix whose top-left g x g block is zero.
  static BlockSeifert from_matrix(const IntMatrix& m);
  static bool is_block_form(const IntMatrix& m);

  std::size_t genus() const noexcept { return a_.rows(); }
  const IntMatrix& a() const noexcept { return a_; }
  const IntMatrix& b() const noexcept { return b_; }
  const IntMatrix& c() const noexcept { return c_; }

  IntMatrix assemble() const;
  SeifertMatrix seifert() const { return SeifertMatrix::create(assemble()); }

  friend bool operator==(const BlockSeifert&, const BlockSeifert&) = default;

 private:
  BlockSeifert(IntMatrix a, IntMatrix b, IntMatrix c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}
  IntMatrix a_, b_, c_;
};

/// Alexander polynomial, stored normalized: nonzero constant term and Δ(1) > 0.
///
/// When computed from a Seifert matrix the raw coefficients of det(M - t M^T)
/// are kept as well; raw = unit_sign * t^shift * normalized.
class AlexanderPoly {
 public:
  static AlexanderPoly from_seifert(const SeifertMatrix& m);
  /// Coefficients low degree first. Throws std::invalid_argument unless the
  /// normalized polynomial is palindromic with Δ(1) = ±1.
  static AlexanderPoly from_coefficients(IntVector low_to_high);

  const IntVector& coefficients() const noexcept { return coeffs_; }
  const std::optional<IntVector>& raw() const noexcept { return raw_; }
  int unit_sign() const noexcept { return sign_; }
  std::size_t shift() const noexcept { return shift_; }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const Integer& leading() const { return coeffs_.back(); }
  Integer evaluate(const Integer& t) const;

  friend bool operator==(const AlexanderPoly&, const AlexanderPoly&) = default;

 private:
  IntVector coeffs_;
  std::optional<IntVector> raw_;
  int sign_ = 1;
  std::size_t shift_ = 0;
};

/// Coefficients (low degree first) of det(M - t M^T), of length 2g + 1.
IntVector seifert_determinant_polynomial(const IntMatrix& m);

/// Arf invariant: 0 iff Δ(-1) ≡ ±1 mod 8.
std::uint8_t arf(const AlexanderPoly& delta);
inline std::uint8_t arf(const SeifertMatrix& m) { return arf(AlexanderPoly::from_seifert(m)); }

enum class SearchStatus { Found, Exhausted, Inconclusive };

struct MetabolizerOptions {
  int bound = 3;                    // coefficient box [-bound, bound]
  std::size_t node_cap = 2'000'000;  // candidate vectors plus search nodes
};

struct MetabolizerResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<std::vector<IntVector>> basis;  // g vectors of length 2g
  std::size_t nodes = 0;
};

/// Bounded search for g primitive vectors spanning an isotropic direct summand.
/// Exhausted means nothing exists inside the box; it does not prove non-sliceness.
MetabolizerResult find_metabolizer(const SeifertMatrix& m, const MetabolizerOptions& opts = {});

struct BlockForm {
  BlockSeifert block;
  IntMatrix change_of_basis;  // P with P^T M P = block.assemble()
};

/// Completes the metabolizer to a unimodular basis whose first g vectors are the
/// metabolizer. Throws std::invalid_argument if it is not an isotropic direct summand.
BlockForm to_block(const SeifertMatrix& m, const std::vector<IntVector>& metabolizer);

/// Re-chooses the complementary curves by a unimodular g x g matrix P:
/// (A, B, C) -> (A P, P^T B, P^T C P).
BlockSeifert basis_change(const BlockSeifert& bk, const IntMatrix& p);

}  // namespace solvcert
