#pragma once

// Infection calculus on Milnor profiles.
//
// A satellite move ties a knot J into the derivative along a curve η on the
// surface; it changes Arf invariants only. A paired move infects along the
// push-offs α^+ and α^- of a wedge of 2 or 3 complementary curves by a string
// link and its reverse mirror; it changes the Sato-Levine (2 strands) or the
// triple linking (3 strands) data by the columns of Λ^k A - Λ^k B^T.
//
// Infecting string links are represented only by the invariants the update
// rules consume; their components are unknotted and pairwise unlinked.

#include "solvcert/exterior.hpp"
#include "solvcert/milnor.hpp"
#include "solvcert/seifert.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace solvcert {

struct SatelliteMove {
  BitVector v;               // v_i = L_i · η mod 2
  std::uint8_t arf_j = 1;    // Arf invariant of the infecting knot

  friend bool operator==(const SatelliteMove&, const SatelliteMove&) = default;
};

/// Paired 2-strand infection along α_i ∨ α_j by (J, -J) with μ̄_1122(Ĵ) = s.
struct PairedMove2 {
  std::size_t i = 0, j = 1;  // 0-based, i < j
  Integer s;

  friend bool operator==(const PairedMove2&, const PairedMove2&) = default;
};

/// Paired 3-strand infection along α_i ∨ α_j ∨ α_k by (X, -X) with μ̄_123(X̂) = m.
struct PairedMove3 {
  std::size_t i = 0, j = 1, k = 2;  // 0-based, i < j < k
  Integer m;

  friend bool operator==(const PairedMove3&, const PairedMove3&) = default;
};

/// Arf_i += v_i * Arf(J) mod 2. Linking, Sato-Levine and triple linking are untouched.
MilnorProfile apply_satellite(MilnorProfile p, const SatelliteMove& mv);

/// μ̄_1122 after infecting a 2-component link along α with linking matrix C (2x2):
/// mu + det(C)^2 * mu_j.
Integer sl_update_single(const Integer& mu, const IntMatrix& c, const Integer& mu_j);

/// The same update mod 2: mu + det(C) * mu_j.
std::uint8_t sl_update_mod2(std::uint8_t mu, const Integer& det_c, const Integer& mu_j);

/// μ̄_123 after infecting a 3-component link: mu + det(C) * mu_j.
Integer tl_update_single(const Integer& mu, const Integer& det_c, const Integer& mu_j);

/// S.L. += s * (A e_i ∧ A e_j - B^T e_i ∧ B^T e_j) over GF(2). Unknown entries stay unknown;
/// entries whose parity flips are stored as 0/1.
MilnorProfile apply_paired2(MilnorProfile p, const IntMatrix& a, const IntMatrix& b, const PairedMove2& mv);

/// T.L. += m * (A e_i ∧ A e_j ∧ A e_k - B^T e_i ∧ B^T e_j ∧ B^T e_k) over Z.
/// Every Sato-Levine entry becomes unknown.
MilnorProfile apply_paired3(MilnorProfile p, const IntMatrix& a, const IntMatrix& b, const PairedMove3& mv);

enum class StageStatus { Empty, Resolved, Deferred };

/// Stage-2 rule for an S.L. vector that is only known after the triple-linking stage:
/// solve (Λ²A - Λ²B^T) y = s over GF(2) and infect along α_i ∨ α_j for every y_ij = 1.
struct SlResolver {
  std::size_t g = 0;
  F2Matrix op;

  /// Throws std::domain_error if `measured` is outside the image (impossible when op is onto).
  std::vector<PairedMove2> resolve(const BitVector& measured) const;
};

struct MovePlan {
  std::vector<PairedMove3> triple_moves;
  IntVector triple_solution;  // x with (Λ³A - Λ³B^T) x = T.L.
  StageStatus sl_stage = StageStatus::Empty;
  std::vector<PairedMove2> sl_moves;     // when Resolved
  std::optional<SlResolver> sl_resolver;  // when Resolved or Deferred
  StageStatus arf_stage = StageStatus::Empty;
  std::optional<SatelliteMove> satellite;

  bool empty() const {
    return triple_moves.empty() && sl_stage == StageStatus::Empty && arf_stage == StageStatus::Empty;
  }
};

enum class PlanStage { TripleLinking = 1, SatoLevine = 2, Arf = 3 };

struct PlanFailure {
  PlanStage stage;
  std::string reason;
};

using PlanOutcome = std::variant<MovePlan, PlanFailure>;

/// Moves that turn the derivative into a 0-solvable link: triple linking first,
/// then Sato-Levine, then Arf. Throws UnknownEntry unless the profile is fully known.
PlanOutcome plan_moves(const BlockSeifert& bk, const MilnorProfile& p);

/// Supplies the S.L. vector measured after the triple-linking stage.
using SlMeasurement = std::function<BitVector(const MilnorProfile&)>;

/// Runs a plan on `p`. A deferred S.L. stage is instantiated with `measure`.
MilnorProfile simulate_plan(const BlockSeifert& bk, MilnorProfile p, const MovePlan& plan,
                            const SlMeasurement& measure);

std::string to_string(PlanStage s);
std::string to_string(StageStatus s);

}  // namespace solvcert
