#pragma once

// Sufficient criteria for 1-solvability of an algebraically slice knot, each
// evaluated exactly and reported as a Certificate whose witnesses can be
// re-checked by verify_certificate. No criterion here is necessary, so the
// only verdicts are OneSolvable and NotDetermined.

#include "solvcert/infection.hpp"
#include "solvcert/milnor.hpp"
#include "solvcert/seifert.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace solvcert {

enum class Verdict { OneSolvable, NotDetermined };

enum class Criterion {
  None,
  Genus1,
  Genus2SL,
  Genus2Det,
  Genus3,
  GenusG,
  AlexanderLeading,
  ConnectedSumGenus2,
};

/// Which criteria certify() may try.
enum class CriterionChoice { Auto, Genus1, Genus2, Genus3, General, Alexander };

struct CriterionFailure {
  Criterion criterion = Criterion::None;
  std::string reason;

  friend bool operator==(const CriterionFailure&, const CriterionFailure&) = default;
};

struct Witnesses {
  std::optional<IntMatrix> block_seifert;    // block matrix the criteria ran on
  std::optional<IntMatrix> basis_change;     // P with P^T M P = block_seifert, when re-based
  std::optional<std::vector<IntVector>> metabolizer;
  std::optional<Integer> det_a;
  std::optional<Integer> det_b;
  std::optional<Integer> det_difference;    // det A - det B
  std::optional<Integer> sato_levine;       // μ̄_1122 used by the parity branch
  std::optional<Integer> triple_linking;    // μ̄_123 (genus 3)
  std::optional<Integer> triple_quotient;   // μ̄_123 / (det A - det B)
  std::optional<IntVector> triple_solution;  // (Λ³A - Λ³B^T) x = T.L.
  std::optional<std::size_t> gf2_rank;      // rank of Λ²A - Λ²B^T mod 2
  std::optional<std::size_t> gf2_rows;
  std::optional<Integer> alexander_leading;
  std::optional<MovePlan> plan;
};

struct Certificate {
  Verdict verdict = Verdict::NotDetermined;
  Criterion criterion = Criterion::None;
  CriterionChoice requested = CriterionChoice::Auto;
  Witnesses witnesses;
  std::vector<std::string> notes;
  std::vector<CriterionFailure> failures;

  bool certified() const noexcept { return verdict == Verdict::OneSolvable; }
};

/// Everything a check consumes. Exactly one of `seifert` and `alexander` is set.
struct CheckInput {
  std::size_t genus = 0;
  std::optional<IntMatrix> seifert;  // derivative = first g basis elements when in block form
  std::optional<MilnorProfile> profile;
  std::optional<AlexanderPoly> alexander;
  bool algebraically_slice = false;  // witness flag for Alexander-only input
};

/// Throws std::invalid_argument if known linking numbers are nonzero or the size is wrong.
void check_profile_against(const BlockSeifert& bk, const MilnorProfile& p);

Certificate gate_genus1(const BlockSeifert& bk);
Certificate gate_genus2(const BlockSeifert& bk, const std::optional<MilnorProfile>& p);
Certificate gate_genus3(const BlockSeifert& bk, const MilnorProfile& p);
Certificate gate_general(const BlockSeifert& bk, const MilnorProfile& p);
/// Throws std::invalid_argument unless genus is 2 and the normalized degree is 4.
Certificate gate_alexander(const AlexanderPoly& delta, std::size_t genus, bool algebraically_slice);
/// V and W are genus-1 block Seifert matrices [[0, a], [b, c]] with |a - b| = 1.
/// Throws InvalidSeifertMatrix when either is not in that form.
Certificate gate_connected_sum(const IntMatrix& v, const IntMatrix& w);

/// True if `m` is diag(V, W) with V, W genus-1 block Seifert matrices.
bool is_connected_sum_form(const IntMatrix& m);

struct CertifyOptions {
  MetabolizerOptions metabolizer;
};

/// Runs the requested criteria. Auto tries genus-specific, then general, then Alexander,
/// reporting the first that fires and every failure otherwise.
Certificate certify(const CheckInput& input, CriterionChoice choice = CriterionChoice::Auto,
                    const CertifyOptions& opts = {});

/// Independently re-checks the certificate's witnesses against the input.
bool verify_certificate(const Certificate& c, const CheckInput& input);

std::string to_string(Verdict v);
std::string to_string(Criterion c);
std::string to_string(CriterionChoice c);
std::optional<Verdict> parse_verdict(const std::string& s);
std::optional<Criterion> parse_criterion(const std::string& s);
std::optional<CriterionChoice> parse_criterion_choice(const std::string& s);

}  // namespace solvcert
