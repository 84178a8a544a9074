#pragma once

// Milnor-invariant profile of a g-component derivative link: Arf invariants of
// the components, pairwise linking numbers, Sato-Levine invariants of the
// 2-component sublinks and triple linking numbers of the 3-component sublinks.
// Any entry may be unknown.

#include "solvcert/exterior.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace solvcert {

using Entry = std::optional<Integer>;

class UnknownEntry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MilnorProfile {
 public:
  MilnorProfile() = default;
  /// Every entry Unknown.
  static MilnorProfile unknown(std::size_t g);
  /// Every entry Known and zero.
  static MilnorProfile zero(std::size_t g);

  std::size_t components() const noexcept { return g_; }

  // 0-based component indices, i < j < k.
  Entry& arf(std::size_t i) { return arf_.at(i); }
  const Entry& arf(std::size_t i) const { return arf_.at(i); }
  Entry& lk(std::size_t i, std::size_t j) { return lk_.at(wedge_position({i, j}, g_)); }
  const Entry& lk(std::size_t i, std::size_t j) const { return lk_.at(wedge_position({i, j}, g_)); }
  Entry& sl(std::size_t i, std::size_t j) { return sl_.at(wedge_position({i, j}, g_)); }
  const Entry& sl(std::size_t i, std::size_t j) const { return sl_.at(wedge_position({i, j}, g_)); }
  Entry& tl(std::size_t i, std::size_t j, std::size_t k) { return tl_.at(wedge_position({i, j, k}, g_)); }
  const Entry& tl(std::size_t i, std::size_t j, std::size_t k) const {
    return tl_.at(wedge_position({i, j, k}, g_));
  }

  // Tables in lexicographic wedge order.
  const std::vector<Entry>& arf_table() const noexcept { return arf_; }
  const std::vector<Entry>& lk_table() const noexcept { return lk_; }
  const std::vector<Entry>& sl_table() const noexcept { return sl_; }
  const std::vector<Entry>& tl_table() const noexcept { return tl_; }
  std::vector<Entry>& sl_table() noexcept { return sl_; }
  std::vector<Entry>& tl_table() noexcept { return tl_; }
  std::vector<Entry>& arf_table() noexcept { return arf_; }

  bool fully_known() const;
  bool sl_known() const;
  bool tl_known() const;
  bool arf_known() const;

  friend bool operator==(const MilnorProfile&, const MilnorProfile&) = default;

 private:
  explicit MilnorProfile(std::size_t g)
      : g_(g), arf_(g), lk_(choose(g, 2)), sl_(choose(g, 2)), tl_(choose(g, 3)) {}

  std::size_t g_ = 0;
  std::vector<Entry> arf_, lk_, sl_, tl_;
};

enum class ZeroSolvability { Yes, No, Undetermined };

/// 0-solvability of the link: lk = 0, Arf = 0, Sato-Levine even, triple linking = 0.
/// No as soon as a known entry violates a condition; Undetermined if all known
/// entries pass but some are unknown.
ZeroSolvability is_zero_solvable(const MilnorProfile& p);

/// S.L. vector over GF(2) in lexicographic pair order. Throws UnknownEntry.
BitVector assemble_sl(const MilnorProfile& p);
/// T.L. vector in lexicographic triple order. Throws UnknownEntry.
WedgeVector assemble_tl(const MilnorProfile& p);

/// Copies of `p` with the S.L. (as 0/1 values) or T.L. tables replaced.
MilnorProfile with_sl(MilnorProfile p, const BitVector& sl);
MilnorProfile with_tl(MilnorProfile p, const WedgeVector& tl);

}  // namespace solvcert
