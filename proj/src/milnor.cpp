#include "solvcert/milnor.hpp"

#include <algorithm>

namespace solvcert {

namespace {

bool all_known(const std::vector<Entry>& t) {
  return std::all_of(t.begin(), t.end(), [](const Entry& e) { return e.has_value(); });
}

}  // namespace

MilnorProfile MilnorProfile::unknown(std::size_t g) { return MilnorProfile(g); }

MilnorProfile MilnorProfile::zero(std::size_t g) {
  MilnorProfile p(g);
  for (auto* t : {&p.arf_, &p.lk_, &p.sl_, &p.tl_}) std::fill(t->begin(), t->end(), Integer(0));
  return p;
}

bool MilnorProfile::fully_known() const { return arf_known() && all_known(lk_) && sl_known() && tl_known(); }
bool MilnorProfile::sl_known() const { return all_known(sl_); }
bool MilnorProfile::tl_known() const { return all_known(tl_); }
bool MilnorProfile::arf_known() const { return all_known(arf_); }

ZeroSolvability is_zero_solvable(const MilnorProfile& p) {
  bool unknown = false;
  auto scan = [&](const std::vector<Entry>& t, auto&& ok) {
    for (const Entry& e : t) {
      if (!e) {
        unknown = true;
      } else if (!ok(*e)) {
        return false;
      }
    }
    return true;
  };
  auto zero = [](const Integer& x) { return x == 0; };
  auto even = [](const Integer& x) { return is_even(x); };
  if (!scan(p.lk_table(), zero) || !scan(p.arf_table(), even) || !scan(p.sl_table(), even) ||
      !scan(p.tl_table(), zero))
    return ZeroSolvability::No;
  return unknown ? ZeroSolvability::Undetermined : ZeroSolvability::Yes;
}

BitVector assemble_sl(const MilnorProfile& p) {
  BitVector out;
  out.reserve(p.sl_table().size());
  for (const Entry& e : p.sl_table()) {
    if (!e) throw UnknownEntry("Sato-Levine table has unknown entries");
    out.push_back(mod2(*e));
  }
  return out;
}

WedgeVector assemble_tl(const MilnorProfile& p) {
  WedgeVector v = WedgeVector::zero(p.components(), 3);
  for (std::size_t i = 0; i < v.coefficients.size(); ++i) {
    const Entry& e = p.tl_table()[i];
    if (!e) throw UnknownEntry("triple linking table has unknown entries");
    v.coefficients[i] = *e;
  }
  return v;
}

MilnorProfile with_sl(MilnorProfile p, const BitVector& sl) {
  if (sl.size() != p.sl_table().size()) throw DimensionError("S.L. vector has the wrong length");
  for (std::size_t i = 0; i < sl.size(); ++i) p.sl_table()[i] = Integer(sl[i] & 1U);
  return p;
}

MilnorProfile with_tl(MilnorProfile p, const WedgeVector& tl) {
  if (tl.grade != 3 || tl.coefficients.size() != p.tl_table().size())
    throw DimensionError("T.L. vector has the wrong shape");
  for (std::size_t i = 0; i < tl.coefficients.size(); ++i) p.tl_table()[i] = tl.coefficients[i];
  return p;
}

}  // namespace solvcert
