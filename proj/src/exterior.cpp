#include "solvcert/exterior.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace solvcert {

namespace {

void check_grade(std::size_t grade) {
  if (grade != 2 && grade != 3) throw std::invalid_argument("wedge grade must be 2 or 3, got " + std::to_string(grade));
}

void enumerate(std::size_t g, std::size_t grade, std::size_t start, WedgeIndex& cur, std::vector<WedgeIndex>& out) {
  if (cur.size() == grade) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < g; ++i) {
    cur.push_back(i);
    enumerate(g, grade, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<WedgeIndex> wedge_basis(std::size_t g, std::size_t grade) {
  std::vector<WedgeIndex> out;
  out.reserve(choose(g, grade));
  WedgeIndex cur;
  enumerate(g, grade, 0, cur, out);
  return out;
}

std::size_t wedge_position(const WedgeIndex& idx, std::size_t g) {
  // Count index sets that precede idx lexicographically.
  std::size_t pos = 0;
  std::size_t prev = 0;
  const std::size_t k = idx.size();
  for (std::size_t t = 0; t < k; ++t) {
    if (idx[t] >= g || (t > 0 && idx[t] <= idx[t - 1]))
      throw std::out_of_range("wedge index must be strictly increasing and below " + std::to_string(g));
    for (std::size_t v = (t == 0 ? 0 : prev + 1); v < idx[t]; ++v) pos += choose(g - v - 1, k - t - 1);
    prev = idx[t];
  }
  return pos;
}

WedgeVector WedgeVector::zero(std::size_t g, std::size_t grade) {
  check_grade(grade);
  return WedgeVector{grade, g, IntVector(choose(g, grade))};
}

WedgeVector WedgeVector::basis(std::size_t g, const WedgeIndex& idx) {
  WedgeVector v = zero(g, idx.size());
  v.coefficients[wedge_position(idx, g)] = 1;
  return v;
}

bool WedgeVector::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Integer& x) { return x == 0; });
}

WedgeVector CompoundOperator::apply(const WedgeVector& v) const {
  if (v.grade != grade || v.g != g) throw DimensionError("wedge vector does not match operator");
  return WedgeVector{grade, g, entries * v.coefficients};
}

CompoundOperator wedge_power(const IntMatrix& a, std::size_t grade) {
  check_grade(grade);
  if (!a.is_square()) throw DimensionError("wedge power of a non-square matrix");
  const std::size_t g = a.rows();
  const std::vector<WedgeIndex> basis = wedge_basis(g, grade);
  IntMatrix out(basis.size(), basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r)
    for (std::size_t c = 0; c < basis.size(); ++c) out(r, c) = det(a.select(basis[r], basis[c]));
  return CompoundOperator{grade, g, std::move(out)};
}

CompoundOperator difference_operator(const IntMatrix& a, const IntMatrix& b, std::size_t grade) {
  if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("difference operator needs square blocks of equal size");
  CompoundOperator wa = wedge_power(a, grade);
  CompoundOperator wb = wedge_power(b.transpose(), grade);
  return CompoundOperator{grade, a.rows(), wa.entries - wb.entries};
}

F2Matrix difference_operator_mod2(const IntMatrix& a, const IntMatrix& b, std::size_t grade) {
  return F2Matrix::reduce(difference_operator(a, b, grade).entries);
}

WedgeVector column_wedge(const IntMatrix& c, const std::vector<std::size_t>& picks) {
  check_grade(picks.size());
  for (std::size_t p : picks)
    if (p >= c.cols()) throw std::out_of_range("column pick " + std::to_string(p + 1) + " out of range");
  const std::size_t g = c.rows();
  const std::vector<WedgeIndex> basis = wedge_basis(g, picks.size());
  WedgeVector out = WedgeVector::zero(g, picks.size());
  for (std::size_t i = 0; i < basis.size(); ++i) out.coefficients[i] = det(c.select(basis[i], picks));
  return out;
}

}  // namespace solvcert
