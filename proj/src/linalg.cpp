#include "solvcert/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace solvcert {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Integer>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::diagonal(std::initializer_list<Integer> entries) {
  return diagonal(std::span<const Integer>(entries.begin(), entries.size()));
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != nc) throw DimensionError("ragged matrix: row " + std::to_string(r + 1));
    for (std::size_t c = 0; c < nc; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  IntMatrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void IntMatrix::set_block(std::size_t r0, std::size_t c0, const IntMatrix& src) {
  if (r0 + src.rows() > rows_ || c0 + src.cols() > cols_) throw DimensionError("block out of range");
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t c = 0; c < src.cols(); ++c) (*this)(r0 + r, c0 + c) = src(r, c);
}

IntMatrix IntMatrix::select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  IntMatrix s(row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r) {
    if (row_idx[r] >= rows_) throw DimensionError("row index out of range");
    for (std::size_t c = 0; c < col_idx.size(); ++c) {
      if (col_idx[c] >= cols_) throw DimensionError("column index out of range");
      s(r, c) = (*this)(row_idx[r], col_idx[c]);
    }
  }
  return s;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("sum of mismatched matrices");
  IntMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("difference of mismatched matrices");
  IntMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) -= b(r, c);
  return out;
}

IntMatrix operator*(const Integer& s, const IntMatrix& m) {
  IntMatrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) *= s;
  return out;
}

IntVector operator*(const IntMatrix& m, std::span<const Integer> x) {
  if (m.cols() != x.size()) throw DimensionError("matrix-vector size mismatch");
  IntVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * x[c];
  return out;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer det(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Bareiss step; the division is exact.
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& p) {
  if (!p.is_square()) return false;
  return abs(det(p)) == 1;
}

std::size_t SNFDecomposition::rank() const {
  std::size_t r = 0;
  const std::size_t n = std::min(D.rows(), D.cols());
  while (r < n && D(r, r) != 0) ++r;
  return r;
}

IntVector SNFDecomposition::invariant_factors() const {
  IntVector out;
  for (std::size_t i = 0; i < rank(); ++i) out.push_back(D(i, i));
  return out;
}

namespace {

// Locate the nonzero entry of smallest magnitude in the trailing block starting at (t, t).
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Integer best;
  for (std::size_t r = t; r < d.rows(); ++r)
    for (std::size_t c = t; c < d.cols(); ++c) {
      if (d(r, c) == 0) continue;
      Integer v = abs(d(r, c));
      if (!found || v < best) {
        best = std::move(v);
        pr = r;
        pc = c;
        found = true;
        if (best == 1) return true;
      }
    }
  return found;
}

}  // namespace

SNFDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t nr = m.rows();
  const std::size_t nc = m.cols();
  SNFDecomposition s{IntMatrix::identity(nr), m, IntMatrix::identity(nc)};
  IntMatrix& d = s.D;
  const std::size_t steps = std::min(nr, nc);

  for (std::size_t t = 0; t < steps; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(d, t, pr, pc)) break;
    for (;;) {
      d.swap_rows(t, pr);
      s.U.swap_rows(t, pr);
      d.swap_cols(t, pc);
      s.V.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < nr; ++r) {
        if (d(r, t) == 0) continue;
        Integer q = d(r, t) / d(t, t);
        d.add_row_multiple(r, t, -q);
        s.U.add_row_multiple(r, t, -q);
        if (d(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < nc; ++c) {
        if (d(t, c) == 0) continue;
        Integer q = d(t, c) / d(t, t);
        d.add_col_multiple(c, t, -q);
        s.V.add_col_multiple(c, t, -q);
        if (d(t, c) != 0) clean = false;
      }
      if (!clean) {
        find_pivot(d, t, pr, pc);
        continue;
      }

      // Row and column are clear; enforce divisibility of the trailing block.
      bool divides_all = true;
      for (std::size_t r = t + 1; r < nr && divides_all; ++r)
        for (std::size_t c = t + 1; c < nc; ++c)
          if (d(r, c) % d(t, t) != 0) {
            d.add_row_multiple(t, r, 1);
            s.U.add_row_multiple(t, r, 1);
            divides_all = false;
            break;
          }
      if (divides_all) break;
      pr = t;
      pc = t;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

IntMatrix unimodular_inverse(const IntMatrix& p) {
  if (!is_unimodular(p)) throw std::invalid_argument("matrix is not unimodular");
  // U P V = I for unimodular P, hence P^{-1} = V U.
  SNFDecomposition s = smith_normal_form(p);
  return s.V * s.U;
}

std::optional<IntVector> z_image_membership(const IntMatrix& m, std::span<const Integer> t) {
  if (t.size() != m.rows())
    throw DimensionError("target has length " + std::to_string(t.size()) + ", matrix has " +
                         std::to_string(m.rows()) + " rows");
  SNFDecomposition s = smith_normal_form(m);
  IntVector ut = s.U * t;
  const std::size_t r = s.rank();
  IntVector y(m.cols());
  for (std::size_t i = 0; i < ut.size(); ++i) {
    if (i < r) {
      if (ut[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = ut[i] / s.D(i, i);
    } else if (ut[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

bool spans_direct_summand(const IntMatrix& m) {
  SNFDecomposition s = smith_normal_form(m);
  if (s.rank() != m.cols()) return false;
  for (std::size_t i = 0; i < s.rank(); ++i)
    if (s.D(i, i) != 1) return false;
  return true;
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * stride_, 0) {}

F2Matrix F2Matrix::identity(std::size_t n) {
  F2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

F2Matrix F2Matrix::reduce(const IntMatrix& m) {
  F2Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (mod2(m(r, c))) out.set(r, c, true);
  return out;
}

void F2Matrix::set(std::size_t r, std::size_t c, bool v) {
  std::uint64_t& w = words_[r * stride_ + c / 64];
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  w = v ? (w | bit) : (w & ~bit);
}

namespace {

// In-place row echelon form over packed rows; returns the pivot column of each pivot row.
std::vector<std::size_t> echelon(std::vector<std::uint64_t>& words, std::size_t rows, std::size_t cols,
                                 std::size_t stride) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    const std::size_t wi = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t p = r;
    while (p < rows && !(words[p * stride + wi] & bit)) ++p;
    if (p == rows) continue;
    if (p != r)
      std::swap_ranges(words.begin() + static_cast<std::ptrdiff_t>(p * stride),
                       words.begin() + static_cast<std::ptrdiff_t>((p + 1) * stride),
                       words.begin() + static_cast<std::ptrdiff_t>(r * stride));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || !(words[i * stride + wi] & bit)) continue;
      for (std::size_t w = wi; w < stride; ++w) words[i * stride + w] ^= words[r * stride + w];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t F2Matrix::rank() const {
  std::vector<std::uint64_t> w = words_;
  return echelon(w, rows_, cols_, stride_).size();
}

BitVector F2Matrix::operator*(const BitVector& x) const {
  if (x.size() != cols_) throw DimensionError("GF(2) matrix-vector size mismatch");
  BitVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint8_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c)
      if (x[c] && get(r, c)) acc ^= 1;
    out[r] = acc;
  }
  return out;
}

bool f2_is_onto(const F2Matrix& m) { return m.rank() == m.rows(); }

std::optional<BitVector> f2_solve(const F2Matrix& m, const BitVector& t) {
  if (t.size() != m.rows())
    throw DimensionError("target has length " + std::to_string(t.size()) + ", matrix has " +
                         std::to_string(m.rows()) + " rows");
  // Augment with t as an extra column.
  const std::size_t cols = m.cols() + 1;
  const std::size_t stride = (cols + 63) / 64;
  std::vector<std::uint64_t> w(m.rows() * stride, 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols_; ++c)
      if (m.get(r, c)) w[r * stride + c / 64] |= std::uint64_t{1} << (c % 64);
    if (t[r] & 1U) w[r * stride + m.cols() / 64] |= std::uint64_t{1} << (m.cols() % 64);
  }
  const std::vector<std::size_t> pivots = echelon(w, m.rows(), cols, stride);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;

  // Reduced echelon form: free variables are zero, each pivot variable reads off the augmented bit.
  BitVector x(m.cols(), 0);
  const std::size_t aug_word = m.cols() / 64;
  const std::uint64_t aug_bit = std::uint64_t{1} << (m.cols() % 64);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = (w[i * stride + aug_word] & aug_bit) ? 1 : 0;
  return x;
}

}  // namespace solvcert
