#include "solvcert/seifert.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace solvcert {

SeifertMatrix SeifertMatrix::create(IntMatrix m) {
  if (!m.is_square() || m.rows() % 2 != 0 || m.rows() == 0)
    throw InvalidSeifertMatrix("Seifert matrix must be 2g x 2g with g >= 1, got " + std::to_string(m.rows()) + "x" +
                               std::to_string(m.cols()));
  const Integer d = det(m - m.transpose());
  if (d != 1) throw InvalidSeifertMatrix("det(M - M^T) = " + d.str() + ", expected 1");
  return SeifertMatrix(std::move(m));
}

BlockSeifert BlockSeifert::from_blocks(IntMatrix a, IntMatrix b, IntMatrix c) {
  const std::size_t g = a.rows();
  if (g == 0 || !a.is_square() || b.rows() != g || b.cols() != g || c.rows() != g || c.cols() != g)
    throw InvalidSeifertMatrix("blocks A, B, C must all be g x g with g >= 1");
  // det(M - M^T) = det(A - B^T)^2 for the block form.
  if (!is_unimodular(a - b.transpose()))
    throw InvalidSeifertMatrix("A - B^T is not unimodular, so det(M - M^T) != 1");
  return BlockSeifert(std::move(a), std::move(b), std::move(c));
}

bool BlockSeifert::is_block_form(const IntMatrix& m) {
  if (!m.is_square() || m.rows() % 2 != 0 || m.rows() == 0) return false;
  const std::size_t g = m.rows() / 2;
  return m.block(0, 0, g, g).is_zero();
}

BlockSeifert BlockSeifert::from_matrix(const IntMatrix& m) {
  if (!m.is_square() || m.rows() % 2 != 0 || m.rows() == 0)
    throw InvalidSeifertMatrix("Seifert matrix must be 2g x 2g with g >= 1");
  if (!is_block_form(m)) throw InvalidSeifertMatrix("top-left g x g block is not zero");
  const std::size_t g = m.rows() / 2;
  return from_blocks(m.block(0, g, g, g), m.block(g, 0, g, g), m.block(g, g, g, g));
}

IntMatrix BlockSeifert::assemble() const {
  const std::size_t g = genus();
  IntMatrix m(2 * g, 2 * g);
  m.set_block(0, g, a_);
  m.set_block(g, 0, b_);
  m.set_block(g, g, c_);
  return m;
}

IntVector seifert_determinant_polynomial(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionError("Seifert matrix must be square");
  const std::size_t n = m.rows();
  const IntMatrix mt = m.transpose();

  // Values at t = 0..n, then forward differences give falling-factorial coefficients.
  IntVector diff(n + 1);
  for (std::size_t t = 0; t <= n; ++t) diff[t] = det(m - Integer(t) * mt);
  IntVector newton(n + 1);
  Integer factorial = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    if (k > 0) factorial *= k;
    newton[k] = diff[0] / factorial;  // exact for integer polynomials
    for (std::size_t i = 0; i + k < n; ++i) diff[i] = diff[i + 1] - diff[i];
  }

  // Expand sum newton[k] * t(t-1)...(t-k+1) into monomials.
  IntVector coeffs(n + 1);
  IntVector falling{1};
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t i = 0; i < falling.size(); ++i) coeffs[i] += newton[k] * falling[i];
    IntVector next(falling.size() + 1);
    for (std::size_t i = 0; i < falling.size(); ++i) {
      next[i + 1] += falling[i];
      next[i] -= Integer(k) * falling[i];
    }
    falling = std::move(next);
  }
  return coeffs;
}

namespace {

void normalize(IntVector& c, int& sign, std::size_t& shift) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) throw std::invalid_argument("Alexander polynomial is zero");
  shift = 0;
  while (c[shift] == 0) ++shift;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
  const Integer at_one = std::accumulate(c.begin(), c.end(), Integer(0));
  sign = at_one < 0 ? -1 : 1;
  if (sign < 0)
    for (auto& x : c) x = -x;
}

}  // namespace

AlexanderPoly AlexanderPoly::from_seifert(const SeifertMatrix& m) {
  AlexanderPoly p;
  p.raw_ = seifert_determinant_polynomial(m.matrix());
  p.coeffs_ = *p.raw_;
  normalize(p.coeffs_, p.sign_, p.shift_);
  return p;
}

AlexanderPoly AlexanderPoly::from_coefficients(IntVector low_to_high) {
  AlexanderPoly p;
  p.coeffs_ = std::move(low_to_high);
  normalize(p.coeffs_, p.sign_, p.shift_);
  const Integer at_one = std::accumulate(p.coeffs_.begin(), p.coeffs_.end(), Integer(0));
  if (at_one != 1) throw std::invalid_argument("Alexander polynomial must satisfy Δ(1) = ±1, got " + at_one.str());
  if (!std::equal(p.coeffs_.begin(), p.coeffs_.end(), p.coeffs_.rbegin()))
    throw std::invalid_argument("Alexander polynomial must be palindromic");
  return p;
}

Integer AlexanderPoly::evaluate(const Integer& t) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::uint8_t arf(const AlexanderPoly& delta) {
  const Integer r = floor_mod(delta.evaluate(-1), 8);
  return (r == 1 || r == 7) ? 0 : 1;
}

namespace {

long long gcd_of(long long a, long long b) { return std::gcd(a, b); }
Integer gcd_of(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

// Candidate isotropic primitive vectors inside the box, canonical sign, ordered
// by L1 norm then so that e_1, e_2, ... come first among equals.
template <class T>
struct Searcher {
  std::size_t n;
  std::size_t g;
  std::vector<T> m;  // row-major
  const MetabolizerOptions& opts;
  std::size_t nodes = 0;
  bool capped = false;
  std::vector<std::vector<T>> candidates;
  std::vector<std::size_t> chosen;

  T form(const std::vector<T>& x, const std::vector<T>& y) const {
    T acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      T row = 0;
      for (std::size_t j = 0; j < n; ++j) row += m[i * n + j] * y[j];
      acc += x[i] * row;
    }
    return acc;
  }

  void enumerate() {
    const int b = opts.bound;
    std::vector<T> v(n, -b);
    bool more = true;
    while (more) {
      if (++nodes > opts.node_cap) {
        capped = true;
        return;
      }
      // Canonical: first nonzero entry positive.
      auto first = std::find_if(v.begin(), v.end(), [](const T& x) { return x != 0; });
      if (first != v.end() && *first > 0) {
        T gcd = 0;
        for (const T& x : v) gcd = gcd_of(gcd, x < 0 ? T(-x) : x);
        if (gcd == 1 && form(v, v) == 0) candidates.push_back(v);
      }
      // Odometer step over the box.
      more = false;
      for (std::size_t i = n; i-- > 0;) {
        if (v[i] < b) {
          ++v[i];
          more = true;
          break;
        }
        v[i] = -b;
      }
    }
    auto l1 = [](const std::vector<T>& x) {
      T s = 0;
      for (const T& e : x) s += e < 0 ? T(-e) : e;
      return s;
    };
    std::stable_sort(candidates.begin(), candidates.end(), [&](const auto& x, const auto& y) {
      const T lx = l1(x), ly = l1(y);
      if (lx != ly) return lx < ly;
      return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end());
    });
  }

  IntMatrix columns(const std::vector<std::size_t>& idx) const {
    IntMatrix out(n, idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c)
      for (std::size_t r = 0; r < n; ++r) out(r, c) = Integer(candidates[idx[c]][r]);
    return out;
  }

  bool extend(std::size_t start) {
    if (chosen.size() == g) return true;
    for (std::size_t i = start; i < candidates.size(); ++i) {
      if (++nodes > opts.node_cap) {
        capped = true;
        return false;
      }
      const auto& c = candidates[i];
      bool orthogonal = true;
      for (std::size_t j : chosen)
        if (form(candidates[j], c) != 0 || form(c, candidates[j]) != 0) {
          orthogonal = false;
          break;
        }
      if (!orthogonal) continue;
      chosen.push_back(i);
      if (spans_direct_summand(columns(chosen)) && extend(i + 1)) return true;
      chosen.pop_back();
      if (capped) return false;
    }
    return false;
  }
};

template <class T>
MetabolizerResult run_search(const IntMatrix& mat, const MetabolizerOptions& opts) {
  Searcher<T> s{mat.rows(), mat.rows() / 2, {}, opts, 0, false, {}, {}};
  for (const Integer& x : mat.data()) s.m.push_back(static_cast<T>(x));
  s.enumerate();
  MetabolizerResult res;
  if (!s.capped && s.extend(0)) {
    std::vector<IntVector> basis;
    for (std::size_t i : s.chosen) {
      IntVector v;
      for (const T& x : s.candidates[i]) v.emplace_back(x);
      basis.push_back(std::move(v));
    }
    res.status = SearchStatus::Found;
    res.basis = std::move(basis);
  } else {
    res.status = s.capped ? SearchStatus::Inconclusive : SearchStatus::Exhausted;
  }
  res.nodes = s.nodes;
  return res;
}

}  // namespace

MetabolizerResult find_metabolizer(const SeifertMatrix& sm, const MetabolizerOptions& opts) {
  if (opts.bound < 1) throw std::invalid_argument("metabolizer search bound must be >= 1");
  const IntMatrix& m = sm.matrix();
  const std::size_t g = sm.genus();
  if (BlockSeifert::is_block_form(m)) {
    std::vector<IntVector> basis;
    for (std::size_t i = 0; i < g; ++i) {
      IntVector e(2 * g);
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    return MetabolizerResult{SearchStatus::Found, std::move(basis), 0};
  }
  // |v^T M v| <= n^2 b^2 max|m|; stay inside int64 when that is comfortably bounded.
  Integer max_entry = 0;
  for (const Integer& x : m.data()) max_entry = std::max(max_entry, Integer(abs(x)));
  const Integer n = m.rows();
  const Integer bound_sq = Integer(opts.bound) * opts.bound;
  if (n * n * bound_sq * max_entry < Integer(1) << 60) return run_search<long long>(m, opts);
  return run_search<Integer>(m, opts);
}

BlockForm to_block(const SeifertMatrix& sm, const std::vector<IntVector>& metabolizer) {
  const IntMatrix& m = sm.matrix();
  const std::size_t g = sm.genus();
  const std::size_t n = 2 * g;
  if (metabolizer.size() != g) throw std::invalid_argument("metabolizer must have exactly g vectors");
  IntMatrix v(n, g);
  for (std::size_t c = 0; c < g; ++c) {
    if (metabolizer[c].size() != n) throw std::invalid_argument("metabolizer vectors must have length 2g");
    for (std::size_t r = 0; r < n; ++r) v(r, c) = metabolizer[c][r];
  }
  if (!(v.transpose() * m * v).is_zero()) throw std::invalid_argument("metabolizer is not isotropic");
  if (!spans_direct_summand(v)) throw std::invalid_argument("metabolizer does not span a direct summand");

  // Prefer completing with standard basis vectors; fall back to the Smith form.
  IntMatrix p = v;
  for (std::size_t i = 0; i < n && p.cols() < n; ++i) {
    IntMatrix trial(n, p.cols() + 1);
    trial.set_block(0, 0, p);
    trial(i, p.cols()) = 1;
    if (spans_direct_summand(trial)) p = std::move(trial);
  }
  if (p.cols() < n) {
    // U V W = [I; 0]  =>  P = U^{-1} diag(W^{-1}, I) has V as its first g columns.
    SNFDecomposition s = smith_normal_form(v);
    IntMatrix right = IntMatrix::identity(n);
    right.set_block(0, 0, unimodular_inverse(s.V));
    p = unimodular_inverse(s.U) * right;
  }
  IntMatrix block = p.transpose() * m * p;
  return BlockForm{BlockSeifert::from_matrix(block), std::move(p)};
}

BlockSeifert basis_change(const BlockSeifert& bk, const IntMatrix& p) {
  if (!p.is_square() || p.rows() != bk.genus()) throw DimensionError("change of basis must be g x g");
  if (!is_unimodular(p)) throw std::invalid_argument("change of basis is not unimodular");
  const IntMatrix pt = p.transpose();
  return BlockSeifert::from_blocks(bk.a() * p, pt * bk.b(), pt * bk.c() * p);
}

}  // namespace solvcert
