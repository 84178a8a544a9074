#include "oracles.hpp"

#include "solvcert/linalg.hpp"

#include <doctest.h>

using namespace solvcert;

namespace {

bool is_snf(const SNFDecomposition& d, const IntMatrix& m) {
  if (d.U * m * d.V != d.D) return false;
  if (!is_unimodular(d.U) || !is_unimodular(d.V)) return false;
  const std::size_t k = std::min(d.D.rows(), d.D.cols());
  for (std::size_t r = 0; r < d.D.rows(); ++r)
    for (std::size_t c = 0; c < d.D.cols(); ++c)
      if (r != c && d.D(r, c) != 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (d.D(i, i) < 0) return false;
    if (i + 1 < k) {
      const Integer& a = d.D(i, i);
      const Integer& b = d.D(i + 1, i + 1);
      if (a == 0 ? b != 0 : b % a != 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("determinant examples") {
  CHECK(det(IntMatrix::identity(3)) == 1);
  CHECK(det(IntMatrix::diagonal({2, -2, -4})) == 16);
  CHECK(det(IntMatrix{{0, 1}, {0, 0}}) == 0);
  CHECK(det(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK_THROWS_AS(det(IntMatrix(2, 3)), DimensionError);
}

TEST_CASE("determinant agrees with Leibniz and is multiplicative") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const IntMatrix a = oracle::random_matrix(rng, n, n, -6, 6);
    const IntMatrix b = oracle::random_matrix(rng, n, n, -6, 6);
    REQUIRE(det(a) == oracle::det(a));
    CHECK(det(a * b) == det(a) * det(b));
  }
}

TEST_CASE("determinant needs a pivot swap") {
  const IntMatrix m{{0, 0, 1}, {0, 2, 0}, {3, 0, 0}};
  CHECK(det(m) == -6);
}

TEST_CASE("unimodularity") {
  CHECK(is_unimodular(IntMatrix::identity(4)));
  CHECK_FALSE(is_unimodular(IntMatrix::diagonal({2, 1})));
  CHECK(is_unimodular(IntMatrix{{1, 5}, {0, -1}}));
  CHECK_FALSE(is_unimodular(IntMatrix(2, 3)));
}

TEST_CASE("Smith normal form examples") {
  const IntMatrix m = IntMatrix::diagonal({4, 6});
  const SNFDecomposition d = smith_normal_form(m);
  CHECK(d.D == IntMatrix::diagonal({2, 12}));
  CHECK(is_snf(d, m));

  const SNFDecomposition z = smith_normal_form(IntMatrix(3, 2));
  CHECK(z.D.is_zero());
  CHECK(z.U == IntMatrix::identity(3));
  CHECK(z.V == IntMatrix::identity(2));
  CHECK(z.rank() == 0);

  const SNFDecomposition id = smith_normal_form(IntMatrix::identity(3));
  CHECK(id.D == IntMatrix::identity(3));
}

TEST_CASE("Smith normal form contract on random matrices") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    const IntMatrix m = oracle::random_matrix(rng, r, c, -9, 9);
    const SNFDecomposition d = smith_normal_form(m);
    REQUIRE(is_snf(d, m));
    if (r == c && det(m) != 0) {
      Integer prod = 1;
      for (const Integer& f : d.invariant_factors()) prod *= f;
      CHECK(prod == abs(det(m)));
    }
  }
}

TEST_CASE("Smith normal form handles large entries") {
  const Integer big("123456789012345678901234567890");
  const IntMatrix m{{big, 2 * big}, {3, 7}};
  CHECK(is_snf(smith_normal_form(m), m));
}

TEST_CASE("image membership examples") {
  const IntMatrix m = IntMatrix::diagonal({2, 3, 0});
  const auto x = z_image_membership(m, IntVector{4, 3, 0});
  REQUIRE(x);
  CHECK(*x == IntVector{2, 1, 0});
  CHECK_FALSE(z_image_membership(m, IntVector{1, 0, 0}));
  CHECK_FALSE(z_image_membership(m, IntVector{0, 0, 5}));
  const IntMatrix any{{3, -1}, {4, 4}};
  CHECK(*z_image_membership(any, IntVector{0, 0}) == IntVector{0, 0});
  CHECK_THROWS_AS(z_image_membership(any, IntVector{1}), DimensionError);
}

TEST_CASE("image membership agrees with box enumeration") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> small(-2, 2), wide(-6, 6);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix m = oracle::random_matrix(rng, r, c, -3, 3);
    IntVector target(r);
    if (t % 2 == 0) {
      IntVector x0(c);
      for (auto& v : x0) v = small(rng);
      target = m * x0;
    } else {
      for (auto& v : target) v = wide(rng);
    }
    const auto x = z_image_membership(m, target);
    const bool boxed = oracle::in_box_image(m, target, 5);
    if (x) CHECK(m * *x == target);
    if (boxed) CHECK(x.has_value());
    if (!x) CHECK_FALSE(boxed);
  }
}

TEST_CASE("direct summand test") {
  CHECK(spans_direct_summand(IntMatrix{{1, 0}, {0, 1}, {0, 0}}));
  CHECK_FALSE(spans_direct_summand(IntMatrix{{2}, {0}}));
  CHECK_FALSE(spans_direct_summand(IntMatrix{{1, 1}, {1, 1}}));
  CHECK(spans_direct_summand(IntMatrix{{2}, {3}}));
}

TEST_CASE("unimodular inverse") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 50; ++t) {
    const IntMatrix p = oracle::random_unimodular(rng, 1 + rng() % 5);
    CHECK(p * unimodular_inverse(p) == IntMatrix::identity(p.rows()));
  }
}

TEST_CASE("GF(2) examples") {
  const F2Matrix id = F2Matrix::identity(3);
  CHECK(f2_is_onto(id));
  CHECK(*f2_solve(id, {1, 0, 1}) == BitVector{1, 0, 1});
  CHECK_FALSE(f2_is_onto(F2Matrix(3, 3)));
  const F2Matrix m = F2Matrix::reduce(IntMatrix{{1, 1}, {0, 1}});
  CHECK(*f2_solve(m, {0, 1}) == BitVector{1, 1});
  CHECK_FALSE(f2_solve(F2Matrix::reduce(IntMatrix{{1, 1}, {1, 1}}), {1, 0}));
  CHECK(F2Matrix::reduce(IntMatrix{{-3, 2}}).get(0, 0));
  CHECK_THROWS(f2_solve(id, {1, 0}));
}

TEST_CASE("GF(2) rank and solve agree with span enumeration") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 8;
    const IntMatrix m = oracle::random_matrix(rng, r, c, -2, 2);
    const F2Matrix f = F2Matrix::reduce(m);
    REQUIRE(f.rank() == oracle::f2_rank(m));
    CHECK(f2_is_onto(f) == oracle::f2_onto(m));
    BitVector target(r);
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < r; ++i) {
      target[i] = rng() & 1U;
      mask |= std::uint32_t(target[i]) << i;
    }
    const auto span = oracle::f2_span(m);
    const bool reachable = std::binary_search(span.begin(), span.end(), mask);
    const auto x = f2_solve(f, target);
    CHECK(x.has_value() == reachable);
    if (x) CHECK(f * *x == target);
  }
}

TEST_CASE("GF(2) elimination across word boundaries") {
  // 70 columns forces two words per row.
  F2Matrix m(3, 70);
  m.set(0, 69, true);
  m.set(1, 64, true);
  m.set(1, 69, true);
  m.set(2, 3, true);
  CHECK(m.rank() == 3);
  BitVector t{1, 0, 1};
  const auto x = f2_solve(m, t);
  REQUIRE(x);
  CHECK(m * *x == t);
}
