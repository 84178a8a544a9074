#include "oracles.hpp"

#include "solvcert/exterior.hpp"
#include "solvcert/seifert.hpp"

#include <doctest.h>

using namespace solvcert;

namespace {

IntMatrix assemble(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c) {
  const std::size_t g = a.rows();
  IntMatrix m(2 * g, 2 * g);
  m.set_block(0, g, a);
  m.set_block(g, 0, b);
  m.set_block(g, g, c);
  return m;
}

// Random block Seifert matrix: A random, B = (A - U)^T for unimodular U.
BlockSeifert random_block(std::mt19937_64& rng, std::size_t g) {
  const IntMatrix a = oracle::random_matrix(rng, g, g, -4, 4);
  const IntMatrix u = oracle::random_unimodular(rng, g);
  return BlockSeifert::from_blocks(a, (a - u).transpose(), oracle::random_matrix(rng, g, g, -3, 3));
}

}  // namespace

TEST_CASE("Seifert matrix validation") {
  CHECK_NOTHROW(SeifertMatrix::create(IntMatrix{{-1, 1}, {0, -1}}));
  CHECK_THROWS_AS(SeifertMatrix::create(IntMatrix{{1, 1}, {1, 1}}), InvalidSeifertMatrix);
  CHECK_THROWS_AS(SeifertMatrix::create(IntMatrix(3, 3)), InvalidSeifertMatrix);
  CHECK_THROWS_AS(SeifertMatrix::create(IntMatrix(2, 4)), InvalidSeifertMatrix);
  // det(M - M^T) = 4 for the doubled form.
  CHECK_THROWS_AS(SeifertMatrix::create(IntMatrix{{0, 2}, {0, 0}}), InvalidSeifertMatrix);
  CHECK(SeifertMatrix::create(IntMatrix{{-1, 1}, {0, -1}}).genus() == 1);
}

TEST_CASE("block Seifert construction") {
  const BlockSeifert bk = BlockSeifert::from_blocks(IntMatrix{{3}}, IntMatrix{{2}}, IntMatrix{{5}});
  CHECK(bk.assemble() == IntMatrix{{0, 3}, {2, 5}});
  CHECK(BlockSeifert::from_matrix(bk.assemble()) == bk);
  CHECK(BlockSeifert::is_block_form(bk.assemble()));
  CHECK_FALSE(BlockSeifert::is_block_form(IntMatrix{{1, 3}, {2, 5}}));
  CHECK_THROWS_AS(BlockSeifert::from_blocks(IntMatrix{{3}}, IntMatrix{{1}}, IntMatrix{{0}}), InvalidSeifertMatrix);
  CHECK_THROWS(BlockSeifert::from_matrix(IntMatrix{{1, 3}, {2, 5}}));
}

TEST_CASE("Alexander polynomial examples") {
  const AlexanderPoly u = AlexanderPoly::from_seifert(SeifertMatrix::create(IntMatrix{{0, 1}, {0, 0}}));
  CHECK(u.coefficients() == IntVector{1});
  CHECK(u.shift() == 1);

  const AlexanderPoly tre = AlexanderPoly::from_seifert(SeifertMatrix::create(IntMatrix{{-1, 1}, {0, -1}}));
  CHECK(tre.coefficients() == IntVector{1, -1, 1});
  CHECK(tre.evaluate(-1) == 3);
  const AlexanderPoly fig8 = AlexanderPoly::from_seifert(SeifertMatrix::create(IntMatrix{{1, 1}, {0, -1}}));
  CHECK(fig8.coefficients() == IntVector{-1, 3, -1});
  CHECK(fig8.evaluate(-1) == -5);

  // Genus 2 block with A = diag(x, y), B = A - I, C = 0: leading coefficient is det M.
  for (int x : {-3, 2, 5})
    for (int y : {-1, 4}) {
      const IntMatrix a = IntMatrix::diagonal({x, y});
      const IntMatrix m = assemble(a, a - IntMatrix::identity(2), IntMatrix(2, 2));
      const auto raw = *AlexanderPoly::from_seifert(SeifertMatrix::create(m)).raw();
      CHECK(raw == oracle::alexander(m));
      CHECK(raw.back() == det(m));
      CHECK(det(m) == Integer(x) * y * (x - 1) * (y - 1));
    }
}

TEST_CASE("Alexander polynomial matches the polynomial-determinant oracle") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    const BlockSeifert bk = random_block(rng, 1 + rng() % 3);
    const IntMatrix m = bk.assemble();
    const AlexanderPoly d = AlexanderPoly::from_seifert(SeifertMatrix::create(m));
    REQUIRE(*d.raw() == oracle::alexander(m));
    CHECK(d.raw()->back() == det(m));
    CHECK(d.evaluate(1) == 1);
    const IntVector& c = d.coefficients();
    CHECK(std::equal(c.begin(), c.end(), c.rbegin()));
  }
}

TEST_CASE("Alexander normalization from coefficients") {
  const AlexanderPoly d = AlexanderPoly::from_coefficients({6, -20, 29, -20, 6});
  CHECK(d.degree() == 4);
  CHECK(d.leading() == 6);
  CHECK(AlexanderPoly::from_coefficients({-6, 20, -29, 20, -6}).coefficients() == d.coefficients());
  CHECK(AlexanderPoly::from_coefficients({0, 0, 6, -20, 29, -20, 6}).coefficients() == d.coefficients());
  CHECK_THROWS(AlexanderPoly::from_coefficients({1, 2, 3}));
  CHECK_THROWS(AlexanderPoly::from_coefficients({2, -1}));
}

TEST_CASE("Arf invariant examples") {
  CHECK(arf(SeifertMatrix::create(IntMatrix{{0, 1}, {0, 0}})) == 0);
  CHECK(arf(SeifertMatrix::create(IntMatrix{{-1, 1}, {0, -1}})) == 1);
  CHECK(arf(SeifertMatrix::create(IntMatrix{{1, 1}, {0, -1}})) == 1);
  CHECK(arf(AlexanderPoly::from_coefficients({6, -20, 29, -20, 6})) == 0);  // Δ(-1) = 81
  CHECK(arf(AlexanderPoly::from_coefficients({2, -5, 7, -5, 2})) == 1);   // Δ(-1) = 21
  CHECK(arf(AlexanderPoly::from_coefficients({2, -2, 1, -2, 2})) == 0);   // Δ(-1) = 9
}

TEST_CASE("metabolizer search examples") {
  const SeifertMatrix g1 = SeifertMatrix::create(IntMatrix{{0, 4}, {3, 7}});
  const MetabolizerResult r = find_metabolizer(g1);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(*r.basis == std::vector<IntVector>{{1, 0}});

  MetabolizerOptions wide;
  wide.bound = 5;
  const MetabolizerResult tre = find_metabolizer(SeifertMatrix::create(IntMatrix{{-1, 1}, {0, -1}}), wide);
  CHECK(tre.status == SearchStatus::Exhausted);
  CHECK_FALSE(tre.basis);
  CHECK_FALSE(oracle::has_isotropic_in_box(IntMatrix{{-1, 1}, {0, -1}}, 5));

  std::mt19937_64 rng(32);
  const BlockSeifert bk = random_block(rng, 3);
  CHECK(*find_metabolizer(bk.seifert()).basis ==
        std::vector<IntVector>{{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}});
}

TEST_CASE("metabolizer search on hidden block forms") {
  std::mt19937_64 rng(33);
  int found = 0;
  for (int t = 0; t < 30; ++t) {
    const std::size_t g = 1 + rng() % 2;
    const BlockSeifert bk = random_block(rng, g);
    const IntMatrix p = oracle::random_unimodular(rng, 2 * g, 3);
    const IntMatrix hidden = p.transpose() * bk.assemble() * p;
    const SeifertMatrix sm = SeifertMatrix::create(hidden);
    const MetabolizerResult r = find_metabolizer(sm);
    if (!r.basis) continue;
    ++found;
    IntMatrix cols(2 * g, g);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t k = 0; k < 2 * g; ++k) cols(k, i) = (*r.basis)[i][k];
    CHECK((cols.transpose() * hidden * cols).is_zero());
    const SNFDecomposition d = smith_normal_form(cols);
    for (const Integer& f : d.invariant_factors()) CHECK(f == 1);
    CHECK(d.rank() == g);

    const BlockForm bf = to_block(sm, *r.basis);
    CHECK(is_unimodular(bf.change_of_basis));
    CHECK(bf.change_of_basis.transpose() * hidden * bf.change_of_basis == bf.block.assemble());
    const IntMatrix blk = bf.block.assemble();
    CHECK(det(blk - blk.transpose()) == 1);
  }
  CHECK(found > 15);
}

TEST_CASE("metabolizer search reports a capped search") {
  MetabolizerOptions tiny;
  tiny.node_cap = 10;
  std::mt19937_64 rng(34);
  const BlockSeifert bk = random_block(rng, 2);
  const IntMatrix p = oracle::random_unimodular(rng, 4);
  const MetabolizerResult r = find_metabolizer(SeifertMatrix::create(p.transpose() * bk.assemble() * p), tiny);
  if (!BlockSeifert::is_block_form(p.transpose() * bk.assemble() * p)) CHECK(r.status == SearchStatus::Inconclusive);
}

TEST_CASE("to_block examples") {
  std::mt19937_64 rng(35);
  const BlockSeifert bk = random_block(rng, 2);
  const BlockForm same = to_block(bk.seifert(), {{1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK(same.change_of_basis == IntMatrix::identity(4));
  CHECK(same.block == bk);

  // Genus 1 with the isotropic vector second.
  for (int x : {-2, 0, 3})
    for (int z : {-1, 4}) {
      const IntMatrix m{{z, x}, {x - 1, 0}};
      const BlockForm bf = to_block(SeifertMatrix::create(m), {{0, 1}});
      const IntMatrix blk = bf.block.assemble();
      CHECK(blk(0, 0) == 0);
      CHECK(abs(blk(0, 1) - blk(1, 0)) == 1);
      CHECK(bf.change_of_basis.transpose() * m * bf.change_of_basis == blk);
      CHECK(((blk(0, 1) == x - 1 && blk(1, 0) == x) || (blk(0, 1) == 1 - x && blk(1, 0) == -x)));
    }

  const SeifertMatrix tre = SeifertMatrix::create(IntMatrix{{-1, 1}, {0, -1}});
  CHECK_THROWS(to_block(tre, {{1, 0}}));
  const SeifertMatrix g1 = SeifertMatrix::create(IntMatrix{{0, 4}, {3, 7}});
  CHECK_THROWS(to_block(g1, {{2, 0}}));
}

TEST_CASE("basis change") {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 60; ++t) {
    const std::size_t g = 1 + rng() % 4;
    const BlockSeifert bk = random_block(rng, g);
    CHECK(basis_change(bk, IntMatrix::identity(g)) == bk);
    const IntMatrix p = oracle::random_unimodular(rng, g);
    const IntMatrix q = oracle::random_unimodular(rng, g);
    const BlockSeifert moved = basis_change(bk, p);
    CHECK(moved.a() == bk.a() * p);
    CHECK(moved.b() == p.transpose() * bk.b());
    CHECK(basis_change(moved, q) == basis_change(bk, p * q));
    const Integer before = det(bk.a()) - det(bk.b());
    const Integer after = det(moved.a()) - det(moved.b());
    CHECK((after == before || after == -before));
    // Congruent to the original Seifert matrix.
    IntMatrix full = IntMatrix::identity(2 * g);
    full.set_block(g, g, p);
    CHECK(full.transpose() * bk.assemble() * full == moved.assemble());
  }
  const BlockSeifert bk = random_block(rng, 2);
  CHECK_THROWS(basis_change(bk, IntMatrix::diagonal({2, 1})));
}
