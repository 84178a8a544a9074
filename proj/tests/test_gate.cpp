#include "oracles.hpp"

#include "solvcert/gate.hpp"

#include <doctest.h>

using namespace solvcert;

namespace {

BlockSeifert diag_block(std::initializer_list<Integer> xs) {
  const IntMatrix a = IntMatrix::diagonal(xs);
  return BlockSeifert::from_blocks(a, a - IntMatrix::identity(a.rows()), IntMatrix(a.rows(), a.rows()));
}

BlockSeifert random_block(std::mt19937_64& rng, std::size_t g, int lo = -4, int hi = 4) {
  const IntMatrix a = oracle::random_matrix(rng, g, g, lo, hi);
  return BlockSeifert::from_blocks(a, (a - oracle::random_unimodular(rng, g)).transpose(),
                                   oracle::random_matrix(rng, g, g, -2, 2));
}

MilnorProfile profile_with_tl(std::size_t g, const IntVector& tl) {
  MilnorProfile p = MilnorProfile::zero(g);
  for (std::size_t i = 0; i < tl.size(); ++i) p.tl_table()[i] = tl[i];
  return p;
}

CheckInput seifert_input(const IntMatrix& m, std::optional<MilnorProfile> p = {}) {
  CheckInput in;
  in.genus = m.rows() / 2;
  in.seifert = m;
  in.profile = std::move(p);
  return in;
}

bool has_failure(const Certificate& c, Criterion k, const std::string& needle) {
  for (const CriterionFailure& f : c.failures)
    if (f.criterion == k && f.reason.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("genus 1 gate") {
  for (int x = -10; x <= 10; ++x)
    for (int z : {-3, 0, 8}) {
      const BlockSeifert bk = BlockSeifert::from_blocks(IntMatrix{{x}}, IntMatrix{{x - 1}}, IntMatrix{{z}});
      const Certificate c = gate_genus1(bk);
      CHECK(c.certified());
      CHECK(c.criterion == Criterion::Genus1);
      CHECK(verify_certificate(c, seifert_input(bk.assemble())));
    }
  CHECK_THROWS(gate_genus1(diag_block({2, 3})));
}

TEST_CASE("genus 2 gate") {
  SUBCASE("determinant branch for same-parity diagonal blocks") {
    for (int x : {-4, -1, 2, 3, 7})
      for (int y : {-3, 0, 1, 5}) {
        if ((x - y) % 2 != 0) continue;
        const Certificate c = gate_genus2(diag_block({x, y}), std::nullopt);
        CHECK(c.certified());
        CHECK(c.criterion == Criterion::Genus2Det);
        CHECK(*c.witnesses.det_difference == x + y - 1);
      }
  }
  SUBCASE("parity branch") {
    MilnorProfile p = MilnorProfile::zero(2);
    p.sl(0, 1) = Integer(4);
    const Certificate c = gate_genus2(diag_block({2, 1}), p);
    CHECK(c.criterion == Criterion::Genus2SL);
    CHECK(*c.witnesses.sato_levine == 4);
  }
  SUBCASE("both branches fail") {
    MilnorProfile p = MilnorProfile::zero(2);
    p.sl(0, 1) = Integer(1);
    const BlockSeifert bk = BlockSeifert::from_blocks(IntMatrix::diagonal({2, 1}), IntMatrix::diagonal({1, 0}),
                                                      IntMatrix(2, 2));
    const Certificate c = gate_genus2(bk, p);
    CHECK_FALSE(c.certified());
    CHECK(c.criterion == Criterion::None);
    CHECK(*c.witnesses.det_difference == 2);
    CHECK(has_failure(c, Criterion::Genus2SL, "odd"));
    CHECK(has_failure(c, Criterion::Genus2Det, "even"));
    CHECK(has_failure(gate_genus2(bk, std::nullopt), Criterion::Genus2SL, "unavailable"));
  }
  SUBCASE("profile validation") {
    MilnorProfile linked = MilnorProfile::zero(2);
    linked.lk(0, 1) = Integer(1);
    CHECK_THROWS(gate_genus2(diag_block({2, 1}), linked));
    CHECK_THROWS(gate_genus2(diag_block({2, 1}), MilnorProfile::zero(3)));
    CHECK_THROWS(gate_genus2(diag_block({1, 1, 1}), std::nullopt));
  }
}

TEST_CASE("genus 3 gate") {
  for (const Integer& mu : {Integer(0), Integer(1), Integer(-5), Integer("100000000000000000000")}) {
    const Certificate c = gate_genus3(diag_block({2, -2, -4}), profile_with_tl(3, {mu}));
    CHECK(c.certified());
    CHECK(c.criterion == Criterion::Genus3);
    CHECK(*c.witnesses.triple_quotient == mu);
    CHECK(*c.witnesses.gf2_rank == 3);
  }
  // det A - det B = 0.
  const BlockSeifert flat = BlockSeifert::from_blocks(IntMatrix::diagonal({1, 1, 0}), IntMatrix::diagonal({0, 0, -1}),
                                                      IntMatrix(3, 3));
  REQUIRE(det(flat.a()) - det(flat.b()) == 0);
  const Certificate nd = gate_genus3(flat, profile_with_tl(3, {1}));
  CHECK_FALSE(nd.certified());
  CHECK(has_failure(nd, Criterion::Genus3, "not a multiple"));
  CHECK_FALSE(nd.witnesses.triple_quotient);
  CHECK(gate_genus3(flat, profile_with_tl(3, {0})).witnesses.triple_quotient == Integer(0));

  // Divisibility, exactly.
  const BlockSeifert three = diag_block({3, 3, 3});  // 27 - 8 = 19
  CHECK(gate_genus3(three, profile_with_tl(3, {38})).certified());
  CHECK_FALSE(gate_genus3(three, profile_with_tl(3, {20})).certified());

  CHECK_THROWS(gate_genus3(diag_block({1, 1}), MilnorProfile::zero(2)));
  const Certificate unknown = gate_genus3(diag_block({2, -2, -4}), MilnorProfile::unknown(3));
  CHECK_FALSE(unknown.certified());
  CHECK(has_failure(unknown, Criterion::Genus3, "unavailable"));
}

TEST_CASE("general gate agrees with the genus 3 gate") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> d(-12, 12);
  int certified = 0;
  for (int t = 0; t < 200; ++t) {
    const BlockSeifert bk = random_block(rng, 3, -3, 3);
    MilnorProfile p = MilnorProfile::zero(3);
    const Integer diff = det(bk.a()) - det(bk.b());
    p.tl(0, 1, 2) = t % 3 == 0 ? Integer(d(rng)) : diff * d(rng);
    const Certificate g3 = gate_genus3(bk, p);
    const Certificate gg = gate_general(bk, p);
    REQUIRE(g3.verdict == gg.verdict);
    if (gg.certified()) {
      ++certified;
      CHECK(verify_certificate(gg, seifert_input(bk.assemble(), p)));
    }
  }
  CHECK(certified > 20);
}

TEST_CASE("general gate examples") {
  // T.L. = 0 and identity grade-2 operator mod 2.
  const Certificate c = gate_general(diag_block({3, 5, 7, 9}), MilnorProfile::zero(4));
  CHECK(c.certified());
  REQUIRE(c.witnesses.plan);
  CHECK(c.witnesses.plan->empty());

  const Certificate unknown = gate_general(diag_block({3, 5, 7}), MilnorProfile::unknown(3));
  CHECK_FALSE(unknown.certified());
  CHECK(has_failure(unknown, Criterion::GenusG, "unknown"));
}

TEST_CASE("general gate, genus 4 operator with invariant factors 1, 1, 2, 0") {
  const IntMatrix a{{0, 0, 2, 2}, {1, 1, 0, -1}, {-1, -2, 0, -2}, {0, 0, 0, 1}};
  const IntMatrix b{{-1, 1, -1, 0}, {1, 0, -2, 0}, {3, -1, -1, 0}, {4, -4, -3, 0}};
  const BlockSeifert bk = BlockSeifert::from_blocks(a, b, IntMatrix(4, 4));
  const IntMatrix d3 = difference_operator(a, b, 3).entries;
  REQUIRE(d3 == oracle::compound(a, 3) - oracle::compound(b.transpose(), 3));
  const SNFDecomposition snf = smith_normal_form(d3);
  REQUIRE(snf.D == IntMatrix::diagonal({1, 1, 2, 0}));
  const IntMatrix u_inv = unimodular_inverse(snf.U);

  // U t = e_4 lands on the zero invariant factor; U t = e_3 on the factor 2.
  for (const IntVector& ut : {IntVector{0, 0, 0, 1}, IntVector{0, 0, 1, 0}, IntVector{3, -1, 1, 2}}) {
    const IntVector tl = u_inv * ut;
    CHECK_FALSE(oracle::in_box_image(d3, tl, 5));
    const Certificate c = gate_general(bk, profile_with_tl(4, tl));
    CHECK_FALSE(c.certified());
    CHECK(has_failure(c, Criterion::GenusG, "not in the image"));
    CHECK_FALSE(c.witnesses.triple_solution);
  }
  // In the image: (U t)_3 even and (U t)_4 = 0.
  const IntVector tl = u_inv * IntVector{5, -2, 4, 0};
  const Certificate c = gate_general(bk, profile_with_tl(4, tl));
  REQUIRE(c.witnesses.triple_solution);
  CHECK(d3 * *c.witnesses.triple_solution == tl);
  CHECK_FALSE(has_failure(c, Criterion::GenusG, "not in the image"));
}

TEST_CASE("Alexander gate") {
  const AlexanderPoly k = AlexanderPoly::from_coefficients({6, -20, 29, -20, 6});
  const Certificate c = gate_alexander(k, 2, true);
  CHECK(c.certified());
  CHECK(c.criterion == Criterion::AlexanderLeading);
  CHECK(*c.witnesses.alexander_leading == 6);
  CHECK_FALSE(gate_alexander(k, 2, false).certified());

  // Leading coefficients 4 and -2.
  const AlexanderPoly four = AlexanderPoly::from_coefficients({4, -12, 17, -12, 4});
  CHECK_FALSE(gate_alexander(four, 2, true).certified());
  const AlexanderPoly minus_two = AlexanderPoly::from_coefficients({-2, 6, -7, 6, -2});
  CHECK(minus_two.leading() == -2);
  CHECK(gate_alexander(minus_two, 2, true).certified());

  // Δ -> -Δ normalizes to the same polynomial.
  CHECK(AlexanderPoly::from_coefficients({-6, 20, -29, 20, -6}).coefficients() == k.coefficients());
  CHECK(gate_alexander(AlexanderPoly::from_coefficients({-6, 20, -29, 20, -6}), 2, true).certified());

  CHECK_THROWS(gate_alexander(k, 3, true));
  CHECK_THROWS(gate_alexander(AlexanderPoly::from_coefficients({1, -1, 1}), 2, true));
}

TEST_CASE("connected-sum gate") {
  auto genus1 = [](int x, int z) { return IntMatrix{{0, x}, {x - 1, z}}; };
  SUBCASE("matching parity needs no flip") {
    const Certificate c = gate_connected_sum(genus1(3, 1), genus1(3, -2));
    CHECK(c.certified());
    CHECK(c.criterion == Criterion::ConnectedSumGenus2);
    CHECK(c.notes.empty());
  }
  SUBCASE("mismatched parity is flipped") {
    for (auto [x, y] : {std::pair{3, 0}, std::pair{0, 1}, std::pair{-4, 7}}) {
      const IntMatrix v = genus1(x, 2), w = genus1(y, 5);
      const Certificate c = gate_connected_sum(v, w);
      CHECK(c.certified());
      CHECK_FALSE(c.notes.empty());
      IntMatrix m(4, 4);
      m.set_block(0, 0, v);
      m.set_block(2, 2, w);
      const IntMatrix& p = *c.witnesses.basis_change;
      CHECK(is_unimodular(p));
      CHECK(p.transpose() * m * p == *c.witnesses.block_seifert);
      CHECK(!is_even(*c.witnesses.det_difference));
      CHECK(verify_certificate(c, seifert_input(m)));
    }
  }
  SUBCASE("blocks with the other orientation") {
    const IntMatrix v{{0, 2}, {3, 1}};
    CHECK(gate_connected_sum(v, genus1(5, 0)).certified());
  }
  SUBCASE("malformed blocks") {
    CHECK_THROWS_AS(gate_connected_sum(IntMatrix{{1, 2}, {1, 0}}, genus1(1, 1)), InvalidSeifertMatrix);
    CHECK_THROWS_AS(gate_connected_sum(IntMatrix{{0, 3}, {1, 0}}, genus1(1, 1)), InvalidSeifertMatrix);
  }
}

TEST_CASE("certify picks criteria in priority order") {
  MilnorProfile p = MilnorProfile::zero(3);
  p.tl(0, 1, 2) = Integer(7);
  const Certificate c = certify(seifert_input(diag_block({2, -2, -4}).assemble(), p));
  CHECK(c.criterion == Criterion::Genus3);
  const Certificate g = certify(seifert_input(diag_block({2, -2, -4}).assemble(), p), CriterionChoice::General);
  CHECK(g.criterion == Criterion::GenusG);
  CHECK(g.requested == CriterionChoice::General);

  // Genus 2 with both branches failing falls through to the Alexander criterion.
  const BlockSeifert bk = BlockSeifert::from_blocks(IntMatrix::diagonal({2, 1}), IntMatrix::diagonal({1, 0}),
                                                    IntMatrix(2, 2));
  const Certificate nd = certify(seifert_input(bk.assemble()));
  CHECK_FALSE(nd.certified());
  CHECK(has_failure(nd, Criterion::Genus2Det, "even"));
  CHECK(has_failure(nd, Criterion::GenusG, "no Milnor profile"));
  CHECK(verify_certificate(nd, seifert_input(bk.assemble())));

  CHECK_THROWS(certify(seifert_input(diag_block({2, -2, -4}).assemble()), CriterionChoice::Genus3));
  CheckInput both = seifert_input(diag_block({2, 1}).assemble());
  both.alexander = AlexanderPoly::from_coefficients({6, -20, 29, -20, 6});
  CHECK_THROWS(certify(both));
}

TEST_CASE("certify from an Alexander polynomial only") {
  CheckInput in;
  in.genus = 2;
  in.alexander = AlexanderPoly::from_coefficients({6, -20, 29, -20, 6});
  in.algebraically_slice = true;
  const Certificate c = certify(in);
  CHECK(c.criterion == Criterion::AlexanderLeading);
  CHECK(verify_certificate(c, in));
  CHECK_THROWS(certify(in, CriterionChoice::Genus2));
}

TEST_CASE("certify finds a hidden derivative") {
  std::mt19937_64 rng(52);
  int found = 0;
  for (int t = 0; t < 20; ++t) {
    const BlockSeifert bk = random_block(rng, 2, -2, 2);
    const IntMatrix q = oracle::random_unimodular(rng, 4, 3);
    const IntMatrix m = q.transpose() * bk.assemble() * q;
    if (BlockSeifert::is_block_form(m)) continue;
    const Certificate c = certify(seifert_input(m, MilnorProfile::zero(2)));
    if (!c.witnesses.metabolizer) continue;
    ++found;
    REQUIRE(c.witnesses.basis_change);
    CHECK(c.witnesses.basis_change->transpose() * m * *c.witnesses.basis_change == *c.witnesses.block_seifert);
    CHECK(verify_certificate(c, seifert_input(m, MilnorProfile::zero(2))));
  }
  CHECK(found > 5);
}

TEST_CASE("certify reports a missing metabolizer") {
  const Certificate c = certify(seifert_input(IntMatrix{{-1, 1}, {0, -1}}));
  CHECK_FALSE(c.certified());
  CHECK(has_failure(c, Criterion::None, "no metabolizer"));
}

TEST_CASE("verify_certificate rejects tampering") {
  MilnorProfile p = MilnorProfile::zero(3);
  p.tl(0, 1, 2) = Integer(5);
  p.arf(2) = Integer(1);
  const CheckInput in = seifert_input(diag_block({2, -2, -4}).assemble(), p);
  Certificate c = certify(in, CriterionChoice::General);
  REQUIRE(c.certified());
  CHECK(verify_certificate(c, in));

  Certificate bad_x = c;
  (*bad_x.witnesses.triple_solution)[0] += 1;
  CHECK_FALSE(verify_certificate(bad_x, in));

  Certificate bad_plan = c;
  bad_plan.witnesses.plan->satellite.reset();
  CHECK_FALSE(verify_certificate(bad_plan, in));

  Certificate bad_criterion = c;
  bad_criterion.criterion = Criterion::Genus2Det;
  CHECK_FALSE(verify_certificate(bad_criterion, in));

  Certificate g3 = certify(in);
  g3.witnesses.triple_quotient = Integer(4);
  CHECK_FALSE(verify_certificate(g3, in));

  Certificate flipped = certify(in);
  flipped.verdict = Verdict::NotDetermined;
  flipped.criterion = Criterion::None;
  CHECK_FALSE(verify_certificate(flipped, in));

  const CheckInput g2 = seifert_input(diag_block({3, 5}).assemble());
  Certificate d = certify(g2);
  REQUIRE(d.criterion == Criterion::Genus2Det);
  d.witnesses.det_a = Integer(0);
  CHECK_FALSE(verify_certificate(d, g2));
}

TEST_CASE("verdicts are invariant under a change of complementary basis") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int t = 0; t < 100; ++t) {
    const std::size_t g = 2 + t % 3;
    const BlockSeifert bk = random_block(rng, g, -3, 3);
    const BlockSeifert moved = basis_change(bk, oracle::random_unimodular(rng, g));
    MilnorProfile p = MilnorProfile::zero(g);
    for (auto& e : p.sl_table()) e = Integer(d(rng));
    if (g >= 3 && t % 4) {
      const IntMatrix d3 = difference_operator(bk.a(), bk.b(), 3).entries;
      IntVector x(d3.cols());
      for (auto& v : x) v = d(rng);
      p = profile_with_tl(g, d3 * x);
    }
    for (std::size_t i = 0; i < p.sl_table().size(); ++i) p.sl_table()[i] = Integer(d(rng));
    if (g == 2) CHECK(gate_genus2(bk, p).verdict == gate_genus2(moved, p).verdict);
    if (g == 3) CHECK(gate_genus3(bk, p).verdict == gate_genus3(moved, p).verdict);
    CHECK(gate_general(bk, p).verdict == gate_general(moved, p).verdict);
  }
}

TEST_CASE("enum names round-trip") {
  for (Criterion c : {Criterion::None, Criterion::Genus1, Criterion::Genus2SL, Criterion::Genus2Det, Criterion::Genus3,
                      Criterion::GenusG, Criterion::AlexanderLeading, Criterion::ConnectedSumGenus2})
    CHECK(parse_criterion(to_string(c)) == c);
  for (CriterionChoice c : {CriterionChoice::Auto, CriterionChoice::Genus1, CriterionChoice::Genus2,
                            CriterionChoice::Genus3, CriterionChoice::General, CriterionChoice::Alexander})
    CHECK(parse_criterion_choice(to_string(c)) == c);
  CHECK(parse_verdict("OneSolvable") == Verdict::OneSolvable);
  CHECK_FALSE(parse_criterion("bogus"));
}
