#include "solvcert/infection.hpp"

#include <stdexcept>

namespace solvcert {

namespace {

void check_profile(const MilnorProfile& p, std::size_t g) {
  if (p.components() != g)
    throw DimensionError("profile has " + std::to_string(p.components()) + " components, blocks have genus " +
                         std::to_string(g));
}

}  // namespace

MilnorProfile apply_satellite(MilnorProfile p, const SatelliteMove& mv) {
  if (mv.v.size() != p.components()) throw DimensionError("satellite parity vector has the wrong length");
  if ((mv.arf_j & 1U) == 0) return p;
  for (std::size_t i = 0; i < mv.v.size(); ++i) {
    Entry& e = p.arf(i);
    if ((mv.v[i] & 1U) && e) e = Integer(mod2(*e) ^ 1U);
  }
  return p;
}

Integer sl_update_single(const Integer& mu, const IntMatrix& c, const Integer& mu_j) {
  if (c.rows() != 2 || c.cols() != 2) throw DimensionError("linking matrix must be 2x2");
  const Integer d = det(c);
  return mu + d * d * mu_j;
}

std::uint8_t sl_update_mod2(std::uint8_t mu, const Integer& det_c, const Integer& mu_j) {
  return static_cast<std::uint8_t>((mu & 1U) ^ mod2(det_c * mu_j));
}

Integer tl_update_single(const Integer& mu, const Integer& det_c, const Integer& mu_j) { return mu + det_c * mu_j; }

MilnorProfile apply_paired2(MilnorProfile p, const IntMatrix& a, const IntMatrix& b, const PairedMove2& mv) {
  const std::size_t g = a.rows();
  check_profile(p, g);
  if (!(mv.i < mv.j && mv.j < g)) throw std::out_of_range("paired move needs 0 <= i < j < g");
  if (mv.s == 0) return p;
  const WedgeVector plus = column_wedge(a, {mv.i, mv.j});
  const WedgeVector minus = column_wedge(b.transpose(), {mv.i, mv.j});
  for (std::size_t t = 0; t < plus.coefficients.size(); ++t) {
    Entry& e = p.sl_table()[t];
    if (e && mod2(mv.s * (plus.coefficients[t] - minus.coefficients[t]))) e = Integer(mod2(*e) ^ 1U);
  }
  return p;
}

MilnorProfile apply_paired3(MilnorProfile p, const IntMatrix& a, const IntMatrix& b, const PairedMove3& mv) {
  const std::size_t g = a.rows();
  check_profile(p, g);
  if (!(mv.i < mv.j && mv.j < mv.k && mv.k < g)) throw std::out_of_range("paired move needs 0 <= i < j < k < g");
  const WedgeVector plus = column_wedge(a, {mv.i, mv.j, mv.k});
  const WedgeVector minus = column_wedge(b.transpose(), {mv.i, mv.j, mv.k});
  for (std::size_t t = 0; t < plus.coefficients.size(); ++t) {
    Entry& e = p.tl_table()[t];
    if (e) *e += mv.m * (plus.coefficients[t] - minus.coefficients[t]);
  }
  for (Entry& e : p.sl_table()) e.reset();
  return p;
}

std::vector<PairedMove2> SlResolver::resolve(const BitVector& measured) const {
  std::optional<BitVector> y = f2_solve(op, measured);
  if (!y) throw std::domain_error("measured S.L. vector is outside the image of the grade-2 operator");
  const std::vector<WedgeIndex> pairs = wedge_basis(g, 2);
  std::vector<PairedMove2> moves;
  for (std::size_t t = 0; t < pairs.size(); ++t)
    if ((*y)[t]) moves.push_back(PairedMove2{pairs[t][0], pairs[t][1], Integer(1)});
  return moves;
}

PlanOutcome plan_moves(const BlockSeifert& bk, const MilnorProfile& p) {
  const std::size_t g = bk.genus();
  check_profile(p, g);
  if (!p.fully_known()) throw UnknownEntry("planning needs a fully known profile");
  MovePlan plan;
  if (is_zero_solvable(p) == ZeroSolvability::Yes) return plan;

  // Stage 1: kill T.L. by solving over Z.
  const IntMatrix d3 = difference_operator(bk.a(), bk.b(), 3).entries;
  const WedgeVector tl = assemble_tl(p);
  std::optional<IntVector> x = z_image_membership(d3, tl.coefficients);
  if (!x) return PlanFailure{PlanStage::TripleLinking, "T.L. is not in the image of Λ³A - Λ³B^T over Z"};
  plan.triple_solution = *x;
  const std::vector<WedgeIndex> triples = wedge_basis(g, 3);
  for (std::size_t t = 0; t < triples.size(); ++t)
    if ((*x)[t] != 0) plan.triple_moves.push_back(PairedMove3{triples[t][0], triples[t][1], triples[t][2], -(*x)[t]});

  // Stage 2: S.L. is unknown after any 3-strand move, so the solve is deferred.
  SlResolver resolver{g, difference_operator_mod2(bk.a(), bk.b(), 2)};
  if (!f2_is_onto(resolver.op))
    return PlanFailure{PlanStage::SatoLevine, "Λ²A - Λ²B^T is not onto mod 2 (rank " +
                                                  std::to_string(resolver.op.rank()) + " of " +
                                                  std::to_string(resolver.op.rows()) + ")"};
  if (plan.triple_moves.empty()) {
    plan.sl_moves = resolver.resolve(assemble_sl(p));
    plan.sl_stage = plan.sl_moves.empty() ? StageStatus::Empty : StageStatus::Resolved;
  } else {
    plan.sl_stage = StageStatus::Deferred;
  }
  plan.sl_resolver = std::move(resolver);

  // Stage 3: paired moves leave Arf alone, so η meets exactly the Arf-1 components.
  BitVector v(g);
  bool any = false;
  for (std::size_t i = 0; i < g; ++i) {
    v[i] = mod2(*p.arf(i));
    any = any || v[i];
  }
  if (any) {
    plan.satellite = SatelliteMove{std::move(v), 1};
    plan.arf_stage = StageStatus::Resolved;
  }
  return plan;
}

MilnorProfile simulate_plan(const BlockSeifert& bk, MilnorProfile p, const MovePlan& plan,
                            const SlMeasurement& measure) {
  for (const PairedMove3& mv : plan.triple_moves) p = apply_paired3(std::move(p), bk.a(), bk.b(), mv);
  std::vector<PairedMove2> sl_moves = plan.sl_moves;
  if (plan.sl_stage == StageStatus::Deferred) {
    if (!plan.sl_resolver) throw std::invalid_argument("deferred S.L. stage without a resolver");
    const BitVector measured = measure(p);
    p = with_sl(std::move(p), measured);
    sl_moves = plan.sl_resolver->resolve(measured);
  }
  for (const PairedMove2& mv : sl_moves) p = apply_paired2(std::move(p), bk.a(), bk.b(), mv);
  if (plan.satellite) p = apply_satellite(std::move(p), *plan.satellite);
  return p;
}

std::string to_string(PlanStage s) {
  switch (s) {
    case PlanStage::TripleLinking: return "triple-linking";
    case PlanStage::SatoLevine: return "sato-levine";
    case PlanStage::Arf: return "arf";
  }
  return "?";
}

std::string to_string(StageStatus s) {
  switch (s) {
    case StageStatus::Empty: return "empty";
    case StageStatus::Resolved: return "resolved";
    case StageStatus::Deferred: return "deferred";
  }
  return "?";
}

}  // namespace solvcert
