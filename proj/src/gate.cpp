#include "solvcert/gate.hpp"

#include <array>
#include <random>
#include <stdexcept>

namespace solvcert {

namespace {

Certificate certified(Criterion c) {
  Certificate cert;
  cert.verdict = Verdict::OneSolvable;
  cert.criterion = c;
  return cert;
}

void record_block(Certificate& c, const BlockSeifert& bk) { c.witnesses.block_seifert = bk.assemble(); }

void require_genus(const BlockSeifert& bk, std::size_t g, const char* gate) {
  if (bk.genus() != g)
    throw std::invalid_argument(std::string(gate) + " needs genus " + std::to_string(g) + ", got " +
                                std::to_string(bk.genus()));
}

// a*s + b*t = gcd >= 0.
void bezout(const Integer& a, const Integer& b, Integer& s, Integer& t, Integer& gcd) {
  Integer old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  gcd = old_r;
}

struct GenusOneBlock {
  Integer a, b, c;
};

GenusOneBlock parse_genus_one(const IntMatrix& v) {
  if (v.rows() != 2 || v.cols() != 2 || v(0, 0) != 0 || abs(v(0, 1) - v(1, 0)) != 1)
    throw InvalidSeifertMatrix("expected a genus-1 block Seifert matrix [[0, x], [x-1, z]], got " + to_string(v));
  return {v(0, 1), v(1, 0), v(1, 1)};
}

// Unimodular Q with Q^T V Q = [[0, b], [a, z']]: the other isotropic direction
// d = (c, -(a+b))/h completed by f with det[d f] = -1.
IntMatrix genus_one_flip(const GenusOneBlock& blk) {
  Integer d1 = blk.c, d2 = -(blk.a + blk.b);
  const Integer h = boost::multiprecision::gcd(d1, d2);  // a + b is odd, so h > 0
  d1 /= h;
  d2 /= h;
  // d1*w - d2*u = -1.
  Integer s, t, g;
  bezout(d1, -d2, s, t, g);  // d1*s + (-d2)*t = 1
  const Integer u = -t, w = -s;
  IntMatrix q(2, 2);
  q(0, 0) = d1;
  q(1, 0) = d2;
  q(0, 1) = u;
  q(1, 1) = w;
  return q;
}

}  // namespace

void check_profile_against(const BlockSeifert& bk, const MilnorProfile& p) {
  if (p.components() != bk.genus())
    throw std::invalid_argument("profile has " + std::to_string(p.components()) + " components, genus is " +
                                std::to_string(bk.genus()));
  for (const Entry& e : p.lk_table())
    if (e && *e != 0) throw std::invalid_argument("derivative components must have zero pairwise linking");
}

Certificate gate_genus1(const BlockSeifert& bk) {
  require_genus(bk, 1, "genus-1 gate");
  Certificate c = certified(Criterion::Genus1);
  record_block(c, bk);
  c.witnesses.det_a = bk.a()(0, 0);
  c.witnesses.det_b = bk.b()(0, 0);
  c.notes.push_back("first basis curve is a derivative; its Arf invariant is removed by one satellite move");
  return c;
}

Certificate gate_genus2(const BlockSeifert& bk, const std::optional<MilnorProfile>& p) {
  require_genus(bk, 2, "genus-2 gate");
  if (p) check_profile_against(bk, *p);
  const Integer da = det(bk.a()), db = det(bk.b());
  Certificate c;
  std::optional<Integer> sl;
  if (p && p->sl(0, 1)) sl = *p->sl(0, 1);

  if (sl && is_even(*sl)) {
    c = certified(Criterion::Genus2SL);
  } else if (!is_even(da - db)) {
    c = certified(Criterion::Genus2Det);
  } else {
    c.failures.push_back(CriterionFailure{
        Criterion::Genus2SL, sl ? "Sato-Levine invariant " + sl->str() + " is odd" : "Sato-Levine invariant unavailable"});
    c.failures.push_back(CriterionFailure{Criterion::Genus2Det, "det A - det B = " + Integer(da - db).str() + " is even"});
  }
  record_block(c, bk);
  c.witnesses.det_a = da;
  c.witnesses.det_b = db;
  c.witnesses.det_difference = da - db;
  c.witnesses.sato_levine = sl;
  return c;
}

Certificate gate_genus3(const BlockSeifert& bk, const MilnorProfile& p) {
  require_genus(bk, 3, "genus-3 gate");
  check_profile_against(bk, p);
  const Integer da = det(bk.a()), db = det(bk.b()), diff = da - db;
  const F2Matrix op = difference_operator_mod2(bk.a(), bk.b(), 2);
  const std::size_t rank = op.rank();
  const Entry& mu = p.tl(0, 1, 2);

  Certificate c;
  std::optional<Integer> quotient;
  if (mu) {
    if (diff == 0) {
      if (*mu == 0) quotient = Integer(0);
    } else if (*mu % diff == 0) {
      quotient = *mu / diff;
    }
  }
  if (quotient && rank == op.rows()) {
    c = certified(Criterion::Genus3);
  } else {
    if (!mu)
      c.failures.push_back({Criterion::Genus3, "triple linking number unavailable"});
    else if (!quotient)
      c.failures.push_back({Criterion::Genus3, "μ̄_123 = " + mu->str() + " is not a multiple of det A - det B = " +
                                                   diff.str()});
    if (rank != op.rows())
      c.failures.push_back({Criterion::Genus3, "Λ²A - Λ²B^T is not onto mod 2 (rank " + std::to_string(rank) + ")"});
  }
  record_block(c, bk);
  c.witnesses.det_a = da;
  c.witnesses.det_b = db;
  c.witnesses.det_difference = diff;
  c.witnesses.triple_linking = mu;
  c.witnesses.triple_quotient = quotient;
  c.witnesses.gf2_rank = rank;
  c.witnesses.gf2_rows = op.rows();
  return c;
}

Certificate gate_general(const BlockSeifert& bk, const MilnorProfile& p) {
  check_profile_against(bk, p);
  const F2Matrix op = difference_operator_mod2(bk.a(), bk.b(), 2);
  const std::size_t rank = op.rank();
  Certificate c;
  std::optional<IntVector> x;
  if (!p.tl_known()) {
    c.failures.push_back({Criterion::GenusG, "triple linking table has unknown entries"});
  } else {
    const IntMatrix d3 = difference_operator(bk.a(), bk.b(), 3).entries;
    x = z_image_membership(d3, assemble_tl(p).coefficients);
    if (!x) c.failures.push_back({Criterion::GenusG, "T.L. is not in the image of Λ³A - Λ³B^T"});
  }
  if (rank != op.rows())
    c.failures.push_back({Criterion::GenusG, "Λ²A - Λ²B^T is not onto mod 2 (rank " + std::to_string(rank) + " of " +
                                                 std::to_string(op.rows()) + ")"});
  if (c.failures.empty()) {
    c.verdict = Verdict::OneSolvable;
    c.criterion = Criterion::GenusG;
    if (p.fully_known()) {
      PlanOutcome plan = plan_moves(bk, p);
      if (auto* mp = std::get_if<MovePlan>(&plan)) c.witnesses.plan = std::move(*mp);
    } else {
      c.notes.push_back("profile incomplete; move plan omitted");
    }
  }
  record_block(c, bk);
  c.witnesses.triple_solution = x;
  c.witnesses.gf2_rank = rank;
  c.witnesses.gf2_rows = op.rows();
  return c;
}

Certificate gate_alexander(const AlexanderPoly& delta, std::size_t genus, bool algebraically_slice) {
  if (genus != 2) throw std::invalid_argument("the Alexander criterion applies to genus 2 only");
  if (delta.degree() != 4)
    throw std::invalid_argument("normalized Alexander polynomial has degree " + std::to_string(delta.degree()) +
                                ", expected 4");
  const Integer a4 = delta.leading();
  Certificate c;
  if (!algebraically_slice) {
    c.failures.push_back({Criterion::AlexanderLeading, "no algebraic-sliceness witness"});
  } else if (floor_mod(a4, 4) != 2) {
    c.failures.push_back({Criterion::AlexanderLeading, "leading coefficient " + a4.str() + " is not 2 mod 4"});
  } else {
    c = certified(Criterion::AlexanderLeading);
  }
  c.witnesses.alexander_leading = a4;
  return c;
}

bool is_connected_sum_form(const IntMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) return false;
  if (!m.block(0, 2, 2, 2).is_zero() || !m.block(2, 0, 2, 2).is_zero()) return false;
  try {
    parse_genus_one(m.block(0, 0, 2, 2));
    parse_genus_one(m.block(2, 2, 2, 2));
  } catch (const InvalidSeifertMatrix&) {
    return false;
  }
  return true;
}

Certificate gate_connected_sum(const IntMatrix& v, const IntMatrix& w) {
  const GenusOneBlock bv = parse_genus_one(v);
  GenusOneBlock bw = parse_genus_one(w);

  IntMatrix qw = IntMatrix::identity(2);
  bool flipped = false;
  if (is_even(bv.a * bw.a - bv.b * bw.b)) {
    // Swapping the roles of x and x-1 in W toggles the parity of det A - det B.
    qw = genus_one_flip(bw);
    const IntMatrix w2 = qw.transpose() * w * qw;
    bw = parse_genus_one(w2);
    flipped = true;
  }

  // Basis (v1, v2, w1', w2') -> (v1, w1', v2, w2').
  IntMatrix q = IntMatrix::identity(4);
  q.set_block(2, 2, qw);
  IntMatrix perm(4, 4);
  perm(0, 0) = 1;
  perm(2, 1) = 1;
  perm(1, 2) = 1;
  perm(3, 3) = 1;
  const IntMatrix p = q * perm;

  IntMatrix m(4, 4);
  m.set_block(0, 0, v);
  m.set_block(2, 2, w);
  const IntMatrix block = p.transpose() * m * p;
  const BlockSeifert bk = BlockSeifert::from_matrix(block);

  Certificate inner = gate_genus2(bk, std::nullopt);
  Certificate c = inner;
  if (inner.certified()) {
    c.criterion = Criterion::ConnectedSumGenus2;
    c.failures.clear();
  }
  c.witnesses.basis_change = p;
  if (flipped) c.notes.push_back("second summand re-based so that x and y have matching parity");
  return c;
}

namespace {

Certificate run_choice(const BlockSeifert& bk, const std::optional<MilnorProfile>& p, CriterionChoice choice) {
  const std::size_t g = bk.genus();
  auto need_profile = [&](const char* what) -> const MilnorProfile& {
    if (!p) throw std::invalid_argument(std::string(what) + " needs a Milnor profile");
    return *p;
  };
  switch (choice) {
    case CriterionChoice::Genus1: return gate_genus1(bk);
    case CriterionChoice::Genus2: return gate_genus2(bk, p);
    case CriterionChoice::Genus3: return gate_genus3(bk, need_profile("genus-3 gate"));
    case CriterionChoice::General: return gate_general(bk, need_profile("general gate"));
    case CriterionChoice::Alexander: {
      if (g != 2) throw std::invalid_argument("the Alexander criterion applies to genus 2 only");
      Certificate c = gate_alexander(AlexanderPoly::from_seifert(bk.seifert()), g, true);
      record_block(c, bk);
      return c;
    }
    case CriterionChoice::Auto: break;
  }

  std::vector<CriterionFailure> failures;
  std::vector<std::string> notes;
  auto attempt = [&](Certificate c) -> std::optional<Certificate> {
    if (c.certified()) {
      c.notes.insert(c.notes.begin(), notes.begin(), notes.end());
      c.failures = failures;
      return c;
    }
    failures.insert(failures.end(), c.failures.begin(), c.failures.end());
    notes.insert(notes.end(), c.notes.begin(), c.notes.end());
    return std::nullopt;
  };

  if (g == 1) {
    if (auto c = attempt(gate_genus1(bk))) return *c;
  } else if (g == 2) {
    if (auto c = attempt(gate_genus2(bk, p))) return *c;
  } else if (g == 3) {
    if (p) {
      if (auto c = attempt(gate_genus3(bk, *p))) return *c;
    } else {
      failures.push_back({Criterion::Genus3, "no Milnor profile"});
    }
  }
  if (p) {
    if (auto c = attempt(gate_general(bk, *p))) return *c;
  } else {
    failures.push_back({Criterion::GenusG, "no Milnor profile"});
  }
  if (g == 2) {
    const AlexanderPoly delta = AlexanderPoly::from_seifert(bk.seifert());
    if (delta.degree() == 4) {
      Certificate c = gate_alexander(delta, 2, true);
      record_block(c, bk);
      if (auto ok = attempt(std::move(c))) return *ok;
    } else {
      failures.push_back({Criterion::AlexanderLeading, "Alexander polynomial has degree " +
                                                           std::to_string(delta.degree()) + ", expected 4"});
    }
  }
  Certificate c;
  c.failures = std::move(failures);
  c.notes = std::move(notes);
  c.witnesses.block_seifert = bk.assemble();
  return c;
}

}  // namespace

Certificate certify(const CheckInput& input, CriterionChoice choice, const CertifyOptions& opts) {
  if (input.seifert.has_value() == input.alexander.has_value())
    throw std::invalid_argument("exactly one of a Seifert matrix and an Alexander polynomial is required");

  if (input.alexander) {
    if (choice != CriterionChoice::Auto && choice != CriterionChoice::Alexander)
      throw std::invalid_argument("criterion " + to_string(choice) + " needs a Seifert matrix");
    Certificate c = gate_alexander(*input.alexander, input.genus, input.algebraically_slice);
    c.requested = choice;
    return c;
  }

  const SeifertMatrix sm = SeifertMatrix::create(*input.seifert);
  if (input.genus != 0 && input.genus != sm.genus())
    throw std::invalid_argument("genus " + std::to_string(input.genus) + " does not match a " +
                                std::to_string(sm.matrix().rows()) + "-row Seifert matrix");
  const IntMatrix& m = sm.matrix();

  Certificate c;
  if (BlockSeifert::is_block_form(m)) {
    c = run_choice(BlockSeifert::from_matrix(m), input.profile, choice);
  } else if (is_connected_sum_form(m) &&
             (choice == CriterionChoice::Auto || choice == CriterionChoice::Genus2)) {
    c = gate_connected_sum(m.block(0, 0, 2, 2), m.block(2, 2, 2, 2));
    if (input.profile) c.notes.push_back("profile ignored: derivative chosen from the summands");
  } else {
    const MetabolizerResult found = find_metabolizer(sm, opts.metabolizer);
    if (!found.basis) {
      c.failures.push_back({Criterion::None, std::string("no metabolizer found within coefficient bound ") +
                                                 std::to_string(opts.metabolizer.bound) +
                                                 (found.status == SearchStatus::Inconclusive ? " (search capped)" : "")});
    } else {
      BlockForm bf = to_block(sm, *found.basis);
      c = run_choice(bf.block, std::nullopt, choice);
      c.witnesses.basis_change = bf.change_of_basis;
      c.witnesses.metabolizer = *found.basis;
      c.notes.push_back("derivative found by metabolizer search; supplied profile does not apply to it");
    }
  }
  c.requested = choice;
  return c;
}

namespace {

// Adversarial S.L. measurements: all vectors when few, else a fixed pseudo-random sample.
std::vector<BitVector> adversarial_sl(std::size_t len) {
  std::vector<BitVector> out;
  if (len <= 10) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
      BitVector v(len);
      for (std::size_t i = 0; i < len; ++i) v[i] = (mask >> i) & 1U;
      out.push_back(std::move(v));
    }
    return out;
  }
  std::mt19937_64 rng(0x5eed);
  for (int t = 0; t < 256; ++t) {
    BitVector v(len);
    for (auto& b : v) b = rng() & 1U;
    out.push_back(std::move(v));
  }
  return out;
}

bool verify_plan(const BlockSeifert& bk, const MilnorProfile& p, const MovePlan& plan,
                 const std::optional<IntVector>& x) {
  if (x) {
    const std::vector<WedgeIndex> triples = wedge_basis(bk.genus(), 3);
    std::vector<PairedMove3> expected;
    for (std::size_t t = 0; t < triples.size(); ++t)
      if ((*x)[t] != 0) expected.push_back({triples[t][0], triples[t][1], triples[t][2], -(*x)[t]});
    if (expected != plan.triple_moves) return false;
  }
  if (plan.sl_stage == StageStatus::Deferred && !plan.sl_resolver) return false;
  for (const BitVector& s : adversarial_sl(choose(bk.genus(), 2))) {
    const MilnorProfile end = simulate_plan(bk, p, plan, [&](const MilnorProfile&) { return s; });
    if (is_zero_solvable(end) != ZeroSolvability::Yes) return false;
    if (plan.sl_stage != StageStatus::Deferred) break;  // measurement unused
  }
  return true;
}

bool verify_seifert(const Certificate& c, const CheckInput& input) {
  const Witnesses& w = c.witnesses;
  const SeifertMatrix sm = SeifertMatrix::create(*input.seifert);
  if (!w.block_seifert) return false;
  if (w.basis_change) {
    if (!is_unimodular(*w.basis_change)) return false;
    if (w.basis_change->transpose() * sm.matrix() * *w.basis_change != *w.block_seifert) return false;
  } else if (*w.block_seifert != sm.matrix()) {
    return false;
  }
  const BlockSeifert bk = BlockSeifert::from_matrix(*w.block_seifert);
  const std::size_t g = bk.genus();
  // A supplied profile describes the first g basis curves only when no re-basing happened.
  const std::optional<MilnorProfile> profile = w.basis_change ? std::nullopt : input.profile;
  if (profile) check_profile_against(bk, *profile);

  switch (c.criterion) {
    case Criterion::Genus1:
      return g == 1;
    case Criterion::Genus2SL: {
      if (g != 2 || !profile || !profile->sl(0, 1)) return false;
      return w.sato_levine == profile->sl(0, 1) && is_even(*profile->sl(0, 1));
    }
    case Criterion::Genus2Det:
    case Criterion::ConnectedSumGenus2: {
      if (g != 2) return false;
      const Integer da = det(bk.a()), db = det(bk.b());
      return w.det_a == da && w.det_b == db && w.det_difference == da - db && !is_even(da - db);
    }
    case Criterion::Genus3: {
      if (g != 3 || !profile || !profile->tl(0, 1, 2) || !w.triple_quotient) return false;
      const Integer diff = det(bk.a()) - det(bk.b());
      const F2Matrix op = difference_operator_mod2(bk.a(), bk.b(), 2);
      return w.det_difference == diff && *w.triple_quotient * diff == *profile->tl(0, 1, 2) &&
             op.rank() == op.rows() && w.gf2_rank == op.rank();
    }
    case Criterion::GenusG: {
      if (!profile || !profile->tl_known() || !w.triple_solution) return false;
      const IntMatrix d3 = difference_operator(bk.a(), bk.b(), 3).entries;
      if (w.triple_solution->size() != d3.cols()) return false;
      if (d3 * *w.triple_solution != assemble_tl(*profile).coefficients) return false;
      const F2Matrix op = difference_operator_mod2(bk.a(), bk.b(), 2);
      if (op.rank() != op.rows() || w.gf2_rank != op.rank()) return false;
      if (w.plan) return profile->fully_known() && verify_plan(bk, *profile, *w.plan, w.triple_solution);
      return true;
    }
    case Criterion::AlexanderLeading: {
      if (g != 2) return false;
      const AlexanderPoly delta = AlexanderPoly::from_seifert(bk.seifert());
      return delta.degree() == 4 && w.alexander_leading == delta.leading() && floor_mod(delta.leading(), 4) == 2;
    }
    case Criterion::None:
      return false;
  }
  return false;
}

}  // namespace

bool verify_certificate(const Certificate& c, const CheckInput& input) {
  try {
    if (!c.certified()) {
      const Certificate again = certify(input, c.requested);
      return !again.certified() && c.criterion == Criterion::None;
    }
    if (input.alexander) {
      const AlexanderPoly& delta = *input.alexander;
      return c.criterion == Criterion::AlexanderLeading && input.genus == 2 && input.algebraically_slice &&
             delta.degree() == 4 && c.witnesses.alexander_leading == delta.leading() &&
             floor_mod(delta.leading(), 4) == 2;
    }
    if (!input.seifert) return false;
    return verify_seifert(c, input);
  } catch (const std::exception&) {
    return false;
  }
}

std::string to_string(Verdict v) { return v == Verdict::OneSolvable ? "OneSolvable" : "NotDetermined"; }

namespace {

constexpr std::array<std::pair<Criterion, const char*>, 8> kCriterionNames{{
    {Criterion::None, "none"},
    {Criterion::Genus1, "Genus1"},
    {Criterion::Genus2SL, "Genus2SL"},
    {Criterion::Genus2Det, "Genus2Det"},
    {Criterion::Genus3, "Genus3"},
    {Criterion::GenusG, "GenusG"},
    {Criterion::AlexanderLeading, "AlexanderLeading"},
    {Criterion::ConnectedSumGenus2, "ConnectedSumGenus2"},
}};

constexpr std::array<std::pair<CriterionChoice, const char*>, 6> kChoiceNames{{
    {CriterionChoice::Auto, "auto"},
    {CriterionChoice::Genus1, "genus1"},
    {CriterionChoice::Genus2, "genus2"},
    {CriterionChoice::Genus3, "genus3"},
    {CriterionChoice::General, "general"},
    {CriterionChoice::Alexander, "alexander"},
}};

}  // namespace

std::string to_string(Criterion c) {
  for (const auto& [k, name] : kCriterionNames)
    if (k == c) return name;
  return "none";
}

std::string to_string(CriterionChoice c) {
  for (const auto& [k, name] : kChoiceNames)
    if (k == c) return name;
  return "auto";
}

std::optional<Verdict> parse_verdict(const std::string& s) {
  if (s == "OneSolvable") return Verdict::OneSolvable;
  if (s == "NotDetermined") return Verdict::NotDetermined;
  return std::nullopt;
}

std::optional<Criterion> parse_criterion(const std::string& s) {
  for (const auto& [k, name] : kCriterionNames)
    if (s == name) return k;
  return std::nullopt;
}

std::optional<CriterionChoice> parse_criterion_choice(const std::string& s) {
  for (const auto& [k, name] : kChoiceNames)
    if (s == name) return k;
  return std::nullopt;
}

}  // namespace solvcert
