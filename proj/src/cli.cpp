#include "solvcert/cli.hpp"

#include "solvcert/io.hpp"

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace solvcert {

namespace {

std::string strands(std::initializer_list<std::size_t> idx, const char* sep) {
  std::string s;
  for (std::size_t i : idx) s += (s.empty() ? "" : sep) + std::string("α") + std::to_string(i + 1);
  return s;
}

std::string bits(const BitVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] & 1U);
  return s + ")";
}

std::string ints(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

void print_matrix(std::ostream& out, const IntMatrix& m, const std::string& indent) {
  std::size_t w = 1;
  for (const Integer& x : m.data()) w = std::max(w, x.str().size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << indent;
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << std::setw(static_cast<int>(w)) << m(r, c).str();
    out << '\n';
  }
}

void print_plan(std::ostream& out, const MovePlan& plan) {
  if (plan.empty()) {
    out << "  derivative is already 0-solvable; no moves needed\n";
    return;
  }
  out << "  stage 1 (triple linking): x = " << ints(plan.triple_solution) << '\n';
  if (plan.triple_moves.empty()) out << "    no moves\n";
  for (const PairedMove3& mv : plan.triple_moves)
    out << "    paired 3-strand infection along " << strands({mv.i, mv.j, mv.k}, " ∨ ") << " by (X, -X), μ̄_123(X̂) = "
        << mv.m << '\n';

  out << "  stage 2 (Sato-Levine): " << to_string(plan.sl_stage) << '\n';
  if (plan.sl_stage == StageStatus::Deferred) {
    out << "    measure s = S.L. after stage 1, solve (Λ²A - Λ²B^T) y = s over GF(2),\n"
        << "    then infect along α_i ∨ α_j by (J, -J) with μ̄_1122(Ĵ) = 1 for each y_ij = 1\n";
    if (plan.sl_resolver) {
      out << "    operator mod 2:\n";
      const F2Matrix& op = plan.sl_resolver->op;
      for (std::size_t r = 0; r < op.rows(); ++r) {
        out << "      ";
        for (std::size_t c = 0; c < op.cols(); ++c) out << (c ? " " : "") << int(op.get(r, c));
        out << '\n';
      }
    }
  }
  for (const PairedMove2& mv : plan.sl_moves)
    out << "    paired 2-strand infection along " << strands({mv.i, mv.j}, " ∨ ") << " by (J, -J), μ̄_1122(Ĵ) = " << mv.s
        << '\n';

  out << "  stage 3 (Arf): " << to_string(plan.arf_stage) << '\n';
  if (plan.satellite)
    out << "    satellite move along η with v = " << bits(plan.satellite->v)
        << ", Arf(J) = " << int(plan.satellite->arf_j) << '\n';
}

void print_certificate(std::ostream& out, const std::string& name, const Certificate& c) {
  out << name << ": " << to_string(c.verdict);
  if (c.certified()) out << " (" << to_string(c.criterion) << ")";
  out << '\n';
  const Witnesses& w = c.witnesses;
  if (w.det_a && w.det_b)
    out << "  det A = " << *w.det_a << ", det B = " << *w.det_b << ", det A - det B = " << (*w.det_a - *w.det_b)
        << '\n';
  if (w.sato_levine) out << "  μ̄_1122 = " << *w.sato_levine << '\n';
  if (w.triple_linking) out << "  μ̄_123 = " << *w.triple_linking << '\n';
  if (w.triple_quotient) out << "  μ̄_123 / (det A - det B) = " << *w.triple_quotient << '\n';
  if (w.triple_solution) out << "  (Λ³A - Λ³B^T) x = T.L. with x = " << ints(*w.triple_solution) << '\n';
  if (w.gf2_rank && w.gf2_rows)
    out << "  rank of Λ²A - Λ²B^T mod 2: " << *w.gf2_rank << " of " << *w.gf2_rows << '\n';
  if (w.alexander_leading) out << "  leading Alexander coefficient a_4 = " << *w.alexander_leading << '\n';
  if (w.basis_change) {
    out << "  basis change P (P^T M P is the block matrix):\n";
    print_matrix(out, *w.basis_change, "    ");
  }
  if (w.plan) {
    out << "  move plan:\n";
    print_plan(out, *w.plan);
  }
  for (const std::string& n : c.notes) out << "  note: " << n << '\n';
  if (!c.certified())
    for (const CriterionFailure& f : c.failures) out << "  " << to_string(f.criterion) << ": " << f.reason << '\n';
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SpecError(path + ": invalid JSON: " + e.what());
  }
}

IntMatrix matrix_arg(const std::string& text) {
  try {
    return int_matrix_from_json(Json::parse(text));
  } catch (const Json::parse_error& e) {
    throw SpecError(std::string("--matrix: invalid JSON: ") + e.what());
  }
}

std::vector<KnotSpec> load_table(const std::string& path, std::vector<std::string>& warnings) {
  if (std::filesystem::path(path).extension() == ".csv") {
    IngestResult r = ingest_csv_file(path);
    warnings = std::move(r.warnings);
    return std::move(r.specs);
  }
  const Json j = read_json_file(path);
  std::vector<KnotSpec> specs;
  const Json items = j.is_array() ? j : Json::array({j});
  for (std::size_t i = 0; i < items.size(); ++i) {
    try {
      specs.push_back(knot_spec_from_json(items[i]));
    } catch (const SpecError& e) {
      warnings.push_back("entry " + std::to_string(i + 1) + ": " + e.what() + "; skipped");
    }
  }
  return specs;
}

struct Options {
  std::string path;
  std::string criterion = "auto";
  bool json = false;
  std::string timestamp;
  int bound = 3;
  std::string output;
  std::size_t jobs = 1;
  std::string matrix;
  std::string minus;
  std::size_t grade = 2;
  bool mod2 = false;
};

int cmd_check(const Options& o, std::ostream& out) {
  const KnotSpec spec = load_knot_spec(o.path);
  const auto choice = parse_criterion_choice(o.criterion);
  if (!choice) throw SpecError("unknown criterion \"" + o.criterion + "\"");
  CertifyOptions opts;
  opts.metabolizer.bound = o.bound;
  spdlog::debug("checking {} (genus {}) with criterion {}", spec.name, spec.genus, o.criterion);
  Certificate c = certify(to_check_input(spec), *choice, opts);
  const bool ok = c.certified();
  if (o.json) {
    out << dump(to_json(make_certificate_doc(
        spec, std::move(c), o.timestamp.empty() ? std::nullopt : std::optional<std::string>(o.timestamp))));
  } else {
    print_certificate(out, spec.name, c);
  }
  return ok ? kExitCertified : kExitUndetermined;
}

int cmd_plan(const Options& o, std::ostream& out) {
  const KnotSpec spec = load_knot_spec(o.path);
  if (!spec.seifert) throw SpecError("planning needs a Seifert matrix");
  if (!BlockSeifert::is_block_form(*spec.seifert))
    throw SpecError("planning needs a Seifert matrix whose top-left g x g block is zero");
  if (!spec.profile || !spec.profile->fully_known()) throw SpecError("planning needs a fully known Milnor profile");
  const BlockSeifert bk = BlockSeifert::from_matrix(*spec.seifert);
  check_profile_against(bk, *spec.profile);
  const PlanOutcome res = plan_moves(bk, *spec.profile);

  if (const auto* fail = std::get_if<PlanFailure>(&res)) {
    if (o.json)
      out << dump(Json{{"name", spec.name},
                       {"failure", {{"stage", int(fail->stage)}, {"stage_name", to_string(fail->stage)}, {"reason", fail->reason}}}});
    else
      out << spec.name << ": planning failed at stage " << int(fail->stage) << " (" << to_string(fail->stage)
          << "): " << fail->reason << '\n';
    return kExitUndetermined;
  }
  const MovePlan& plan = std::get<MovePlan>(res);
  if (o.json) {
    out << dump(Json{{"name", spec.name}, {"plan", to_json(plan)}});
  } else {
    out << spec.name << ": move plan\n";
    print_plan(out, plan);
  }
  return kExitCertified;
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  const IngestResult r = ingest_csv_file(o.path);
  for (const std::string& w : r.warnings) err << "warning: " << w << '\n';
  Json table = Json::array();
  for (const KnotSpec& s : r.specs) table.push_back(to_json(s));
  if (o.output.empty()) {
    out << dump(table);
  } else {
    std::ofstream f(o.output);
    if (!f) throw SpecError("cannot write " + o.output);
    f << dump(table);
    out << "ingested " << r.specs.size() << " knots into " << o.output << " (" << r.warnings.size() << " warnings)\n";
  }
  return r.warnings.empty() ? kExitCertified : kExitWarnings;
}

int cmd_batch(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> load_warnings;
  const std::vector<KnotSpec> specs = load_table(o.path, load_warnings);
  BatchReport r = run_batch(specs, o.jobs);
  r.warnings.insert(r.warnings.begin(), load_warnings.begin(), load_warnings.end());
  for (const std::string& w : r.warnings) err << "warning: " << w << '\n';
  if (o.json) {
    out << dump(to_json(r));
  } else {
    out << "knots: " << r.entries.size() << '\n';
    for (const auto& [name, n] : r.counts) out << "  " << name << ": " << n << '\n';
    if (!r.not_determined.empty()) {
      out << "not determined:\n";
      for (const std::string& n : r.not_determined) out << "  " << n << '\n';
    }
  }
  return r.warnings.empty() ? kExitCertified : kExitWarnings;
}

int cmd_wedge(const Options& o, std::ostream& out) {
  const IntMatrix a = matrix_arg(o.matrix);
  if (!a.is_square()) throw SpecError("--matrix must be square");
  if (o.grade != 2 && o.grade != 3) throw SpecError("--grade must be 2 or 3");
  IntMatrix op = wedge_power(a, o.grade).entries;
  if (!o.minus.empty()) op = difference_operator(a, matrix_arg(o.minus), o.grade).entries;
  if (o.mod2)
    for (std::size_t r = 0; r < op.rows(); ++r)
      for (std::size_t c = 0; c < op.cols(); ++c) op(r, c) = mod2(op(r, c));
  const std::vector<WedgeIndex> basis = wedge_basis(a.rows(), o.grade);
  if (o.json) {
    Json labels = Json::array();
    for (const WedgeIndex& b : basis) {
      Json l = Json::array();
      for (std::size_t i : b) l.push_back(i + 1);
      labels.push_back(l);
    }
    out << dump(Json{{"grade", o.grade}, {"basis", labels}, {"mod2", o.mod2}, {"operator", to_json(op)}});
    return kExitCertified;
  }
  out << "basis:";
  for (const WedgeIndex& b : basis) {
    out << " e";
    for (std::size_t i : b) out << i + 1;
  }
  out << '\n';
  print_matrix(out, op, "");
  return kExitCertified;
}

int cmd_snf(const Options& o, std::ostream& out) {
  const IntMatrix m = matrix_arg(o.matrix);
  const SNFDecomposition d = smith_normal_form(m);
  if (o.json) {
    out << dump(Json{{"U", to_json(d.U)}, {"D", to_json(d.D)}, {"V", to_json(d.V)}, {"rank", d.rank()},
                     {"invariant_factors", [&] {
                        Json f = Json::array();
                        for (const Integer& x : d.invariant_factors()) f.push_back(to_json(x));
                        return f;
                      }()}});
    return kExitCertified;
  }
  out << "D:\n";
  print_matrix(out, d.D, "  ");
  out << "U:\n";
  print_matrix(out, d.U, "  ");
  out << "V:\n";
  print_matrix(out, d.V, "  ");
  out << "invariant factors:";
  for (const Integer& x : d.invariant_factors()) out << ' ' << x;
  out << '\n';
  return kExitCertified;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const CertificateDoc doc = certificate_doc_from_json(read_json_file(o.path));
  if (doc.input_hash != input_hash(doc.input)) {
    out << doc.input.name << ": rejected (input hash mismatch)\n";
    return kExitUndetermined;
  }
  const bool ok = verify_certificate(doc.certificate, to_check_input(doc.input));
  out << doc.input.name << ": " << (ok ? "verified" : "rejected") << '\n';
  return ok ? kExitCertified : kExitUndetermined;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify 1-solvability of algebraically slice knots from Seifert data", "solvcert"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "Run the 1-solvability criteria on a knot spec");
  check->add_option("spec", o.path, "KnotSpec JSON file")->required();
  check->add_option("--criterion", o.criterion, "auto|genus1|genus2|genus3|general|alexander")
      ->check(CLI::IsMember({"auto", "genus1", "genus2", "genus3", "general", "alexander"}));
  check->add_flag("--json", o.json, "Emit a certificate document");
  check->add_option("--timestamp", o.timestamp, "Fixed timestamp for the certificate document");
  check->add_option("--bound", o.bound, "Coefficient bound for the metabolizer search")->check(CLI::Range(1, 20));

  auto* plan = app.add_subcommand("plan", "Emit the infection move plan for a derivative profile");
  plan->add_option("spec", o.path, "KnotSpec JSON file")->required();
  plan->add_flag("--json", o.json, "Emit JSON");

  auto* ingest = app.add_subcommand("ingest", "Convert a knot-table CSV into a KnotSpec table");
  ingest->add_option("csv", o.path, "CSV file: name, genus, coefficients, flag")->required();
  ingest->add_option("-o,--output", o.output, "Write the table here instead of stdout");

  auto* batch = app.add_subcommand("batch", "Certify every knot in a table and summarize");
  batch->add_option("table", o.path, "KnotSpec table (JSON array) or CSV")->required();
  batch->add_option("-j,--jobs", o.jobs, "Worker threads")->check(CLI::Range(1, 256));
  batch->add_flag("--json", o.json, "Emit JSON");

  auto* wedge = app.add_subcommand("wedge", "Print the induced operator on a wedge power");
  wedge->add_option("--matrix", o.matrix, "Square matrix as JSON, e.g. [[1,0],[0,1]]")->required();
  wedge->add_option("--minus", o.minus, "Second matrix B; prints Λ^k A - Λ^k B^T");
  wedge->add_option("--grade", o.grade, "2 or 3")->check(CLI::IsMember({2, 3}));
  wedge->add_flag("--mod2", o.mod2, "Reduce entries mod 2");
  wedge->add_flag("--json", o.json, "Emit JSON");

  auto* snf = app.add_subcommand("snf", "Print the Smith normal form U M V = D");
  snf->add_option("--matrix", o.matrix, "Matrix as JSON")->required();
  snf->add_flag("--json", o.json, "Emit JSON");

  auto* verify = app.add_subcommand("verify", "Re-check a certificate document");
  verify->add_option("certificate", o.path, "Output of check --json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitCertified : kExitError;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (plan->parsed()) return cmd_plan(o, out);
    if (ingest->parsed()) return cmd_ingest(o, out, err);
    if (batch->parsed()) return cmd_batch(o, out, err);
    if (wedge->parsed()) return cmd_wedge(o, out);
    if (snf->parsed()) return cmd_snf(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace solvcert
