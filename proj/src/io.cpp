#include "solvcert/io.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#ifndef SOLVCERT_VERSION
#define SOLVCERT_VERSION "0.0.0"
#endif

namespace solvcert {

namespace {

std::string json_type(const Json& j) { return j.type_name(); }

bool is_decimal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::size_t to_size(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw SpecError(std::string(what) + " must be a nonnegative integer, got " + j.dump());
  return j.get<std::size_t>();
}

// "1,2" -> {0, 1}; strictly increasing, within genus.
WedgeIndex parse_key(const std::string& key, std::size_t arity, std::size_t g, const char* table) {
  WedgeIndex idx;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(0, part.find_first_not_of(' '));
    part.erase(part.find_last_not_of(' ') + 1);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        part.size() > 9)
      throw SpecError(std::string("malformed ") + table + " key \"" + key + "\"");
    const std::size_t v = std::stoul(part);
    if (v < 1 || v > g)
      throw SpecError(std::string(table) + " key \"" + key + "\" has index " + part + " outside 1.." +
                      std::to_string(g));
    idx.push_back(v - 1);
  }
  if (idx.size() != arity)
    throw SpecError(std::string(table) + " key \"" + key + "\" needs " + std::to_string(arity) + " indices");
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] >= idx[i])
      throw SpecError(std::string(table) + " key \"" + key + "\" must be strictly increasing");
  return idx;
}

std::string format_key(const WedgeIndex& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i] + 1);
  return s;
}

Entry entry_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return integer_from_json(j);
}

Json entry_to_json(const Entry& e) { return e ? to_json(*e) : Json(nullptr); }

void read_table(const Json& j, const char* table, std::size_t arity, std::size_t g, std::vector<Entry>& out) {
  if (j.is_null()) return;
  if (!j.is_object()) throw SpecError(std::string("profile.") + table + " must be an object keyed \"i,j\"");
  for (const auto& [key, value] : j.items()) {
    const WedgeIndex idx = parse_key(key, arity, g, table);
    try {
      out.at(wedge_position(idx, g)) = entry_from_json(value);
    } catch (const SpecError& e) {
      throw SpecError(std::string("profile.") + table + "[\"" + key + "\"]: " + e.what());
    }
  }
}

Json write_table(const std::vector<Entry>& t, std::size_t g, std::size_t arity) {
  Json out = Json::object();
  const std::vector<WedgeIndex> basis = wedge_basis(g, arity);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i]) out[format_key(basis[i])] = to_json(*t[i]);
  return out;
}

MilnorProfile profile_from_json(const Json& j, std::size_t g) {
  if (!j.is_object()) throw SpecError("profile must be an object");
  MilnorProfile p = MilnorProfile::unknown(g);
  if (j.contains("arf") && !j["arf"].is_null()) {
    const Json& arf = j["arf"];
    if (!arf.is_array() || arf.size() != g)
      throw SpecError("profile.arf must be an array of " + std::to_string(g) + " entries");
    for (std::size_t i = 0; i < g; ++i) {
      Entry e = entry_from_json(arf[i]);
      if (e && *e != 0 && *e != 1) throw SpecError("profile.arf entries must be 0, 1 or null");
      p.arf(i) = e;
    }
  }
  for (const auto& [key, value] : j.items())
    if (key != "arf" && key != "lk" && key != "sato_levine" && key != "triple")
      throw SpecError("unknown profile field \"" + key + "\"");
  auto table = [&](const char* key, std::size_t arity, auto&& sink) {
    if (!j.contains(key)) return;
    std::vector<Entry> t(choose(g, arity));
    read_table(j[key], key, arity, g, t);
    sink(t);
  };
  table("lk", 2, [&](const std::vector<Entry>& t) {
    const auto pairs = wedge_basis(g, 2);
    for (std::size_t i = 0; i < t.size(); ++i) p.lk(pairs[i][0], pairs[i][1]) = t[i];
  });
  table("sato_levine", 2, [&](const std::vector<Entry>& t) { p.sl_table() = t; });
  table("triple", 3, [&](const std::vector<Entry>& t) { p.tl_table() = t; });
  return p;
}

Json profile_to_json(const MilnorProfile& p) {
  Json arf = Json::array();
  for (const Entry& e : p.arf_table()) arf.push_back(entry_to_json(e));
  return Json{{"arf", arf},
              {"lk", write_table(p.lk_table(), p.components(), 2)},
              {"sato_levine", write_table(p.sl_table(), p.components(), 2)},
              {"triple", write_table(p.tl_table(), p.components(), 3)}};
}

IntVector int_vector_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw SpecError(std::string(what) + " must be an array");
  IntVector v;
  for (const Json& x : j) v.push_back(integer_from_json(x));
  return v;
}

Json bits_to_json(const BitVector& v) {
  Json out = Json::array();
  for (std::uint8_t b : v) out.push_back(int(b & 1U));
  return out;
}

BitVector bits_from_json(const Json& j) {
  if (!j.is_array()) throw SpecError("bit vector must be an array");
  BitVector v;
  for (const Json& x : j) {
    if (!x.is_number_integer() || (x.get<int>() != 0 && x.get<int>() != 1)) throw SpecError("bits must be 0 or 1");
    v.push_back(static_cast<std::uint8_t>(x.get<int>()));
  }
  return v;
}

StageStatus stage_status_from(const std::string& s) {
  if (s == "empty") return StageStatus::Empty;
  if (s == "resolved") return StageStatus::Resolved;
  if (s == "deferred") return StageStatus::Deferred;
  throw SpecError("unknown stage status \"" + s + "\"");
}

template <class T>
std::optional<T> opt(const Json& j, const char* key, T (*conv)(const Json&)) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return conv(j[key]);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const char* tool_version() noexcept { return SOLVCERT_VERSION; }

Json to_json(const Integer& x) {
  static const Integer lo = std::numeric_limits<long long>::min();
  static const Integer hi = std::numeric_limits<long long>::max();
  if (x >= lo && x <= hi) return Json(x.convert_to<long long>());
  return Json(x.str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<long long>());
  if (j.is_string() && is_decimal(j.get<std::string>())) {
    std::string s = j.get<std::string>();
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
  }
  throw SpecError("expected an integer, got " + json_type(j) + " " + j.dump());
}

Json to_json(const IntVector& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

IntMatrix int_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw SpecError("matrix must be a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw SpecError("matrix rows must be nonempty arrays");
  IntMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw SpecError("matrix row " + std::to_string(r + 1) + " has " +
                      std::to_string(j[r].is_array() ? j[r].size() : 0) + " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = integer_from_json(j[r][c]);
  }
  return m;
}

KnotSpec knot_spec_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("knot spec must be a JSON object");
  KnotSpec s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SpecError("name must be a string");
    s.name = j["name"].get<std::string>();
  }
  const bool has_m = j.contains("seifert") && !j["seifert"].is_null();
  const bool has_a = j.contains("alexander") && !j["alexander"].is_null();
  if (has_m == has_a) throw SpecError("exactly one of \"seifert\" and \"alexander\" must be given");
  if (j.contains("algebraically_slice")) {
    if (!j["algebraically_slice"].is_boolean()) throw SpecError("algebraically_slice must be true or false");
    s.algebraically_slice = j["algebraically_slice"].get<bool>();
  }
  if (j.contains("genus")) s.genus = to_size(j["genus"], "genus");

  if (has_m) {
    IntMatrix m = int_matrix_from_json(j["seifert"]);
    if (!m.is_square() || m.rows() % 2 != 0)
      throw SpecError("seifert must be a 2g x 2g matrix, got " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()));
    if (s.genus != 0 && s.genus * 2 != m.rows())
      throw SpecError("genus " + std::to_string(s.genus) + " needs a " + std::to_string(2 * s.genus) + "x" +
                      std::to_string(2 * s.genus) + " seifert matrix, got " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()));
    try {
      SeifertMatrix::create(m);
    } catch (const std::exception& e) {
      throw SpecError(e.what());
    }
    s.genus = m.rows() / 2;
    s.seifert = std::move(m);
  } else {
    if (s.genus == 0) throw SpecError("an alexander-only spec needs a positive genus");
    try {
      s.alexander = AlexanderPoly::from_coefficients(int_vector_from_json(j["alexander"], "alexander")).coefficients();
    } catch (const SpecError&) {
      throw;
    } catch (const std::exception& e) {
      throw SpecError(std::string("alexander: ") + e.what());
    }
  }
  if (j.contains("profile") && !j["profile"].is_null()) s.profile = profile_from_json(j["profile"], s.genus);
  return s;
}

Json to_json(const KnotSpec& s) {
  Json j{{"name", s.name}, {"genus", s.genus}, {"algebraically_slice", s.algebraically_slice}};
  if (s.seifert) j["seifert"] = to_json(*s.seifert);
  if (s.alexander) j["alexander"] = to_json(*s.alexander);
  if (s.profile) j["profile"] = profile_to_json(*s.profile);
  return j;
}

KnotSpec load_knot_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw SpecError(path.string() + ": empty input");
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError(path.string() + ": invalid JSON: " + e.what());
  }
  try {
    KnotSpec s = knot_spec_from_json(j);
    if (s.name.empty()) s.name = path.stem().string();
    return s;
  } catch (const SpecError& e) {
    throw SpecError(path.string() + ": " + e.what());
  }
}

CheckInput to_check_input(const KnotSpec& s) {
  CheckInput in;
  in.genus = s.genus;
  in.seifert = s.seifert;
  in.profile = s.profile;
  if (s.alexander) in.alexander = AlexanderPoly::from_coefficients(*s.alexander);
  in.algebraically_slice = s.algebraically_slice;
  return in;
}

Json to_json(const MovePlan& plan) {
  Json triple = Json::array();
  for (const PairedMove3& mv : plan.triple_moves)
    triple.push_back({{"strands", {mv.i + 1, mv.j + 1, mv.k + 1}}, {"m", to_json(mv.m)}});
  Json sl = Json::array();
  for (const PairedMove2& mv : plan.sl_moves) sl.push_back({{"strands", {mv.i + 1, mv.j + 1}}, {"s", to_json(mv.s)}});

  Json stage2{{"status", to_string(plan.sl_stage)}, {"moves", sl}};
  if (plan.sl_resolver) {
    const F2Matrix& op = plan.sl_resolver->op;
    Json rows = Json::array();
    for (std::size_t r = 0; r < op.rows(); ++r) {
      BitVector bits(op.cols());
      for (std::size_t c = 0; c < op.cols(); ++c) bits[c] = op.get(r, c);
      rows.push_back(bits_to_json(bits));
    }
    stage2["resolver"] = {{"genus", plan.sl_resolver->g},
                          {"operator_mod2", rows},
                          {"rule", "solve (Λ²A - Λ²B^T) y = s over GF(2) for the measured S.L. vector s; "
                                   "infect along α_i ∨ α_j by (J, -J) with μ̄_1122(Ĵ) = 1 for each y_ij = 1"}};
  }
  Json stage3{{"status", to_string(plan.arf_stage)}};
  if (plan.satellite) stage3["satellite"] = {{"v", bits_to_json(plan.satellite->v)}, {"arf_j", int(plan.satellite->arf_j)}};

  return Json{{"triple_linking", {{"solution", to_json(plan.triple_solution)}, {"moves", triple}}},
              {"sato_levine", stage2},
              {"arf", stage3}};
}

MovePlan move_plan_from_json(const Json& j) {
  MovePlan plan;
  const Json& t = j.at("triple_linking");
  plan.triple_solution = int_vector_from_json(t.at("solution"), "triple_linking.solution");
  for (const Json& mv : t.at("moves")) {
    const auto s = mv.at("strands").get<std::vector<std::size_t>>();
    if (s.size() != 3 || s[0] < 1) throw SpecError("3-strand move needs three 1-based strands");
    plan.triple_moves.push_back({s[0] - 1, s[1] - 1, s[2] - 1, integer_from_json(mv.at("m"))});
  }
  const Json& sl = j.at("sato_levine");
  plan.sl_stage = stage_status_from(sl.at("status").get<std::string>());
  for (const Json& mv : sl.at("moves")) {
    const auto s = mv.at("strands").get<std::vector<std::size_t>>();
    if (s.size() != 2 || s[0] < 1) throw SpecError("2-strand move needs two 1-based strands");
    plan.sl_moves.push_back({s[0] - 1, s[1] - 1, integer_from_json(mv.at("s"))});
  }
  if (sl.contains("resolver")) {
    const Json& r = sl["resolver"];
    const Json& rows = r.at("operator_mod2");
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    F2Matrix op(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const BitVector bits = bits_from_json(rows[i]);
      if (bits.size() != cols) throw SpecError("resolver operator rows differ in length");
      for (std::size_t c = 0; c < cols; ++c) op.set(i, c, bits[c]);
    }
    plan.sl_resolver = SlResolver{r.at("genus").get<std::size_t>(), std::move(op)};
  }
  const Json& arf = j.at("arf");
  plan.arf_stage = stage_status_from(arf.at("status").get<std::string>());
  if (arf.contains("satellite"))
    plan.satellite = SatelliteMove{bits_from_json(arf["satellite"].at("v")),
                                   static_cast<std::uint8_t>(arf["satellite"].at("arf_j").get<int>())};
  return plan;
}

Json to_json(const Certificate& c) {
  const Witnesses& w = c.witnesses;
  Json wj = Json::object();
  if (w.block_seifert) wj["block_seifert"] = to_json(*w.block_seifert);
  if (w.basis_change) wj["basis_change"] = to_json(*w.basis_change);
  if (w.metabolizer) {
    Json m = Json::array();
    for (const IntVector& v : *w.metabolizer) m.push_back(to_json(v));
    wj["metabolizer"] = m;
  }
  auto put = [&](const char* key, const std::optional<Integer>& x) {
    if (x) wj[key] = to_json(*x);
  };
  put("det_a", w.det_a);
  put("det_b", w.det_b);
  put("det_difference", w.det_difference);
  put("sato_levine", w.sato_levine);
  put("triple_linking", w.triple_linking);
  put("triple_quotient", w.triple_quotient);
  put("alexander_leading", w.alexander_leading);
  if (w.triple_solution) wj["triple_solution"] = to_json(*w.triple_solution);
  if (w.gf2_rank) wj["gf2_rank"] = *w.gf2_rank;
  if (w.gf2_rows) wj["gf2_rows"] = *w.gf2_rows;
  if (w.plan) wj["plan"] = to_json(*w.plan);

  Json failures = Json::array();
  for (const CriterionFailure& f : c.failures) failures.push_back({{"criterion", to_string(f.criterion)}, {"reason", f.reason}});
  return Json{{"verdict", to_string(c.verdict)},
              {"criterion", to_string(c.criterion)},
              {"requested", to_string(c.requested)},
              {"witnesses", wj},
              {"notes", c.notes},
              {"failures", failures}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    auto need = [](auto parsed, const std::string& s, const char* what) {
      if (!parsed) throw SpecError(std::string("unknown ") + what + " \"" + s + "\"");
      return *parsed;
    };
    const std::string v = j.at("verdict").get<std::string>();
    const std::string cr = j.at("criterion").get<std::string>();
    const std::string rq = j.at("requested").get<std::string>();
    c.verdict = need(parse_verdict(v), v, "verdict");
    c.criterion = need(parse_criterion(cr), cr, "criterion");
    c.requested = need(parse_criterion_choice(rq), rq, "criterion choice");
    c.notes = j.at("notes").get<std::vector<std::string>>();
    for (const Json& f : j.at("failures")) {
      const std::string name = f.at("criterion").get<std::string>();
      c.failures.push_back({need(parse_criterion(name), name, "criterion"), f.at("reason").get<std::string>()});
    }
    const Json& wj = j.at("witnesses");
    Witnesses& w = c.witnesses;
    w.block_seifert = opt<IntMatrix>(wj, "block_seifert", int_matrix_from_json);
    w.basis_change = opt<IntMatrix>(wj, "basis_change", int_matrix_from_json);
    if (wj.contains("metabolizer")) {
      std::vector<IntVector> m;
      for (const Json& v : wj["metabolizer"]) m.push_back(int_vector_from_json(v, "metabolizer"));
      w.metabolizer = std::move(m);
    }
    w.det_a = opt<Integer>(wj, "det_a", integer_from_json);
    w.det_b = opt<Integer>(wj, "det_b", integer_from_json);
    w.det_difference = opt<Integer>(wj, "det_difference", integer_from_json);
    w.sato_levine = opt<Integer>(wj, "sato_levine", integer_from_json);
    w.triple_linking = opt<Integer>(wj, "triple_linking", integer_from_json);
    w.triple_quotient = opt<Integer>(wj, "triple_quotient", integer_from_json);
    w.alexander_leading = opt<Integer>(wj, "alexander_leading", integer_from_json);
    if (wj.contains("triple_solution")) w.triple_solution = int_vector_from_json(wj["triple_solution"], "triple_solution");
    if (wj.contains("gf2_rank")) w.gf2_rank = wj["gf2_rank"].get<std::size_t>();
    if (wj.contains("gf2_rows")) w.gf2_rows = wj["gf2_rows"].get<std::size_t>();
    if (wj.contains("plan")) w.plan = move_plan_from_json(wj["plan"]);
    return c;
  } catch (const Json::exception& e) {
    throw SpecError(std::string("malformed certificate: ") + e.what());
  }
}

CertificateDoc make_certificate_doc(const KnotSpec& spec, Certificate c, std::optional<std::string> timestamp) {
  CertificateDoc doc;
  doc.version = tool_version();
  doc.input_hash = input_hash(spec);
  doc.timestamp = timestamp ? *timestamp : utc_now();
  doc.input = spec;
  doc.certificate = std::move(c);
  return doc;
}

Json to_json(const CertificateDoc& d) {
  return Json{{"tool", d.tool},
              {"version", d.version},
              {"input_hash", d.input_hash},
              {"timestamp", d.timestamp},
              {"input", to_json(d.input)},
              {"certificate", to_json(d.certificate)}};
}

CertificateDoc certificate_doc_from_json(const Json& j) {
  if (!j.is_object()) throw SpecError("certificate document must be a JSON object");
  try {
    CertificateDoc d;
    d.tool = j.at("tool").get<std::string>();
    d.version = j.at("version").get<std::string>();
    d.input_hash = j.at("input_hash").get<std::string>();
    d.timestamp = j.at("timestamp").get<std::string>();
    d.input = knot_spec_from_json(j.at("input"));
    d.certificate = certificate_from_json(j.at("certificate"));
    return d;
  } catch (const Json::exception& e) {
    throw SpecError(std::string("malformed certificate document: ") + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string input_hash(const KnotSpec& spec) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(to_json(spec).dump())));
  return buf;
}

namespace {

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r"));
  s.erase(s.find_last_not_of(" \t\r") + 1);
  return s;
}

// Comma-separated fields; double quotes protect commas.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  for (auto& f : out) f = trim(f);
  return out;
}

std::optional<bool> parse_flag(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s.empty() || s == "false" || s == "0" || s == "no" || s == "n") return false;
  if (s == "true" || s == "1" || s == "yes" || s == "y") return true;
  return std::nullopt;
}

}  // namespace

IngestResult ingest_csv(std::istream& in) {
  IngestResult res;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::vector<std::string> f = split_csv(t);
    const bool header = first && f.size() >= 2 && !is_decimal(f[1]);
    first = false;
    if (header) continue;

    const std::string where = "line " + std::to_string(lineno) + (f[0].empty() ? "" : " (" + f[0] + ")");
    auto warn = [&](const std::string& msg) { res.warnings.push_back(where + ": " + msg + "; skipped"); };
    if (f.size() < 3 || f.size() > 4) {
      warn("expected 3 or 4 fields, got " + std::to_string(f.size()));
      continue;
    }
    if (f[0].empty()) {
      warn("missing name");
      continue;
    }
    if (!is_decimal(f[1]) || f[1][0] == '-' || f[1].size() > 6) {
      warn("genus \"" + f[1] + "\" is not a positive integer");
      continue;
    }
    const std::size_t g = std::stoul(f[1]);
    if (g != 2) {
      warn("genus " + f[1] + " without a Seifert matrix has no applicable criterion");
      continue;
    }
    const std::optional<bool> flag = f.size() == 4 ? parse_flag(f[3]) : std::optional<bool>(false);
    if (!flag) {
      warn("unrecognized algebraically_slice flag \"" + f[3] + "\"");
      continue;
    }
    IntVector coeffs;
    std::stringstream cs(f[2]);
    std::string tok;
    bool bad = false;
    while (cs >> tok) {
      if (!is_decimal(tok)) {
        bad = true;
        break;
      }
      if (tok[0] == '+') tok.erase(0, 1);
      coeffs.emplace_back(tok);
    }
    if (bad || coeffs.empty()) {
      warn("malformed coefficient list \"" + f[2] + "\"");
      continue;
    }
    try {
      const AlexanderPoly delta = AlexanderPoly::from_coefficients(coeffs);
      if (delta.degree() != 4) {
        warn("Alexander polynomial has degree " + std::to_string(delta.degree()) + ", expected 4");
        continue;
      }
      KnotSpec spec;
      spec.name = f[0];
      spec.genus = g;
      spec.alexander = delta.coefficients();
      spec.algebraically_slice = *flag;
      res.specs.push_back(std::move(spec));
    } catch (const std::exception& e) {
      warn(e.what());
    }
  }
  return res;
}

IngestResult ingest_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path.string());
  return ingest_csv(in);
}

BatchReport run_batch(const std::vector<KnotSpec>& specs, std::size_t jobs) {
  std::vector<BatchEntry> entries(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      BatchEntry& e = entries[i];
      e.name = specs[i].name;
      try {
        e.certificate = certify(to_check_input(specs[i]));
      } catch (const std::exception& ex) {
        e.error = ex.what();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, specs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  BatchReport r;
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  for (const BatchEntry& e : entries) {
    if (!e.certificate) {
      ++r.counts["error"];
      r.warnings.push_back(e.name + ": " + e.error);
    } else if (e.certificate->certified()) {
      ++r.counts[to_string(e.certificate->criterion)];
    } else {
      ++r.counts["NotDetermined"];
      r.not_determined.push_back(e.name);
    }
  }
  r.entries = std::move(entries);
  return r;
}

Json to_json(const BatchReport& r) {
  Json results = Json::array();
  for (const BatchEntry& e : r.entries) {
    if (e.certificate)
      results.push_back({{"name", e.name},
                         {"verdict", to_string(e.certificate->verdict)},
                         {"criterion", to_string(e.certificate->criterion)}});
    else
      results.push_back({{"name", e.name}, {"error", e.error}});
  }
  return Json{{"total", r.entries.size()},
              {"counts", r.counts},
              {"not_determined", r.not_determined},
              {"results", results},
              {"warnings", r.warnings}};
}

}  // namespace solvcert
