#pragma once

// Wire formats: KnotSpec and CertificateDoc JSON, knot-table CSV ingestion and
// batch reports. Indices on the wire are 1-based; integers are JSON numbers
// when they fit in 64 bits and decimal strings otherwise.

#include "solvcert/gate.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace solvcert {

using Json = nlohmann::json;

/// Malformed or invalid input document.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct KnotSpec {
  std::string name;
  std::size_t genus = 0;
  std::optional<IntMatrix> seifert;
  std::optional<IntVector> alexander;  // normalized, low degree first
  bool algebraically_slice = false;
  std::optional<MilnorProfile> profile;

  friend bool operator==(const KnotSpec&, const KnotSpec&) = default;
};

KnotSpec knot_spec_from_json(const Json& j);
Json to_json(const KnotSpec& spec);
/// Reads and validates a KnotSpec file. Throws SpecError.
KnotSpec load_knot_spec(const std::filesystem::path& path);
CheckInput to_check_input(const KnotSpec& spec);

Json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j);
Json to_json(const Integer& x);
Json to_json(const IntVector& v);
Integer integer_from_json(const Json& j);

Json to_json(const MovePlan& plan);
MovePlan move_plan_from_json(const Json& j);
Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

struct CertificateDoc {
  std::string tool = "solvcert";
  std::string version;
  std::string input_hash;  // FNV-1a 64 of the canonical input, hex
  std::string timestamp;   // ISO 8601 UTC
  KnotSpec input;
  Certificate certificate;
};

CertificateDoc make_certificate_doc(const KnotSpec& spec, Certificate c, std::optional<std::string> timestamp = {});
Json to_json(const CertificateDoc& doc);
CertificateDoc certificate_doc_from_json(const Json& j);

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);
std::string input_hash(const KnotSpec& spec);
const char* tool_version() noexcept;

struct IngestResult {
  std::vector<KnotSpec> specs;
  std::vector<std::string> warnings;
};

/// CSV rows: name, genus, space-separated Alexander coefficients (low degree
/// first), optional algebraically-slice flag. A header row is skipped. Rows that
/// cannot be checked are skipped with a warning.
IngestResult ingest_csv(std::istream& in);
IngestResult ingest_csv_file(const std::filesystem::path& path);

struct BatchEntry {
  std::string name;
  std::optional<Certificate> certificate;
  std::string error;
};

struct BatchReport {
  std::vector<BatchEntry> entries;  // sorted by name
  std::map<std::string, std::size_t> counts;  // criterion name (or "NotDetermined", "error") -> count
  std::vector<std::string> not_determined;
  std::vector<std::string> warnings;
};

/// Certifies every spec with `jobs` worker threads; the report does not depend on `jobs`.
BatchReport run_batch(const std::vector<KnotSpec>& specs, std::size_t jobs = 1);
Json to_json(const BatchReport& r);

}  // namespace solvcert
