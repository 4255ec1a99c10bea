#pragma once

#include "dioph/algapprox.hpp"
#include "dioph/bounds.hpp"
#include "dioph/polysearch.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dioph {

struct ExperimentConfig {
  std::string target = "extremal:1,2";
  std::vector<int> degrees = {2};
  GridSpec grid;
  long max_height = 0;       // records; 0: last grid height
  long star_max_height = 0;  // 0: largest grid height whose star search fits the budget
  Strategy strategy = Strategy::Exhaustive;
  std::uint64_t budget = kDefaultEnumerationBudget;
  long precision_cap = kDefaultPrecisionCap;
  long lattice_cap_bits = 160;
  long exhaustive_limit = 0;
  std::size_t record_skip = 2;
  double tail = 0.5;
  /// Estimates enter the profile as point -/+ bracket_constant / ln H.
  double bracket_constant = 4.0;
  bool star_mixed = false;  // also report max -log psi*(H) / log H
  std::uint64_t seed = 0;  // substituted into a bare "digits" target
  unsigned workers = 0;
  std::string out;  // output directory; empty: nothing written
};

/// Flat "key = value" lines; '#' starts a comment.
ExperimentConfig parse_config(const std::string& text);
std::string config_to_text(const ExperimentConfig& config);
bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

struct DegreeResult {
  int n = 0;
  std::optional<ApproximationTable> table;
  std::optional<RecordSequence> records;
  std::optional<StarTable> star_table;
  std::optional<StarRecords> star_records;
  std::optional<ExponentEstimate> w, w_hat, w_star, w_hat_star, w_star_mixed;
};

struct ResultBundle {
  ExperimentConfig config;
  std::string target;
  bool transcendental = false;
  std::vector<DegreeResult> degrees;
  ExponentProfile profile;
  BoundReport report;
  std::vector<std::string> warnings;
  bool budget_exceeded = false;
  bool profile_flagged = false;  // derived profile violates R1 or R2
  double seconds = 0;
};

/// Runs every stage for every configured degree. Stages that exceed the
/// budget are skipped and set budget_exceeded; the bundle is written to
/// config.out (when set) either way.
ResultBundle run(const ExperimentConfig& config);

/// Throws BudgetExceeded when the bundle is partial.
void require_complete(const ResultBundle& bundle);

nlohmann::json bundle_to_json(const ResultBundle& bundle, bool include_timing = true);
/// bundle.json plus one CSV per table under `dir`.
void write_bundle(const ResultBundle& bundle, const std::string& dir);
nlohmann::json load_bundle(const std::string& path);

struct RowDelta {
  int n = 0;
  std::string table;  // "psi" or "star"
  long height = 0;
  double log10_ratio = 0;  // log10(hi_a / hi_b)
  bool witness_differs = false;
  std::string witness_a, witness_b;
};

struct EstimateDelta {
  int n = 0;
  std::string name;
  double a = 0, b = 0;
};

struct DiffReport {
  std::vector<RowDelta> rows;
  std::vector<EstimateDelta> estimates;
  bool comparable_settings = false;  // same strategy and budgets
  bool witnesses_differ = false;     // at comparable settings
  bool empty() const { return rows.empty() && estimates.empty(); }
};

/// Rows are matched on (table, n, H); psi rows compare only where both are exhaustive.
/// Throws IncompatibleBundles for different targets or degrees.
DiffReport compare(const nlohmann::json& a, const nlohmann::json& b);
std::string diff_to_text(const DiffReport& diff);

/// which: psi, star, records, star-records (need n), bounds (constants for
/// configured degrees). Throws MissingTable.
std::string table_export(const nlohmann::json& bundle, const std::string& which, int n = 0);

}  // namespace dioph
