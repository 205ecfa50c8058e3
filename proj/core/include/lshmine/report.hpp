#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lshmine/engine.hpp"

namespace lshmine {

inline constexpr const char* kReportSchema = "lshmine-report/1";

struct ItemsetEntry {
  Itemset items;
  std::size_t support = 0;
  bool operator==(const ItemsetEntry&) const = default;
};

struct ComparisonSection {
  std::vector<Itemset> missed;
  std::vector<Itemset> spurious;
  bool accounting_ok = true;
  std::optional<TrialSummary> trials;
};

/// Serializable view of a run. Wall-clock fields are kept only when
/// `timings` is set so that default reports are reproducible byte for byte.
struct ReportDocument {
  std::string schema_version = kReportSchema;
  MiningConfig config;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<LevelStats> levels;
  std::vector<ItemsetEntry> itemsets;  // by (size, lexicographic items)
  std::optional<ComparisonSection> comparison;
  bool timings = false;
  double total_ms = 0.0;
};

ReportDocument make_document(const MiningReport& report, bool timings = false);
ReportDocument make_document(const OracleComparison& cmp, bool timings = false);

nlohmann::ordered_json to_json(const ReportDocument& doc);
/// Throws Error on a schema mismatch or missing field.
ReportDocument document_from_json(const nlohmann::ordered_json& j);

/// Pretty JSON with a trailing newline.
std::string to_json_string(const ReportDocument& doc);

/// Header of the per-(variant, level) CSV table.
std::string csv_header();
/// One row per level. wall_ms is 0 unless `timings`.
void write_csv_rows(std::ostream& out, const MiningReport& report, bool timings = false);

}  // namespace lshmine
