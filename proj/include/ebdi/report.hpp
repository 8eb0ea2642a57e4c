#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ebdi/corpus.hpp"
#include "ebdi/metrics.hpp"
#include "ebdi/scatter_svg.hpp"
#include "ebdi/stats.hpp"
#include "ebdi/taxonomy.hpp"

namespace ebdi {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::filesystem::path classification;
  std::filesystem::path journals;
  std::filesystem::path citations;
  std::optional<std::filesystem::path> metrics;
  // roles only: precomputed `unit_id,cited_ebdi,citing_ebdi` pairs used
  // instead of a corpus
  std::optional<std::filesystem::path> scores;
  // restrict to one SC; otherwise every journal is scored in each of its SCs
  std::optional<std::string> focal_sc;
  std::optional<int> n_categories;
  CountingMode counting = CountingMode::Whole;
  UnitKind unit = UnitKind::Journal;
  Dimension dimension = Dimension::Cited;  // network only
  std::size_t top_k = 10;                  // network only
  std::filesystem::path out_dir = ".";
  OutputFormat format = OutputFormat::Csv;
  int decimals = 2;

  /// Throws InputError naming the offending setting.
  void validate(bool needs_corpus) const;
};

/// Loads the three corpus files and applies the n_categories override.
Corpus load_corpus(const RunConfig& config);

// ---- indicators ----------------------------------------------------------

struct IndicatorRow {
  UnitKind kind = UnitKind::Journal;
  std::string unit_id;
  std::string focal_sc;
  Dimension dimension = Dimension::Cited;
  int n_categories = 0;
  CountingMode mode = CountingMode::Whole;
  std::optional<EbdiScore> score;  // empty when the dimension has no citations
};

/// One row per (unit, focal SC, dimension) ordered by unit id, SC, then
/// CITED before CITING.
std::vector<IndicatorRow> compute_indicator_rows(const Corpus& corpus,
                                                 const RunConfig& config);

void write_indicators_csv(std::ostream& out, std::span<const IndicatorRow> rows,
                          int decimals);
void write_indicators_json(std::ostream& out, std::span<const IndicatorRow> rows);

// ---- roles ---------------------------------------------------------------

struct UnitScores {
  std::string group;  // focal SC for journals, empty for disciplines
  std::string unit_id;
  std::optional<double> cited;
  std::optional<double> citing;
};

struct RoleRow {
  std::string unit_id;
  std::optional<double> cited;
  std::optional<double> citing;
  std::optional<Level> cited_level;
  std::optional<Level> citing_level;
  JournalRole role = JournalRole::Unclassified;
  DisciplineType discipline;
};

struct RoleTable {
  UnitKind kind = UnitKind::Journal;
  std::string group;
  double cited_threshold = 0.0;
  double citing_threshold = 0.0;
  std::vector<RoleRow> rows;

  ScatterPlot scatter() const;
};

/// Pairs CITED and CITING rows of each (unit, focal SC).
std::vector<UnitScores> collect_unit_scores(std::span<const IndicatorRow> rows);

/// Thresholds, levels and labels for one analysed set. Each dimension's
/// median is taken over the units that have a value in it. Throws InputError
/// when a dimension has fewer than two values.
RoleTable classify_units(std::string group, std::span<const UnitScores> units,
                         UnitKind kind);

/// Reads `unit_id,cited_ebdi,citing_ebdi`; empty or NA cells are missing.
std::vector<UnitScores> read_scores_csv(std::istream& in, const std::string& source);

void write_roles_csv(std::ostream& out, std::span<const RoleTable> tables,
                     int decimals);
void write_roles_json(std::ostream& out, std::span<const RoleTable> tables);

// ---- correlations --------------------------------------------------------

/// Reads `journal_id,metric_name,value` into one series per metric, ordered
/// by metric name. NA or empty values are treated as absent.
std::vector<MetricSeries> read_metrics_csv(std::istream& in, const std::string& source);

/// cited_ebdi and citing_ebdi series keyed by unit id. Throws InputError when
/// a unit appears under several focal SCs.
std::vector<MetricSeries> ebdi_series(std::span<const IndicatorRow> rows);

/// All pairwise correlations in series order. Pairs that cannot be computed
/// (constant series, overlap below 3) are skipped and reported in `warnings`.
std::vector<CorrelationResult> correlate_all(std::span<const MetricSeries> series,
                                             std::vector<std::string>& warnings);

void write_correlations_csv(std::ostream& out,
                            std::span<const CorrelationResult> results,
                            int decimals);
void write_correlations_json(std::ostream& out,
                             std::span<const CorrelationResult> results);

// ---- runners -------------------------------------------------------------

struct RunResult {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> warnings;
};

RunResult run_indicators(const RunConfig& config);
RunResult run_roles(const RunConfig& config);
RunResult run_correlations(const RunConfig& config);
RunResult run_network(const RunConfig& config);

}  // namespace ebdi
