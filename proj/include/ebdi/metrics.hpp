#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ebdi/corpus.hpp"

namespace ebdi {

/// How a citation to an external partner in several SCs is attributed in the
/// external distribution: a full count to each SC, or count/|memberships|.
enum class CountingMode { Whole, Fractional };

std::string_view to_string(CountingMode mode) noexcept;
CountingMode parse_counting_mode(std::string_view text);

/// Whether a profile describes a single journal or a whole subject category
/// (all member journals pooled).
enum class UnitKind { Journal, Discipline };

/// Citation distribution of one unit, in one dimension, relative to one focal
/// SC. `raw_external` counts every external citation once, whatever the
/// counting mode; `external_counts` holds the attributed per-SC values that
/// feed the entropy. Under Fractional the two agree in sum; under Whole the
/// attributed sum can exceed `raw_external`.
struct CitationProfile {
  UnitKind kind = UnitKind::Journal;
  std::string unit_id;
  std::string focal_sc;
  Dimension dimension = Dimension::Cited;
  CountingMode mode = CountingMode::Whole;
  double internal_count = 0.0;
  double raw_external = 0.0;
  std::map<std::string, double, std::less<>> external_counts;  // focal_sc excluded, values > 0

  double total() const noexcept { return internal_count + raw_external; }
};

struct DistributionStats {
  double entropy = 0.0;      // nats
  double max_entropy = 0.0;  // ln(n_categories)
  double pct_max_entropy = 0.0;
  std::size_t raw_diversity = 0;
};

struct EbdiScore {
  std::string unit_id;
  std::string focal_sc;
  Dimension dimension = Dimension::Cited;
  double pct_internal = 0.0;
  double sum_external = 0.0;  // raw external citations
  DistributionStats stats;
  double ebdi = 0.0;
};

/// Profile of a journal relative to one of its own subject categories.
/// Throws InputError for an unknown journal or when `focal_sc` is not among
/// the journal's memberships.
CitationProfile build_profile(const Corpus& corpus, std::string_view journal_id,
                              std::string_view focal_sc, Dimension dimension,
                              CountingMode mode);

/// Profile of a subject category: the edges of every member journal pooled,
/// with the category itself as focal SC.
CitationProfile build_discipline_profile(const Corpus& corpus,
                                         std::string_view sc_id,
                                         Dimension dimension, CountingMode mode);

/// Shannon entropy -sum p ln p in nats. Empty input gives 0.
/// Precondition: every count > 0.
double shannon_entropy(std::span<const double> counts);
double shannon_entropy(const std::map<std::string, double, std::less<>>& counts);

/// 100 * H / ln(n). Throws std::invalid_argument when n < 2.
double pct_of_max_entropy(double entropy, int n_categories);

std::size_t raw_diversity(const CitationProfile& profile);

DistributionStats distribution_stats(const CitationProfile& profile,
                                     int n_categories);

/// pct_internal / (pct_hmax + 1), both arguments in percent.
double ebdi_value(double pct_internal, double pct_max_entropy);

/// EBDI for one profile; std::nullopt when the profile holds no citations,
/// which must never be reported as 0. Throws std::invalid_argument for an
/// inconsistent profile or n_categories < 2.
std::optional<EbdiScore> compute_ebdi(const CitationProfile& profile,
                                      int n_categories);

struct IndicatorPair {
  std::optional<EbdiScore> cited;
  std::optional<EbdiScore> citing;
};

IndicatorPair compute_journal_indicators(const Corpus& corpus,
                                         std::string_view journal_id,
                                         std::string_view focal_sc,
                                         CountingMode mode);

IndicatorPair compute_discipline_indicators(const Corpus& corpus,
                                            std::string_view sc_id,
                                            CountingMode mode);

}  // namespace ebdi
