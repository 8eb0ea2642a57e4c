#include "ebdi/metrics.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ebdi/error.hpp"

namespace ebdi {

namespace {

void accumulate_edges(const Corpus& corpus, std::span<const CitationEdge> edges,
                      CitationProfile& profile) {
  for (const auto& edge : edges) {
    if (edge.count == 0) continue;
    const auto count = static_cast<double>(edge.count);
    const Journal& partner = corpus.journal(edge.partner);
    if (partner.member_of(profile.focal_sc)) {
      profile.internal_count += count;
      continue;
    }
    profile.raw_external += count;
    const double share =
        profile.mode == CountingMode::Whole
            ? count
            : count / static_cast<double>(partner.sc_memberships.size());
    for (const auto& sc : partner.sc_memberships) {
      profile.external_counts[sc] += share;
    }
  }
}

}  // namespace

std::string_view to_string(CountingMode mode) noexcept {
  return mode == CountingMode::Whole ? "whole" : "fractional";
}

CountingMode parse_counting_mode(std::string_view text) {
  std::string lower;
  for (char ch : text) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (lower == "whole") return CountingMode::Whole;
  if (lower == "fractional") return CountingMode::Fractional;
  throw std::invalid_argument("unknown counting mode '" + std::string(text) + "'");
}

CitationProfile build_profile(const Corpus& corpus, std::string_view journal_id,
                              std::string_view focal_sc, Dimension dimension,
                              CountingMode mode) {
  const Journal& journal = corpus.journal(journal_id);
  if (!journal.member_of(focal_sc)) {
    throw InputError("journal '" + journal.id + "' is not classified in '" +
                     std::string(focal_sc) + "'");
  }
  CitationProfile profile;
  profile.kind = UnitKind::Journal;
  profile.unit_id = journal.id;
  profile.focal_sc = std::string(focal_sc);
  profile.dimension = dimension;
  profile.mode = mode;
  accumulate_edges(corpus, corpus.edges_of(journal.id, dimension), profile);
  return profile;
}

CitationProfile build_discipline_profile(const Corpus& corpus,
                                         std::string_view sc_id,
                                         Dimension dimension,
                                         CountingMode mode) {
  const SubjectCategory& sc = corpus.subject_category(sc_id);
  CitationProfile profile;
  profile.kind = UnitKind::Discipline;
  profile.unit_id = sc.id;
  profile.focal_sc = sc.id;
  profile.dimension = dimension;
  profile.mode = mode;
  for (const Journal* member : corpus.members_of(sc.id)) {
    accumulate_edges(corpus, corpus.edges_of(member->id, dimension), profile);
  }
  return profile;
}

double shannon_entropy(std::span<const double> counts) {
  double total = 0.0;
  for (double x : counts) total += x;
  if (counts.size() <= 1 || total <= 0.0) return 0.0;
  double h = 0.0;
  for (double x : counts) {
    if (x <= 0.0) continue;  // 0 ln 0 = 0
    const double p = x / total;
    h -= p * std::log(p);
  }
  return h < 0.0 ? 0.0 : h;
}

double shannon_entropy(const std::map<std::string, double, std::less<>>& counts) {
  std::vector<double> values;
  values.reserve(counts.size());
  for (const auto& [sc, x] : counts) values.push_back(x);
  return shannon_entropy(values);
}

double pct_of_max_entropy(double entropy, int n_categories) {
  if (n_categories < 2) {
    throw std::invalid_argument(
        "n_categories must be at least 2 for a positive maximum entropy");
  }
  const double pct = 100.0 * (entropy / std::log(static_cast<double>(n_categories)));
  return std::min(pct, 100.0);
}

std::size_t raw_diversity(const CitationProfile& profile) {
  std::size_t k = 0;
  for (const auto& [sc, x] : profile.external_counts) {
    if (x > 0.0) ++k;
  }
  return k;
}

DistributionStats distribution_stats(const CitationProfile& profile,
                                     int n_categories) {
  DistributionStats stats;
  stats.entropy = shannon_entropy(profile.external_counts);
  stats.max_entropy = std::log(static_cast<double>(n_categories));
  stats.pct_max_entropy = pct_of_max_entropy(stats.entropy, n_categories);
  stats.raw_diversity = raw_diversity(profile);
  return stats;
}

double ebdi_value(double pct_internal, double pct_max_entropy) {
  return pct_internal / (pct_max_entropy + 1.0);
}

std::optional<EbdiScore> compute_ebdi(const CitationProfile& profile,
                                      int n_categories) {
  if (n_categories < 2) {
    throw std::invalid_argument("n_categories must be at least 2");
  }
  if (profile.internal_count < 0.0 || profile.raw_external < 0.0) {
    throw std::invalid_argument("negative citation count in profile '" +
                                profile.unit_id + "'");
  }
  if (profile.external_counts.contains(profile.focal_sc)) {
    throw std::invalid_argument("focal SC '" + profile.focal_sc +
                                "' appears in the external distribution");
  }
  for (const auto& [sc, x] : profile.external_counts) {
    if (!(x > 0.0)) {
      throw std::invalid_argument("non-positive external count for '" + sc + "'");
    }
  }
  if (profile.total() <= 0.0) return std::nullopt;

  EbdiScore score;
  score.unit_id = profile.unit_id;
  score.focal_sc = profile.focal_sc;
  score.dimension = profile.dimension;
  score.stats = distribution_stats(profile, n_categories);
  score.pct_internal = 100.0 * (profile.internal_count / profile.total());
  score.sum_external = profile.raw_external;
  score.ebdi = ebdi_value(score.pct_internal, score.stats.pct_max_entropy);
  return score;
}

IndicatorPair compute_journal_indicators(const Corpus& corpus,
                                         std::string_view journal_id,
                                         std::string_view focal_sc,
                                         CountingMode mode) {
  const int n = corpus.n_categories();
  return {
      compute_ebdi(build_profile(corpus, journal_id, focal_sc, Dimension::Cited, mode), n),
      compute_ebdi(build_profile(corpus, journal_id, focal_sc, Dimension::Citing, mode), n),
  };
}

IndicatorPair compute_discipline_indicators(const Corpus& corpus,
                                            std::string_view sc_id,
                                            CountingMode mode) {
  const int n = corpus.n_categories();
  return {
      compute_ebdi(build_discipline_profile(corpus, sc_id, Dimension::Cited, mode), n),
      compute_ebdi(build_discipline_profile(corpus, sc_id, Dimension::Citing, mode), n),
  };
}

}  // namespace ebdi
