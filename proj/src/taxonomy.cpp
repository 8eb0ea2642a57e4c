#include "ebdi/taxonomy.hpp"

#include <algorithm>
#include <stdexcept>

namespace ebdi {

std::string_view to_string(Level level) noexcept {
  return level == Level::High ? "HIGH" : "LOW";
}

std::string_view to_string(JournalRole role) noexcept {
  switch (role) {
    case JournalRole::Core: return "CORE";
    case JournalRole::KnowledgeImporter: return "KNOWLEDGE_IMPORTER";
    case JournalRole::KnowledgeExporter: return "KNOWLEDGE_EXPORTER";
    case JournalRole::Tangential: return "TANGENTIAL";
    case JournalRole::Unclassified: break;
  }
  return "UNCLASSIFIED";
}

std::string_view to_string(DisciplineKind kind) noexcept {
  switch (kind) {
    case DisciplineKind::Importer: return "IMPORTER";
    case DisciplineKind::Exporter: return "EXPORTER";
    case DisciplineKind::Balanced: return "BALANCED";
    case DisciplineKind::Unclassified: break;
  }
  return "UNCLASSIFIED";
}

double median_threshold(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty list");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  if (m % 2 == 1) return sorted[m / 2];
  return (sorted[m / 2 - 1] + sorted[m / 2]) / 2.0;
}

std::vector<LevelAssignment> assign_levels(
    std::span<const std::pair<std::string, double>> scores,
    Dimension dimension) {
  if (scores.size() < 2) {
    throw std::invalid_argument(
        "at least two scored units are needed for a " +
        std::string(to_string(dimension)) + " threshold");
  }
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& [id, value] : scores) values.push_back(value);
  const double threshold = median_threshold(values);

  std::vector<LevelAssignment> out;
  out.reserve(scores.size());
  for (const auto& [id, value] : scores) {
    out.push_back(LevelAssignment{id, dimension, value,
                                  value >= threshold ? Level::High : Level::Low,
                                  threshold});
  }
  return out;
}

JournalRole classify_journal(std::optional<Level> cited_level,
                             std::optional<Level> citing_level) noexcept {
  if (!cited_level || !citing_level) return JournalRole::Unclassified;
  const bool cited_high = *cited_level == Level::High;
  const bool citing_high = *citing_level == Level::High;
  if (citing_high && cited_high) return JournalRole::Core;
  if (!citing_high && cited_high) return JournalRole::KnowledgeImporter;
  if (citing_high && !cited_high) return JournalRole::KnowledgeExporter;
  return JournalRole::Tangential;
}

DisciplineType classify_discipline(std::string sc_id,
                                   std::optional<double> cited_ebdi,
                                   std::optional<double> citing_ebdi) {
  DisciplineType out{std::move(sc_id), cited_ebdi, citing_ebdi, std::nullopt,
                     DisciplineKind::Unclassified};
  if (!cited_ebdi || !citing_ebdi) return out;
  const double diff = *cited_ebdi - *citing_ebdi;
  out.difference = diff;
  out.type = diff > 0.0   ? DisciplineKind::Importer
             : diff < 0.0 ? DisciplineKind::Exporter
                          : DisciplineKind::Balanced;
  return out;
}

}  // namespace ebdi
