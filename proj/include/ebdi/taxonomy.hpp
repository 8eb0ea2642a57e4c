#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ebdi/corpus.hpp"

namespace ebdi {

enum class Level { High, Low };

/// Journal roles from the combination of citing and cited levels.
enum class JournalRole {
  Core,               // citing HIGH, cited HIGH
  KnowledgeImporter,  // citing LOW,  cited HIGH
  KnowledgeExporter,  // citing HIGH, cited LOW
  Tangential,         // citing LOW,  cited LOW
  Unclassified,       // a level is missing
};

/// Discipline type from the sign of cited EBDI minus citing EBDI.
enum class DisciplineKind { Importer, Exporter, Balanced, Unclassified };

std::string_view to_string(Level level) noexcept;
std::string_view to_string(JournalRole role) noexcept;
std::string_view to_string(DisciplineKind kind) noexcept;

struct LevelAssignment {
  std::string unit_id;
  Dimension dimension = Dimension::Cited;
  double ebdi_value = 0.0;
  Level level = Level::Low;
  double threshold_used = 0.0;
};

struct DisciplineType {
  std::string sc_id;
  std::optional<double> cited_ebdi;
  std::optional<double> citing_ebdi;
  std::optional<double> difference;  // cited - citing
  DisciplineKind type = DisciplineKind::Unclassified;
};

/// Median: middle order statistic for odd sizes, mean of the two middle ones
/// for even sizes. Throws std::invalid_argument on empty input.
double median_threshold(std::span<const double> values);

/// Levels for one dimension against the median of `scores`; a value equal to
/// the threshold is HIGH. Output keeps input order. Throws
/// std::invalid_argument with fewer than two scores.
std::vector<LevelAssignment> assign_levels(
    std::span<const std::pair<std::string, double>> scores, Dimension dimension);

JournalRole classify_journal(std::optional<Level> cited_level,
                             std::optional<Level> citing_level) noexcept;

DisciplineType classify_discipline(std::string sc_id,
                                   std::optional<double> cited_ebdi,
                                   std::optional<double> citing_ebdi);

}  // namespace ebdi
