#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ebdi {

/// Citations received by a unit (Cited) or made by it (Citing).
enum class Dimension { Cited, Citing };

std::string_view to_string(Dimension d) noexcept;

/// Case-insensitive parse of "CITED" / "CITING". Throws std::invalid_argument.
Dimension parse_dimension(std::string_view text);

struct SubjectCategory {
  std::string id;
  std::string name;
  std::string branch;  // optional, may be empty
};

struct Journal {
  std::string id;
  std::string title;
  std::vector<std::string> sc_memberships;  // sorted, unique, non-empty

  bool member_of(std::string_view sc_id) const;
};

/// One aggregated (focal, partner, dimension) citation count. For Cited the
/// partner cites the focal journal; for Citing the focal journal cites the
/// partner.
struct CitationEdge {
  std::string focal;
  std::string partner;
  Dimension dimension = Dimension::Cited;
  std::uint64_t count = 0;

  friend bool operator==(const CitationEdge&, const CitationEdge&) = default;
};

class CorpusBuilder;

/// Immutable registry of subject categories, journals and citation edges.
/// A corpus without edges is what load_classification returns; load_edges
/// attaches edges and yields a new corpus. Safe to share across readers.
class Corpus {
 public:
  using ScMap = std::map<std::string, SubjectCategory, std::less<>>;
  using JournalMap = std::map<std::string, Journal, std::less<>>;

  const ScMap& subject_categories() const noexcept { return scs_; }
  const JournalMap& journals() const noexcept { return journals_; }

  /// Edges sorted by (focal, dimension, partner).
  std::span<const CitationEdge> edges() const noexcept { return edges_; }

  /// All edges of one focal journal in one dimension, sorted by partner.
  std::span<const CitationEdge> edges_of(std::string_view journal_id,
                                         Dimension dimension) const;

  /// The n used for the maximum entropy ln(n).
  int n_categories() const noexcept { return n_categories_; }

  /// Number of distinct SCs referenced by at least one journal.
  int used_categories() const noexcept { return used_categories_; }

  std::uint64_t total_citations() const noexcept { return total_citations_; }

  bool has_journal(std::string_view id) const;
  bool has_subject_category(std::string_view id) const;

  /// Throws InputError naming the id when unknown.
  const Journal& journal(std::string_view id) const;
  const SubjectCategory& subject_category(std::string_view id) const;

  /// Journals holding a membership in `sc_id`, ordered by journal id.
  std::vector<const Journal*> members_of(std::string_view sc_id) const;

  /// Copy with a different n. Throws std::invalid_argument when n is below
  /// used_categories() or below 1.
  Corpus with_n_categories(int n) const;

 private:
  friend class CorpusBuilder;
  Corpus() = default;

  ScMap scs_;
  JournalMap journals_;
  std::vector<CitationEdge> edges_;
  int n_categories_ = 0;
  int used_categories_ = 0;
  std::uint64_t total_citations_ = 0;
};

/// Programmatic construction with the same validation as the CSV loaders.
/// `where` strings are prefixed to error messages (e.g. "journals.csv:12").
class CorpusBuilder {
 public:
  CorpusBuilder() = default;
  /// Starts from an existing corpus (its edges are kept).
  explicit CorpusBuilder(Corpus base);

  CorpusBuilder& add_subject_category(SubjectCategory sc,
                                      std::string_view where = {});
  CorpusBuilder& add_journal(Journal journal, std::string_view where = {});
  /// Duplicate (focal, partner, dimension) keys are summed.
  CorpusBuilder& add_edge(CitationEdge edge, std::string_view where = {});

  Corpus build() &&;

 private:
  struct EdgeKey {
    std::string focal;
    Dimension dimension;
    std::string partner;
    auto operator<=>(const EdgeKey&) const = default;
  };

  Corpus::ScMap scs_;
  Corpus::JournalMap journals_;
  std::map<EdgeKey, std::uint64_t> edges_;
};

/// Parses subject_categories.csv and journals.csv. The result has no edges
/// and n_categories equal to the number of subject categories.
Corpus load_classification(std::istream& sc_file, std::istream& journal_file,
                           const std::string& sc_source = "subject_categories.csv",
                           const std::string& journal_source = "journals.csv");
Corpus load_classification(const std::filesystem::path& sc_path,
                           const std::filesystem::path& journal_path);

/// Parses citations.csv and attaches its edges to `classification`.
Corpus load_edges(Corpus classification, std::istream& citation_file,
                  const std::string& source = "citations.csv");
Corpus load_edges(Corpus classification,
                  const std::filesystem::path& citation_path);

/// True iff `focal_sc` is among the partner journal's memberships.
/// Throws InputError for an unknown partner.
bool is_internal(const Corpus& corpus, std::string_view partner,
                 std::string_view focal_sc);

}  // namespace ebdi
