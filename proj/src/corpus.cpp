#include "ebdi/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <stdexcept>

#include "ebdi/csv.hpp"
#include "ebdi/error.hpp"

namespace ebdi {

namespace {

[[noreturn]] void fail(std::string_view where, const std::string& message) {
  if (where.empty()) throw InputError(message);
  throw InputError(std::string(where) + ": " + message);
}

std::string location(const csv::Reader& reader, const csv::Row& row) {
  return reader.source() + ":" + std::to_string(row.line);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

void expect_columns(const csv::Reader& reader, const csv::Row& row,
                    std::size_t n) {
  if (row.fields.size() != n) {
    throw InputError(reader.source(), row.line,
                     "malformed row: expected " + std::to_string(n) +
                         " fields, found " + std::to_string(row.fields.size()));
  }
}

}  // namespace

std::string_view to_string(Dimension d) noexcept {
  return d == Dimension::Cited ? "CITED" : "CITING";
}

Dimension parse_dimension(std::string_view text) {
  std::string upper;
  for (char ch : csv::trim(text)) {
    upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  }
  if (upper == "CITED") return Dimension::Cited;
  if (upper == "CITING") return Dimension::Citing;
  throw std::invalid_argument("unparseable dimension '" + std::string(text) +
                              "' (expected CITED or CITING)");
}

bool Journal::member_of(std::string_view sc_id) const {
  return std::binary_search(sc_memberships.begin(), sc_memberships.end(), sc_id);
}

std::span<const CitationEdge> Corpus::edges_of(std::string_view journal_id,
                                               Dimension dimension) const {
  auto lo = std::lower_bound(
      edges_.begin(), edges_.end(), std::pair{journal_id, dimension},
      [](const CitationEdge& e, const auto& key) {
        return std::tie(e.focal, e.dimension) <
               std::tie(key.first, key.second);
      });
  auto hi = lo;
  while (hi != edges_.end() && hi->focal == journal_id &&
         hi->dimension == dimension) {
    ++hi;
  }
  return {lo, hi};
}

bool Corpus::has_journal(std::string_view id) const {
  return journals_.find(id) != journals_.end();
}

bool Corpus::has_subject_category(std::string_view id) const {
  return scs_.find(id) != scs_.end();
}

const Journal& Corpus::journal(std::string_view id) const {
  auto it = journals_.find(id);
  if (it == journals_.end()) {
    throw InputError("unknown journal '" + std::string(id) + "'");
  }
  return it->second;
}

const SubjectCategory& Corpus::subject_category(std::string_view id) const {
  auto it = scs_.find(id);
  if (it == scs_.end()) {
    throw InputError("unknown subject category '" + std::string(id) + "'");
  }
  return it->second;
}

std::vector<const Journal*> Corpus::members_of(std::string_view sc_id) const {
  std::vector<const Journal*> out;
  for (const auto& [id, journal] : journals_) {
    if (journal.member_of(sc_id)) out.push_back(&journal);
  }
  return out;
}

Corpus Corpus::with_n_categories(int n) const {
  if (n < 1 || n < used_categories_) {
    throw std::invalid_argument(
        "n_categories " + std::to_string(n) + " is below the " +
        std::to_string(used_categories_) +
        " subject categories referenced by journals");
  }
  Corpus copy = *this;
  copy.n_categories_ = n;
  return copy;
}

CorpusBuilder::CorpusBuilder(Corpus base)
    : scs_(std::move(base.scs_)), journals_(std::move(base.journals_)) {
  for (auto& e : base.edges_) {
    edges_[EdgeKey{std::move(e.focal), e.dimension, std::move(e.partner)}] +=
        e.count;
  }
}

CorpusBuilder& CorpusBuilder::add_subject_category(SubjectCategory sc,
                                                   std::string_view where) {
  if (sc.id.empty()) fail(where, "empty sc_id");
  if (sc.name.empty()) fail(where, "empty name for subject category '" + sc.id + "'");
  if (scs_.contains(sc.id)) fail(where, "duplicate sc_id '" + sc.id + "'");
  std::string key = sc.id;
  scs_.emplace(std::move(key), std::move(sc));
  return *this;
}

CorpusBuilder& CorpusBuilder::add_journal(Journal journal,
                                          std::string_view where) {
  if (journal.id.empty()) fail(where, "empty journal_id");
  if (journals_.contains(journal.id)) {
    fail(where, "duplicate journal_id '" + journal.id + "'");
  }
  if (journal.sc_memberships.empty()) {
    fail(where, "journal without SC: '" + journal.id + "'");
  }
  std::set<std::string> seen;
  for (const auto& sc : journal.sc_memberships) {
    if (!scs_.contains(sc)) {
      fail(where, "journal '" + journal.id + "' references unknown sc_id '" +
                      sc + "'");
    }
    if (!seen.insert(sc).second) {
      fail(where, "journal '" + journal.id + "' lists sc_id '" + sc + "' twice");
    }
  }
  std::sort(journal.sc_memberships.begin(), journal.sc_memberships.end());
  std::string key = journal.id;
  journals_.emplace(std::move(key), std::move(journal));
  return *this;
}

CorpusBuilder& CorpusBuilder::add_edge(CitationEdge edge,
                                       std::string_view where) {
  if (!journals_.contains(edge.focal)) {
    fail(where, "unknown focal journal '" + edge.focal + "'");
  }
  if (!journals_.contains(edge.partner)) {
    fail(where, "unknown partner journal '" + edge.partner + "'");
  }
  edges_[EdgeKey{std::move(edge.focal), edge.dimension,
                 std::move(edge.partner)}] += edge.count;
  return *this;
}

Corpus CorpusBuilder::build() && {
  Corpus corpus;
  std::set<std::string_view> used;
  for (const auto& [id, journal] : journals_) {
    used.insert(journal.sc_memberships.begin(), journal.sc_memberships.end());
  }
  corpus.used_categories_ = static_cast<int>(used.size());
  corpus.n_categories_ = static_cast<int>(scs_.size());
  corpus.edges_.reserve(edges_.size());
  for (auto& [key, count] : edges_) {
    corpus.edges_.push_back(CitationEdge{key.focal, key.partner, key.dimension, count});
    corpus.total_citations_ += count;
  }
  corpus.scs_ = std::move(scs_);
  corpus.journals_ = std::move(journals_);
  return corpus;
}

Corpus load_classification(std::istream& sc_file, std::istream& journal_file,
                           const std::string& sc_source,
                           const std::string& journal_source) {
  CorpusBuilder builder;

  csv::Reader scs(sc_file, sc_source);
  static constexpr std::string_view kScHeader[] = {"sc_id", "name", "branch"};
  csv::expect_header(scs, kScHeader);
  csv::Row row;
  while (scs.next(row)) {
    expect_columns(scs, row, 3);
    builder.add_subject_category(
        SubjectCategory{std::string(csv::trim(row.fields[0])),
                        std::string(csv::trim(row.fields[1])),
                        std::string(csv::trim(row.fields[2]))},
        location(scs, row));
  }

  csv::Reader journals(journal_file, journal_source);
  static constexpr std::string_view kJournalHeader[] = {"journal_id", "title",
                                                         "sc_memberships"};
  csv::expect_header(journals, kJournalHeader);
  while (journals.next(row)) {
    expect_columns(journals, row, 3);
    Journal journal{std::string(csv::trim(row.fields[0])),
                    std::string(csv::trim(row.fields[1])),
                    {}};
    std::string_view list = row.fields[2];
    while (!list.empty()) {
      auto cut = list.find(';');
      auto item = csv::trim(list.substr(0, cut));
      if (!item.empty()) journal.sc_memberships.emplace_back(item);
      if (cut == std::string_view::npos) break;
      list.remove_prefix(cut + 1);
    }
    builder.add_journal(std::move(journal), location(journals, row));
  }
  return std::move(builder).build();
}

Corpus load_classification(const std::filesystem::path& sc_path,
                           const std::filesystem::path& journal_path) {
  auto sc_in = open_input(sc_path);
  auto journal_in = open_input(journal_path);
  return load_classification(sc_in, journal_in, sc_path.string(),
                             journal_path.string());
}

Corpus load_edges(Corpus classification, std::istream& citation_file,
                  const std::string& source) {
  const int n = classification.n_categories();
  CorpusBuilder builder(std::move(classification));

  csv::Reader reader(citation_file, source);
  static constexpr std::string_view kHeader[] = {
      "focal_journal_id", "partner_journal_id", "dimension", "count"};
  csv::expect_header(reader, kHeader);
  csv::Row row;
  while (reader.next(row)) {
    expect_columns(reader, row, 4);
    CitationEdge edge;
    edge.focal = std::string(csv::trim(row.fields[0]));
    edge.partner = std::string(csv::trim(row.fields[1]));
    try {
      edge.dimension = parse_dimension(row.fields[2]);
    } catch (const std::invalid_argument& e) {
      throw InputError(reader.source(), row.line, e.what());
    }
    auto count_text = csv::trim(row.fields[3]);
    if (!count_text.empty() && count_text.front() == '-') {
      throw InputError(reader.source(), row.line,
                       "negative citation count '" + std::string(count_text) + "'");
    }
    auto [ptr, ec] = std::from_chars(count_text.data(),
                                     count_text.data() + count_text.size(),
                                     edge.count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size() ||
        count_text.empty()) {
      throw InputError(reader.source(), row.line,
                       "malformed citation count '" + std::string(count_text) + "'");
    }
    builder.add_edge(std::move(edge), location(reader, row));
  }
  Corpus corpus = std::move(builder).build();
  return corpus.n_categories() == n ? corpus : corpus.with_n_categories(n);
}

Corpus load_edges(Corpus classification,
                  const std::filesystem::path& citation_path) {
  auto in = open_input(citation_path);
  return load_edges(std::move(classification), in, citation_path.string());
}

bool is_internal(const Corpus& corpus, std::string_view partner,
                 std::string_view focal_sc) {
  return corpus.journal(partner).member_of(focal_sc);
}

}  // namespace ebdi
