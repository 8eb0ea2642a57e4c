#include "ebdi/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ebdi/csv.hpp"
#include "ebdi/error.hpp"
#include "ebdi/format.hpp"
#include "ebdi/network.hpp"

namespace ebdi {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string opt_fixed(const std::optional<double>& v, int decimals) {
  return v ? format_fixed(*v, decimals) : std::string(kMissing);
}

ordered_json opt_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string_view unit_column(UnitKind kind) {
  return kind == UnitKind::Journal ? "journal_id" : "sc_id";
}

void write_file(const std::filesystem::path& path, const std::string& content,
                RunResult& result) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
  out.close();
  if (!out) throw InputError("failed writing '" + path.string() + "'");
  result.written.push_back(path);
}

std::string extension(OutputFormat format) {
  return format == OutputFormat::Csv ? ".csv" : ".json";
}

std::optional<double> parse_optional_double(std::string_view text,
                                            const std::string& source,
                                            std::size_t line) {
  text = csv::trim(text);
  if (text.empty() || text == kMissing) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw InputError(source, line, "malformed number '" + std::string(text) + "'");
  }
  return value;
}

std::string sanitize_filename(std::string_view text) {
  std::string out;
  for (char ch : text) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '-' || ch == '_';
    out += ok ? ch : '_';
  }
  return out;
}

void collect_missing_warnings(std::span<const IndicatorRow> rows,
                              std::vector<std::string>& warnings) {
  for (const auto& row : rows) {
    if (row.score) continue;
    warnings.push_back("'" + row.unit_id + "' has no " +
                       std::string(to_string(row.dimension)) + " citations in '" +
                       row.focal_sc + "'; EBDI reported as missing");
  }
}

}  // namespace

// ---- config --------------------------------------------------------------

void RunConfig::validate(bool needs_corpus) const {
  if (needs_corpus) {
    if (classification.empty()) throw InputError("--classification is required");
    if (journals.empty()) throw InputError("--journals is required");
    if (citations.empty()) throw InputError("--citations is required");
  }
  if (n_categories && *n_categories < 2) {
    throw InputError("--n-categories must be at least 2");
  }
  if (out_dir.empty()) throw InputError("--out must not be empty");
  if (decimals < 0 || decimals > 15) {
    throw InputError("--decimals must lie in 0..15");
  }
  if (top_k == 0) throw InputError("--top-k must be at least 1");
  if (focal_sc && focal_sc->empty()) throw InputError("--focal-sc must not be empty");
}

Corpus load_corpus(const RunConfig& config) {
  Corpus corpus = load_edges(
      load_classification(config.classification, config.journals), config.citations);
  if (config.n_categories) {
    try {
      corpus = corpus.with_n_categories(*config.n_categories);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  if (corpus.n_categories() < 2) {
    throw InputError("the classification holds " +
                     std::to_string(corpus.n_categories()) +
                     " subject categories; pass --n-categories >= 2");
  }
  if (config.focal_sc && !corpus.has_subject_category(*config.focal_sc)) {
    throw InputError("unknown --focal-sc '" + *config.focal_sc + "'");
  }
  return corpus;
}

// ---- indicators ----------------------------------------------------------

std::vector<IndicatorRow> compute_indicator_rows(const Corpus& corpus,
                                                 const RunConfig& config) {
  std::vector<IndicatorRow> rows;
  const int n = corpus.n_categories();
  auto push = [&](UnitKind kind, const std::string& unit, const std::string& sc,
                  const IndicatorPair& pair) {
    rows.push_back(IndicatorRow{kind, unit, sc, Dimension::Cited, n, config.counting, pair.cited});
    rows.push_back(IndicatorRow{kind, unit, sc, Dimension::Citing, n, config.counting, pair.citing});
  };

  if (config.unit == UnitKind::Journal) {
    for (const auto& [id, journal] : corpus.journals()) {
      for (const auto& sc : journal.sc_memberships) {
        if (config.focal_sc && sc != *config.focal_sc) continue;
        push(UnitKind::Journal, id, sc,
             compute_journal_indicators(corpus, id, sc, config.counting));
      }
    }
  } else {
    for (const auto& [id, sc] : corpus.subject_categories()) {
      if (config.focal_sc && id != *config.focal_sc) continue;
      if (corpus.members_of(id).empty()) continue;
      push(UnitKind::Discipline, id, id,
           compute_discipline_indicators(corpus, id, config.counting));
    }
  }
  return rows;
}

void write_indicators_csv(std::ostream& out, std::span<const IndicatorRow> rows,
                          int decimals) {
  const UnitKind kind = rows.empty() ? UnitKind::Journal : rows.front().kind;
  out << unit_column(kind)
      << ",focal_sc,dimension,pct_internal,sum_external,H,Hmax,pct_hmax,ebdi,"
         "raw_diversity,n_categories,counting\n";
  for (const auto& row : rows) {
    out << csv::escape(row.unit_id) << ',' << csv::escape(row.focal_sc) << ','
        << to_string(row.dimension) << ',';
    if (row.score) {
      const auto& s = *row.score;
      out << format_fixed(s.pct_internal, decimals) << ','
          << format_count(s.sum_external, decimals) << ','
          << format_fixed(s.stats.entropy, decimals) << ','
          << format_fixed(s.stats.max_entropy, decimals) << ','
          << format_fixed(s.stats.pct_max_entropy, decimals) << ','
          << format_fixed(s.ebdi, decimals) << ',' << s.stats.raw_diversity;
    } else {
      for (int i = 0; i < 7; ++i) out << (i ? "," : "") << kMissing;
    }
    out << ',' << row.n_categories << ',' << to_string(row.mode) << '\n';
  }
}

void write_indicators_json(std::ostream& out, std::span<const IndicatorRow> rows) {
  ordered_json doc = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json j;
    j[std::string(unit_column(row.kind))] = row.unit_id;
    j["focal_sc"] = row.focal_sc;
    j["dimension"] = to_string(row.dimension);
    if (row.score) {
      const auto& s = *row.score;
      j["pct_internal"] = s.pct_internal;
      j["sum_external"] = s.sum_external;
      j["H"] = s.stats.entropy;
      j["Hmax"] = s.stats.max_entropy;
      j["pct_hmax"] = s.stats.pct_max_entropy;
      j["ebdi"] = s.ebdi;
      j["raw_diversity"] = s.stats.raw_diversity;
    } else {
      for (const char* key : {"pct_internal", "sum_external", "H", "Hmax",
                              "pct_hmax", "ebdi", "raw_diversity"}) {
        j[key] = nullptr;
      }
    }
    j["n_categories"] = row.n_categories;
    j["counting"] = to_string(row.mode);
    doc.push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

// ---- roles ---------------------------------------------------------------

std::vector<UnitScores> collect_unit_scores(std::span<const IndicatorRow> rows) {
  std::map<std::pair<std::string, std::string>, UnitScores> by_key;
  for (const auto& row : rows) {
    auto& entry = by_key[{row.focal_sc, row.unit_id}];
    entry.group = row.kind == UnitKind::Journal ? row.focal_sc : std::string{};
    entry.unit_id = row.unit_id;
    if (!row.score) continue;
    (row.dimension == Dimension::Cited ? entry.cited : entry.citing) = row.score->ebdi;
  }
  std::vector<UnitScores> out;
  out.reserve(by_key.size());
  for (auto& [key, value] : by_key) out.push_back(std::move(value));
  return out;
}

RoleTable classify_units(std::string group, std::span<const UnitScores> units,
                         UnitKind kind) {
  RoleTable table;
  table.kind = kind;
  table.group = std::move(group);

  std::vector<std::pair<std::string, double>> cited, citing;
  for (const auto& u : units) {
    if (u.cited) cited.emplace_back(u.unit_id, *u.cited);
    if (u.citing) citing.emplace_back(u.unit_id, *u.citing);
  }
  const std::string where = table.group.empty() ? "" : " in '" + table.group + "'";
  if (cited.size() < 2 || citing.size() < 2) {
    throw InputError("fewer than two scored units" + where +
                     "; thresholds need at least two per dimension");
  }
  auto cited_levels = assign_levels(cited, Dimension::Cited);
  auto citing_levels = assign_levels(citing, Dimension::Citing);
  table.cited_threshold = cited_levels.front().threshold_used;
  table.citing_threshold = citing_levels.front().threshold_used;

  std::map<std::string, Level, std::less<>> cited_by_unit, citing_by_unit;
  for (const auto& a : cited_levels) cited_by_unit[a.unit_id] = a.level;
  for (const auto& a : citing_levels) citing_by_unit[a.unit_id] = a.level;

  for (const auto& u : units) {
    RoleRow row;
    row.unit_id = u.unit_id;
    row.cited = u.cited;
    row.citing = u.citing;
    if (auto it = cited_by_unit.find(u.unit_id); u.cited && it != cited_by_unit.end()) {
      row.cited_level = it->second;
    }
    if (auto it = citing_by_unit.find(u.unit_id); u.citing && it != citing_by_unit.end()) {
      row.citing_level = it->second;
    }
    row.role = classify_journal(row.cited_level, row.citing_level);
    row.discipline = classify_discipline(u.unit_id, u.cited, u.citing);
    table.rows.push_back(std::move(row));
  }
  return table;
}

ScatterPlot RoleTable::scatter() const {
  ScatterPlot plot;
  const bool journals = kind == UnitKind::Journal;
  plot.title = journals ? "Cited and citing EBDI of journals in " + group
                        : std::string("Cited and citing EBDI of disciplines");
  plot.x_label = "Cited EBDI";
  plot.y_label = "Citing EBDI";
  plot.x_threshold = cited_threshold;
  plot.y_threshold = citing_threshold;
  if (journals) {
    plot.quadrant_labels = {"CORE", "KNOWLEDGE IMPORTER", "KNOWLEDGE EXPORTER",
                            "TANGENTIAL"};
  }
  for (const auto& row : rows) {
    if (row.cited && row.citing) {
      plot.points.push_back(ScatterPoint{row.unit_id, *row.cited, *row.citing});
    }
  }
  return plot;
}

std::vector<UnitScores> read_scores_csv(std::istream& in, const std::string& source) {
  csv::Reader reader(in, source);
  static constexpr std::string_view kHeader[] = {"unit_id", "cited_ebdi", "citing_ebdi"};
  csv::expect_header(reader, kHeader);
  std::vector<UnitScores> out;
  std::set<std::string> seen;
  csv::Row row;
  while (reader.next(row)) {
    if (row.fields.size() != 3) {
      throw InputError(source, row.line, "malformed row: expected 3 fields");
    }
    UnitScores u;
    u.unit_id = std::string(csv::trim(row.fields[0]));
    if (u.unit_id.empty()) throw InputError(source, row.line, "empty unit_id");
    if (!seen.insert(u.unit_id).second) {
      throw InputError(source, row.line, "duplicate unit_id '" + u.unit_id + "'");
    }
    u.cited = parse_optional_double(row.fields[1], source, row.line);
    u.citing = parse_optional_double(row.fields[2], source, row.line);
    out.push_back(std::move(u));
  }
  return out;
}

void write_roles_csv(std::ostream& out, std::span<const RoleTable> tables,
                     int decimals) {
  const UnitKind kind = tables.empty() ? UnitKind::Journal : tables.front().kind;
  if (kind == UnitKind::Journal) {
    out << "focal_sc,journal_id,cited_ebdi,citing_ebdi,cited_level,citing_level,"
           "role,cited_threshold,citing_threshold\n";
  } else {
    out << "sc_id,cited_ebdi,citing_ebdi,difference,discipline_type,cited_level,"
           "citing_level,cited_threshold,citing_threshold\n";
  }
  for (const auto& table : tables) {
    for (const auto& row : table.rows) {
      const std::string cited_level =
          row.cited_level ? std::string(to_string(*row.cited_level)) : kMissing;
      const std::string citing_level =
          row.citing_level ? std::string(to_string(*row.citing_level)) : kMissing;
      if (kind == UnitKind::Journal) {
        out << csv::escape(table.group) << ',' << csv::escape(row.unit_id) << ','
            << opt_fixed(row.cited, decimals) << ',' << opt_fixed(row.citing, decimals)
            << ',' << cited_level << ',' << citing_level << ',' << to_string(row.role);
      } else {
        out << csv::escape(row.unit_id) << ',' << opt_fixed(row.cited, decimals) << ','
            << opt_fixed(row.citing, decimals) << ','
            << opt_fixed(row.discipline.difference, decimals) << ','
            << to_string(row.discipline.type) << ',' << cited_level << ','
            << citing_level;
      }
      out << ',' << format_fixed(table.cited_threshold, decimals) << ','
          << format_fixed(table.citing_threshold, decimals) << '\n';
    }
  }
}

void write_roles_json(std::ostream& out, std::span<const RoleTable> tables) {
  ordered_json doc = ordered_json::array();
  for (const auto& table : tables) {
    ordered_json t;
    if (table.kind == UnitKind::Journal) t["focal_sc"] = table.group;
    t["unit"] = table.kind == UnitKind::Journal ? "journal" : "discipline";
    t["cited_threshold"] = table.cited_threshold;
    t["citing_threshold"] = table.citing_threshold;
    ordered_json units = ordered_json::array();
    for (const auto& row : table.rows) {
      ordered_json u;
      u[std::string(unit_column(table.kind))] = row.unit_id;
      u["cited_ebdi"] = opt_json(row.cited);
      u["citing_ebdi"] = opt_json(row.citing);
      u["cited_level"] = row.cited_level ? ordered_json(to_string(*row.cited_level))
                                         : ordered_json(nullptr);
      u["citing_level"] = row.citing_level ? ordered_json(to_string(*row.citing_level))
                                           : ordered_json(nullptr);
      if (table.kind == UnitKind::Journal) {
        u["role"] = to_string(row.role);
      } else {
        u["difference"] = opt_json(row.discipline.difference);
        u["discipline_type"] = to_string(row.discipline.type);
      }
      units.push_back(std::move(u));
    }
    t["units"] = std::move(units);
    doc.push_back(std::move(t));
  }
  out << doc.dump(2) << '\n';
}

// ---- correlations --------------------------------------------------------

std::vector<MetricSeries> read_metrics_csv(std::istream& in, const std::string& source) {
  csv::Reader reader(in, source);
  static constexpr std::string_view kHeader[] = {"journal_id", "metric_name", "value"};
  csv::expect_header(reader, kHeader);
  std::map<std::string, MetricSeries> by_name;
  csv::Row row;
  while (reader.next(row)) {
    if (row.fields.size() != 3) {
      throw InputError(source, row.line, "malformed row: expected 3 fields");
    }
    const std::string unit(csv::trim(row.fields[0]));
    const std::string name(csv::trim(row.fields[1]));
    if (unit.empty() || name.empty()) {
      throw InputError(source, row.line, "empty journal_id or metric_name");
    }
    auto value = parse_optional_double(row.fields[2], source, row.line);
    auto& series = by_name[name];
    series.name = name;
    if (!value) continue;
    if (!series.values.emplace(unit, *value).second) {
      throw InputError(source, row.line,
                       "duplicate value for '" + unit + "' in metric '" + name + "'");
    }
  }
  std::vector<MetricSeries> out;
  for (auto& [name, series] : by_name) out.push_back(std::move(series));
  return out;
}

std::vector<MetricSeries> ebdi_series(std::span<const IndicatorRow> rows) {
  MetricSeries cited{"cited_ebdi", {}}, citing{"citing_ebdi", {}};
  std::map<std::string, std::string> sc_of;
  for (const auto& row : rows) {
    auto [it, inserted] = sc_of.emplace(row.unit_id, row.focal_sc);
    if (!inserted && it->second != row.focal_sc) {
      throw InputError("'" + row.unit_id +
                       "' is scored in several subject categories; pass --focal-sc");
    }
    if (!row.score) continue;
    (row.dimension == Dimension::Cited ? cited : citing).values[row.unit_id] =
        row.score->ebdi;
  }
  return {std::move(cited), std::move(citing)};
}

std::vector<CorrelationResult> correlate_all(std::span<const MetricSeries> series,
                                             std::vector<std::string>& warnings) {
  std::vector<CorrelationResult> out;
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      try {
        out.push_back(correlate(series[i], series[j]));
      } catch (const std::invalid_argument& e) {
        warnings.push_back(std::string("skipped correlation: ") + e.what());
      }
    }
  }
  return out;
}

void write_correlations_csv(std::ostream& out,
                            std::span<const CorrelationResult> results,
                            int decimals) {
  // p-values keep extra places so small significances stay visible
  const int p_decimals = std::max(decimals, 4);
  out << "metric_x,metric_y,n,rho,p_two_tailed,method_note\n";
  for (const auto& r : results) {
    out << csv::escape(r.pair.first) << ',' << csv::escape(r.pair.second) << ','
        << r.n << ',' << format_fixed(r.rho, decimals) << ','
        << format_fixed(r.p_two_tailed, p_decimals) << ','
        << csv::escape(r.method_note) << '\n';
  }
}

void write_correlations_json(std::ostream& out,
                             std::span<const CorrelationResult> results) {
  ordered_json doc = ordered_json::array();
  for (const auto& r : results) {
    ordered_json j;
    j["metric_x"] = r.pair.first;
    j["metric_y"] = r.pair.second;
    j["n"] = r.n;
    j["rho"] = r.rho;
    j["p_two_tailed"] = r.p_two_tailed;
    j["method_note"] = r.method_note;
    doc.push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

// ---- runners -------------------------------------------------------------

RunResult run_indicators(const RunConfig& config) {
  config.validate(true);
  RunResult result;
  const Corpus corpus = load_corpus(config);
  const auto rows = compute_indicator_rows(corpus, config);
  collect_missing_warnings(rows, result.warnings);

  std::ostringstream out;
  if (config.format == OutputFormat::Csv) {
    write_indicators_csv(out, rows, config.decimals);
  } else {
    write_indicators_json(out, rows);
  }
  std::filesystem::create_directories(config.out_dir);
  write_file(config.out_dir / ("indicators" + extension(config.format)), out.str(), result);
  return result;
}

RunResult run_roles(const RunConfig& config) {
  config.validate(!config.scores);
  RunResult result;

  std::vector<UnitScores> units;
  if (config.scores) {
    std::ifstream in(*config.scores, std::ios::binary);
    if (!in) throw InputError("cannot open '" + config.scores->string() + "'");
    units = read_scores_csv(in, config.scores->string());
    if (config.unit == UnitKind::Journal) {
      for (auto& u : units) u.group = config.focal_sc.value_or("");
    }
  } else {
    const Corpus corpus = load_corpus(config);
    const auto rows = compute_indicator_rows(corpus, config);
    collect_missing_warnings(rows, result.warnings);
    units = collect_unit_scores(rows);
  }

  std::map<std::string, std::vector<UnitScores>> groups;
  for (auto& u : units) groups[u.group].push_back(std::move(u));

  std::vector<RoleTable> tables;
  for (auto& [group, members] : groups) {
    try {
      tables.push_back(classify_units(group, members, config.unit));
    } catch (const InputError& e) {
      if (groups.size() == 1) throw;
      result.warnings.push_back(std::string("skipped: ") + e.what());
    }
  }
  if (tables.empty()) {
    throw InputError("no subject category has at least two scored units");
  }

  std::ostringstream out;
  if (config.format == OutputFormat::Csv) {
    write_roles_csv(out, tables, config.decimals);
  } else {
    write_roles_json(out, tables);
  }
  std::filesystem::create_directories(config.out_dir);
  write_file(config.out_dir / ("roles" + extension(config.format)), out.str(), result);
  for (const auto& table : tables) {
    const std::string name = tables.size() == 1
                                 ? std::string("scatter.svg")
                                 : "scatter_" + sanitize_filename(table.group) + ".svg";
    write_file(config.out_dir / name, render_scatter_svg(table.scatter()), result);
  }
  return result;
}

RunResult run_correlations(const RunConfig& config) {
  config.validate(true);
  if (!config.metrics) throw InputError("correlate requires --metrics");
  RunResult result;

  std::ifstream metrics_in(*config.metrics, std::ios::binary);
  if (!metrics_in) throw InputError("cannot open '" + config.metrics->string() + "'");
  auto metrics = read_metrics_csv(metrics_in, config.metrics->string());

  const Corpus corpus = load_corpus(config);
  const auto rows = compute_indicator_rows(corpus, config);
  auto series = ebdi_series(rows);
  for (auto& m : metrics) {
    if (m.name == "cited_ebdi" || m.name == "citing_ebdi") {
      throw InputError("metric name '" + m.name + "' is reserved");
    }
    series.push_back(std::move(m));
  }
  const auto results = correlate_all(series, result.warnings);

  std::ostringstream out;
  if (config.format == OutputFormat::Csv) {
    write_correlations_csv(out, results, config.decimals);
  } else {
    write_correlations_json(out, results);
  }
  std::filesystem::create_directories(config.out_dir);
  write_file(config.out_dir / ("correlations" + extension(config.format)), out.str(),
             result);
  return result;
}

RunResult run_network(const RunConfig& config) {
  config.validate(true);
  RunResult result;
  const Corpus corpus = load_corpus(config);
  const auto network =
      export_sc_network(corpus, config.dimension, config.counting, config.top_k);
  if (config.top_k > network.available) {
    result.warnings.push_back("--top-k " + std::to_string(config.top_k) +
                              " exceeds the " + std::to_string(network.available) +
                              " subject categories with citations; all retained");
  }
  std::ostringstream out;
  write_network_csv(out, network);
  std::filesystem::create_directories(config.out_dir);
  write_file(config.out_dir / "sc_network.csv", out.str(), result);
  return result;
}

}  // namespace ebdi
