// Command-line front end: indicators, roles, correlate, network.
//
// Exit codes: 0 success (warnings allowed), 1 input or validation error,
// 2 internal arithmetic error.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "ebdi/error.hpp"
#include "ebdi/report.hpp"

namespace {

struct CliOptions {
  std::string classification, journals, citations, metrics, scores, focal_sc, out = ".";
  int n_categories = 0;
  std::string counting = "whole";
  std::string unit = "journal";
  std::string dimension = "cited";
  std::size_t top_k = 10;
  std::string format = "csv";
  int decimals = 2;
};

ebdi::RunConfig to_config(const CliOptions& o) {
  ebdi::RunConfig c;
  c.classification = o.classification;
  c.journals = o.journals;
  c.citations = o.citations;
  if (!o.metrics.empty()) c.metrics = o.metrics;
  if (!o.scores.empty()) c.scores = o.scores;
  if (!o.focal_sc.empty()) c.focal_sc = o.focal_sc;
  if (o.n_categories != 0) c.n_categories = o.n_categories;
  c.counting = ebdi::parse_counting_mode(o.counting);
  c.unit = o.unit == "discipline" ? ebdi::UnitKind::Discipline : ebdi::UnitKind::Journal;
  c.dimension = ebdi::parse_dimension(o.dimension);
  c.top_k = o.top_k;
  c.out_dir = o.out;
  c.format = o.format == "json" ? ebdi::OutputFormat::Json : ebdi::OutputFormat::Csv;
  c.decimals = o.decimals;
  return c;
}

void add_common(CLI::App* cmd, CliOptions& o, bool corpus_required) {
  auto* cls = cmd->add_option("--classification", o.classification,
                              "subject_categories.csv (sc_id,name,branch)");
  auto* jr = cmd->add_option("--journals", o.journals,
                             "journals.csv (journal_id,title,sc_memberships)");
  auto* ct = cmd->add_option("--citations", o.citations,
                             "citations.csv (focal_journal_id,partner_journal_id,dimension,count)");
  if (corpus_required) {
    cls->required();
    jr->required();
    ct->required();
  }
  cmd->add_option("--focal-sc", o.focal_sc, "only score units in this subject category");
  cmd->add_option("--n-categories", o.n_categories,
                  "n for Hmax = ln(n); defaults to the number of subject categories")
      ->check(CLI::Range(2, 1000000));
  cmd->add_option("--counting", o.counting, "attribution of multi-SC partners")
      ->check(CLI::IsMember({"whole", "fractional"}, CLI::ignore_case));
  cmd->add_option("--unit", o.unit, "score journals or whole subject categories")
      ->check(CLI::IsMember({"journal", "discipline"}));
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--decimals", o.decimals, "decimal places in CSV output")
      ->check(CLI::Range(0, 15));
  cmd->add_option("--out", o.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-based disciplinarity indicator (EBDI) toolkit"};
  app.require_subcommand(1);
  CliOptions o;

  auto* indicators = app.add_subcommand("indicators", "write indicators.(csv|json)");
  add_common(indicators, o, true);

  auto* roles = app.add_subcommand("roles", "write roles.(csv|json) and scatter.svg");
  add_common(roles, o, false);
  roles->add_option("--scores", o.scores,
                    "precomputed unit_id,cited_ebdi,citing_ebdi instead of a corpus");

  auto* correlate = app.add_subcommand("correlate", "write correlations.(csv|json)");
  add_common(correlate, o, true);
  correlate->add_option("--metrics", o.metrics, "metrics.csv (journal_id,metric_name,value)")
      ->required();

  auto* network = app.add_subcommand("network", "write sc_network.csv");
  add_common(network, o, true);
  network->add_option("--dimension", o.dimension, "cited or citing")
      ->check(CLI::IsMember({"cited", "citing"}, CLI::ignore_case));
  network->add_option("--top-k", o.top_k, "number of highest-volume SCs to keep")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const ebdi::RunConfig config = to_config(o);
    ebdi::RunResult result;
    if (indicators->parsed()) {
      result = ebdi::run_indicators(config);
    } else if (roles->parsed()) {
      result = ebdi::run_roles(config);
    } else if (correlate->parsed()) {
      result = ebdi::run_correlations(config);
    } else {
      result = ebdi::run_network(config);
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    for (const auto& path : result.written) std::cerr << "wrote " << path.string() << '\n';
    return 0;
  } catch (const ebdi::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
}
