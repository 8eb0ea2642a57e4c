#include "ebdi/network.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "ebdi/csv.hpp"
#include "ebdi/format.hpp"

namespace ebdi {

ScNetwork export_sc_network(const Corpus& corpus, Dimension dimension,
                            CountingMode mode, std::size_t top_k) {
  if (top_k == 0) throw std::invalid_argument("top_k must be at least 1");

  std::map<std::pair<std::string, std::string>, double> links;
  for (const auto& edge : corpus.edges()) {
    if (edge.dimension != dimension || edge.count == 0) continue;
    const auto& sources = corpus.journal(edge.focal).sc_memberships;
    const auto& targets = corpus.journal(edge.partner).sc_memberships;
    double share = static_cast<double>(edge.count);
    if (mode == CountingMode::Fractional) {
      share /= static_cast<double>(sources.size() * targets.size());
    }
    for (const auto& s : sources) {
      for (const auto& t : targets) links[{s, t}] += share;
    }
  }

  std::map<std::string, double> volume;
  for (const auto& [key, weight] : links) {
    volume[key.first] += weight;
    if (key.second != key.first) volume[key.second] += weight;
  }

  std::vector<std::pair<std::string, double>> ranked(volume.begin(), volume.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  ScNetwork network;
  network.available = ranked.size();
  const std::size_t keep = std::min(top_k, ranked.size());
  std::set<std::string> top;
  for (std::size_t i = 0; i < keep; ++i) {
    network.retained.push_back(ranked[i].first);
    top.insert(ranked[i].first);
  }

  for (const auto& [key, weight] : links) {
    if (top.contains(key.first) || top.contains(key.second)) {
      network.edges.push_back(NetworkEdge{key.first, key.second, weight});
    }
  }
  std::stable_sort(network.edges.begin(), network.edges.end(),
                   [](const NetworkEdge& a, const NetworkEdge& b) {
                     return a.weight > b.weight;
                   });
  return network;
}

void write_network_csv(std::ostream& out, const ScNetwork& network) {
  out << "source_sc,target_sc,weight\n";
  for (const auto& e : network.edges) {
    out << csv::escape(e.source_sc) << ',' << csv::escape(e.target_sc) << ','
        << format_shortest(e.weight) << '\n';
  }
}

}  // namespace ebdi
