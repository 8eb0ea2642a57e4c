#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "ebdi/corpus.hpp"
#include "ebdi/metrics.hpp"

namespace ebdi {

/// One SC-to-SC link. Source is an SC of the focal journal, target an SC of
/// the partner journal, so in the Cited dimension the target cites the
/// source and in the Citing dimension the source cites the target.
struct NetworkEdge {
  std::string source_sc;
  std::string target_sc;
  double weight = 0.0;
};

struct ScNetwork {
  std::vector<NetworkEdge> edges;    // weight descending, then source, target
  std::vector<std::string> retained; // top SCs by volume, highest first
  std::size_t available = 0;         // SCs carrying any citation volume
};

/// Aggregates journal edges of one dimension to SC pairs. A citation between
/// journals with memberships S and T adds its count to every (s, t) pair
/// under Whole counting and count / (|S| |T|) under Fractional. An SC's
/// volume is the total weight of links touching it, self links counted once.
/// Only links touching one of the `top_k` highest-volume SCs are kept (ties
/// broken by sc_id). Throws std::invalid_argument when top_k is 0.
ScNetwork export_sc_network(const Corpus& corpus, Dimension dimension,
                            CountingMode mode, std::size_t top_k);

/// `source_sc,target_sc,weight` rows; weights printed round-trip exact.
void write_network_csv(std::ostream& out, const ScNetwork& network);

}  // namespace ebdi
