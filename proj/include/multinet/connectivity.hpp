#pragma once

#include <span>
#include <string>
#include <vector>

#include "multinet/core.hpp"

namespace multinet {

// Weak: two nodes are connected when at least one directed link exists
// between them. Strong: only a reciprocated (bilateral) link connects them.
enum class ConnectivityMode { Weak, Strong };

struct ComponentPartition {
    ConnectivityMode mode = ConnectivityMode::Weak;
    // node index -> component id; the id is the smallest member index.
    std::vector<int> assignment;
    // component id -> size, only for ids that exist.
    std::vector<std::pair<int, int>> sizes;
    int lcc_size = 0;
    std::vector<int> lcc_members;  // sorted by node index
};

ComponentPartition components(const AdjacencyMatrix& adj, ConnectivityMode mode);

// One row of the "largest x%" connectivity profile.
struct LccLevel {
    double largest_pct = 100.0;  // share of strongest positive links retained
    double cut_weight = 0.0;     // links with weight >= cut retained (0 = all positive)
    long links_retained = 0;
    int lcc_size = 0;
    std::vector<int> lcc_members;
};

// For each p, keep the ceil(p% * m) strongest positive links (ties at the
// cut weight are all included, which can retain slightly more), then find
// components. p = 100 reproduces the threshold-zero analysis.
std::vector<LccLevel> lcc_profile(const LayerWeightMatrix& layer,
                                  std::span<const double> largest_pcts, ConnectivityMode mode);

struct GroupLcc {
    std::string group;
    int group_size = 0;
    int lcc_size = 0;
    double pct = 0.0;
};

// LCC inside each group's induced subgraph. Rows sorted by group label;
// nodes without a group mapping fall into kResidualGroup.
std::vector<GroupLcc> lcc_by_group(const AdjacencyMatrix& adj, const NodeCatalog& nodes,
                                   ConnectivityMode mode);

}  // namespace multinet
