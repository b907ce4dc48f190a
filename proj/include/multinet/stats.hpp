#pragma once

#include <span>
#include <string>
#include <vector>

#include "multinet/core.hpp"
#include "multinet/numeric.hpp"

namespace multinet {

struct DegreeStats {
    Eigen::VectorXi nd_in, nd_out, nd_tot, nd_bilateral;
};

struct StrengthStats {
    Eigen::VectorXd ns_in, ns_out, ns_tot;
};

// Average nearest-neighbor strength, four directed variants plus the total.
// Undefined (NaN) for nodes with no neighbors of the relevant direction.
struct AnnsStats {
    Eigen::VectorXd in_in, in_out, out_in, out_out, tot;
};

// Directed weighted clustering coefficients, cube-root construction on the
// max-rescaled weight matrix. Undefined where the degree denominator is zero.
struct WccStats {
    Eigen::VectorXd cyc, mid, in, out, all;
};

// Shares of the four triangle-intensity types. Per-node rows are NaN for
// nodes in no triangle; net_* average over nodes with at least one triangle.
struct TriangleShares {
    Eigen::VectorXd cyc, mid, in, out;
    double net_cyc = kUndefined, net_mid = kUndefined;
    double net_in = kUndefined, net_out = kUndefined;
};

struct CentralityResult {
    Eigen::VectorXd wcentr;          // L1-normalized sum of in- and out-centrality
    Eigen::VectorXd in_centrality;   // principal eigenvector of W^T
    Eigen::VectorXd out_centrality;  // principal eigenvector of W
    std::size_t iterations = 0;
};

DegreeStats degrees(const AdjacencyMatrix& adj);
StrengthStats strengths(const LayerWeightMatrix& layer);

// ns/nd ratios; NaN (not zero) where the degree vanishes.
std::pair<Eigen::VectorXd, Eigen::VectorXd> strength_per_degree(const StrengthStats& ns,
                                                                const DegreeStats& nd);

AnnsStats anns(const LayerWeightMatrix& layer, const AdjacencyMatrix& adj);
WccStats weighted_clustering(const LayerWeightMatrix& layer, const AdjacencyMatrix& adj);
TriangleShares triangle_shares(const LayerWeightMatrix& layer, const AdjacencyMatrix& adj);

// Power iteration from the uniform vector, L1-normalized each step; stops
// when successive iterates differ by < 1e-12 in L1 norm. A zero image (no
// cycles feeding back) terminates with the last normalized iterate.
CentralityResult eigenvector_centrality(const LayerWeightMatrix& layer,
                                        std::size_t max_iterations = 100000);

// All per-node statistics of one layer-year, from the normalized matrix.
struct NodeStatsTable {
    std::vector<std::string> node_ids;
    int year = 0;
    std::string layer;

    Eigen::VectorXi nd_in, nd_out, nd_tot;
    Eigen::VectorXd ns_in, ns_out, ns_tot;
    Eigen::VectorXd ns_in_per_nd_in, ns_out_per_nd_out;
    Eigen::VectorXd anns_in_in, anns_in_out, anns_out_in, anns_out_out, anns_tot;
    Eigen::VectorXd wcc_cyc, wcc_mid, wcc_in, wcc_out, wcc_all;
    Eigen::VectorXd wcentr;

    static const std::vector<std::string>& column_names();
    // Column by name as doubles (integer columns widened). Throws
    // std::invalid_argument for unknown names.
    Eigen::VectorXd column(const std::string& name) const;
};

NodeStatsTable stats_table(const MultiNetworkPanel& panel, int year, const std::string& layer);

void write_stats_csv(std::ostream& out, const NodeStatsTable& table);

// Top-k nodes by a statistic, descending; ties broken by node id ascending;
// undefined values excluded.
std::vector<std::pair<std::string, double>> rank_top(const NodeStatsTable& table,
                                                     const std::string& statistic, std::size_t k);

struct MomentsRow {
    std::string layer;
    std::size_t n = 0;        // defined values entering the moments
    double mean = kUndefined;
    double sd = kUndefined;
    double ratio_pct = kUndefined;  // layer mean / aggregate mean, percent
    double density = kUndefined;
};

// Per-layer mean/sd of a node statistic (or of link weights when statistic
// is "weight"), plus the ratio to the aggregate network's mean. The weight
// statistic averages positive links only unless include_zero_weights is set.
std::vector<MomentsRow> moments_report(const MultiNetworkPanel& panel, int year,
                                       const std::string& statistic,
                                       bool include_zero_weights = false);

}  // namespace multinet
