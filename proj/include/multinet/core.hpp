#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "multinet/errors.hpp"

namespace multinet {

// Reserved layer code for the all-layer aggregate network.
inline constexpr const char* kAggregateLayer = "ALL";

// Ungrouped nodes fall into this residual group in group-level reports.
inline constexpr const char* kResidualGroup = "ungrouped";

using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct NodeCatalog {
    std::vector<std::string> ids;      // unique, index order is stable for the panel
    std::vector<std::string> labels;   // display names, defaults to ids
    std::unordered_map<std::string, std::string> groups;  // optional macro-area map

    std::size_t size() const noexcept { return ids.size(); }
    std::optional<std::size_t> index_of(const std::string& id) const;
    // Group label for a node, kResidualGroup when unmapped.
    const std::string& group_of(const std::string& id) const;
};

struct LayerCatalog {
    std::vector<std::string> codes;
    std::vector<std::string> descriptions;

    std::size_t size() const noexcept { return codes.size(); }
    std::optional<std::size_t> index_of(const std::string& code) const;
};

// One N x N nonnegative weight matrix: currency units before normalization,
// dimensionless shares after. Diagonal identically zero.
struct LayerWeightMatrix {
    Eigen::MatrixXd w;
    int year = 0;
    std::string layer;  // layer code, or kAggregateLayer

    Eigen::Index n() const noexcept { return w.rows(); }
    double total() const noexcept { return w.sum(); }  // diagonal is zero
    bool empty() const noexcept { return total() <= 0.0; }
};

struct AdjacencyMatrix {
    BoolMatrix a;
    int year = 0;
    std::string layer;
    double threshold = 0.0;

    Eigen::Index n() const noexcept { return a.rows(); }
    long link_count() const noexcept { return a.count(); }  // diagonal is false
};

// The full T x C family of layer matrices plus per-year aggregates.
// Balanced by construction: every (year, layer) cell is present; cells with
// no positive flow are kept as zero matrices and flagged empty so that C is
// stable across years.
struct MultiNetworkPanel {
    NodeCatalog nodes;
    LayerCatalog layers;
    std::vector<int> years;

    // Indexed [year][layer].
    std::vector<std::vector<LayerWeightMatrix>> raw;
    std::vector<std::vector<LayerWeightMatrix>> normalized;
    // Indexed [year].
    std::vector<LayerWeightMatrix> aggregate_raw;
    std::vector<LayerWeightMatrix> aggregate_normalized;

    std::size_t n_nodes() const noexcept { return nodes.size(); }
    std::size_t n_layers() const noexcept { return layers.size(); }
    std::size_t n_years() const noexcept { return years.size(); }

    std::optional<std::size_t> year_index(int year) const;
    bool layer_empty(std::size_t t, std::size_t c) const { return raw[t][c].empty(); }

    // Raw/normalized matrix by year and layer code; code kAggregateLayer
    // selects the aggregate. Throws std::invalid_argument on unknown keys.
    const LayerWeightMatrix& raw_matrix(int year, const std::string& code) const;
    const LayerWeightMatrix& normalized_matrix(int year, const std::string& code) const;
};

// Entrywise sum of all commodity layers of one year (the aggregate network).
LayerWeightMatrix aggregate_layers(std::span<const LayerWeightMatrix> layers);

// Rescale by total trade so off-diagonal entries sum to one.
LayerWeightMatrix normalize_layer(const LayerWeightMatrix& raw);

// Links where weight strictly exceeds the threshold.
AdjacencyMatrix binarize(const LayerWeightMatrix& layer, double threshold = 0.0);

// Nearest-rank p-th percentile of the positive weights, p in (0, 100):
// the smallest positive weight with at least p% of positive weights <= it.
double percentile_threshold(const LayerWeightMatrix& layer, double p);

// Share of existing to maximum possible directed links.
double density(const AdjacencyMatrix& adj);

// Strictly positive off-diagonal weights, unsorted row-major order.
std::vector<double> positive_weights(const LayerWeightMatrix& layer);

}  // namespace multinet
