#include "multinet/core.hpp"

#include <algorithm>
#include <cmath>

namespace multinet {

std::optional<std::size_t> NodeCatalog::index_of(const std::string& id) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids.begin());
}

const std::string& NodeCatalog::group_of(const std::string& id) const {
    static const std::string residual = kResidualGroup;
    auto it = groups.find(id);
    return it == groups.end() ? residual : it->second;
}

std::optional<std::size_t> LayerCatalog::index_of(const std::string& code) const {
    auto it = std::find(codes.begin(), codes.end(), code);
    if (it == codes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - codes.begin());
}

std::optional<std::size_t> MultiNetworkPanel::year_index(int year) const {
    auto it = std::find(years.begin(), years.end(), year);
    if (it == years.end()) return std::nullopt;
    return static_cast<std::size_t>(it - years.begin());
}

namespace {

const LayerWeightMatrix& select_matrix(const MultiNetworkPanel& p,
                                       const std::vector<std::vector<LayerWeightMatrix>>& cells,
                                       const std::vector<LayerWeightMatrix>& aggregates,
                                       int year, const std::string& code) {
    auto t = p.year_index(year);
    if (!t) throw std::invalid_argument("year " + std::to_string(year) + " not in panel");
    if (code == kAggregateLayer) return aggregates[*t];
    auto c = p.layers.index_of(code);
    if (!c) throw std::invalid_argument("unknown layer code '" + code + "'");
    return cells[*t][*c];
}

}  // namespace

const LayerWeightMatrix& MultiNetworkPanel::raw_matrix(int year, const std::string& code) const {
    return select_matrix(*this, raw, aggregate_raw, year, code);
}

const LayerWeightMatrix& MultiNetworkPanel::normalized_matrix(int year,
                                                              const std::string& code) const {
    return select_matrix(*this, normalized, aggregate_normalized, year, code);
}

LayerWeightMatrix aggregate_layers(std::span<const LayerWeightMatrix> layers) {
    if (layers.empty()) throw DimensionError("aggregate_layers: no layers given");
    const Eigen::Index n = layers.front().n();
    const int year = layers.front().year;
    LayerWeightMatrix agg;
    agg.w = Eigen::MatrixXd::Zero(n, n);
    agg.year = year;
    agg.layer = kAggregateLayer;
    for (const auto& l : layers) {
        if (l.n() != n || l.w.cols() != n)
            throw DimensionError("aggregate_layers: layer '" + l.layer + "' is " +
                                 std::to_string(l.w.rows()) + "x" + std::to_string(l.w.cols()) +
                                 ", expected " + std::to_string(n) + "x" + std::to_string(n));
        if (l.year != year)
            throw DimensionError("aggregate_layers: mixed years " + std::to_string(year) +
                                 " and " + std::to_string(l.year));
        agg.w += l.w;
    }
    agg.w.diagonal().setZero();
    return agg;
}

LayerWeightMatrix normalize_layer(const LayerWeightMatrix& raw) {
    const double total = raw.total();
    if (total <= 0.0) throw EmptyLayerError(raw.year, raw.layer);
    LayerWeightMatrix out = raw;
    out.w /= total;
    return out;
}

AdjacencyMatrix binarize(const LayerWeightMatrix& layer, double threshold) {
    if (threshold < 0.0) throw std::invalid_argument("binarize: negative threshold");
    AdjacencyMatrix adj;
    adj.a = layer.w.array() > threshold;
    adj.a.matrix().diagonal().setConstant(false);
    adj.year = layer.year;
    adj.layer = layer.layer;
    adj.threshold = threshold;
    return adj;
}

double percentile_threshold(const LayerWeightMatrix& layer, double p) {
    if (!(p > 0.0 && p < 100.0))
        throw std::invalid_argument("percentile_threshold: p must lie in (0, 100)");
    std::vector<double> pos = positive_weights(layer);
    if (pos.empty()) throw EmptyLayerError(layer.year, layer.layer);
    std::sort(pos.begin(), pos.end());
    const auto m = static_cast<double>(pos.size());
    auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * m));
    rank = std::clamp<std::size_t>(rank, 1, pos.size());
    return pos[rank - 1];
}

double density(const AdjacencyMatrix& adj) {
    const Eigen::Index n = adj.n();
    if (n < 2) throw std::invalid_argument("density: need at least two nodes");
    return static_cast<double>(adj.link_count()) / (static_cast<double>(n) * (n - 1));
}

std::vector<double> positive_weights(const LayerWeightMatrix& layer) {
    std::vector<double> pos;
    const Eigen::Index n = layer.n();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < layer.w.cols(); ++j)
            if (i != j && layer.w(i, j) > 0.0) pos.push_back(layer.w(i, j));
    return pos;
}

}  // namespace multinet
