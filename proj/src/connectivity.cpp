#include "multinet/connectivity.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace multinet {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

bool connected_pair(const BoolMatrix& a, Eigen::Index i, Eigen::Index j, ConnectivityMode mode) {
    return mode == ConnectivityMode::Weak ? (a(i, j) || a(j, i)) : (a(i, j) && a(j, i));
}

ComponentPartition partition_from(UnionFind& uf, std::size_t n, ConnectivityMode mode) {
    ComponentPartition part;
    part.mode = mode;
    part.assignment.resize(n);
    std::map<int, int> size_by_root;
    for (std::size_t i = 0; i < n; ++i) {
        const int root = uf.find(static_cast<int>(i));
        part.assignment[i] = root;  // roots are smallest members by construction
        ++size_by_root[root];
    }
    part.sizes.assign(size_by_root.begin(), size_by_root.end());
    int lcc_root = -1;
    for (const auto& [root, size] : part.sizes) {
        if (size > part.lcc_size) {
            part.lcc_size = size;
            lcc_root = root;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (part.assignment[i] == lcc_root) part.lcc_members.push_back(static_cast<int>(i));
    return part;
}

}  // namespace

ComponentPartition components(const AdjacencyMatrix& adj, ConnectivityMode mode) {
    const auto n = static_cast<std::size_t>(adj.n());
    UnionFind uf(n);
    for (Eigen::Index i = 0; i < adj.n(); ++i)
        for (Eigen::Index j = i + 1; j < adj.n(); ++j)
            if (connected_pair(adj.a, i, j, mode))
                uf.unite(static_cast<int>(i), static_cast<int>(j));
    return partition_from(uf, n, mode);
}

std::vector<LccLevel> lcc_profile(const LayerWeightMatrix& layer,
                                  std::span<const double> largest_pcts, ConnectivityMode mode) {
    std::vector<double> pos = positive_weights(layer);
    if (pos.empty()) throw EmptyLayerError(layer.year, layer.layer);
    std::sort(pos.begin(), pos.end(), std::greater<>());

    std::vector<LccLevel> levels;
    for (double p : largest_pcts) {
        if (!(p > 0.0 && p <= 100.0))
            throw std::invalid_argument("lcc_profile: percentage must lie in (0, 100]");
        LccLevel level;
        level.largest_pct = p;
        const auto m = static_cast<double>(pos.size());
        auto k = static_cast<std::size_t>(std::ceil(p / 100.0 * m));
        k = std::clamp<std::size_t>(k, 1, pos.size());
        // Retain weights >= the k-th largest; p = 100 keeps every positive link.
        level.cut_weight = p >= 100.0 ? 0.0 : pos[k - 1];

        AdjacencyMatrix adj;
        adj.year = layer.year;
        adj.layer = layer.layer;
        adj.threshold = level.cut_weight;
        adj.a = level.cut_weight > 0.0 ? BoolMatrix(layer.w.array() >= level.cut_weight)
                                       : BoolMatrix(layer.w.array() > 0.0);
        adj.a.matrix().diagonal().setConstant(false);
        level.links_retained = adj.link_count();

        ComponentPartition part = components(adj, mode);
        level.lcc_size = part.lcc_size;
        level.lcc_members = std::move(part.lcc_members);
        levels.push_back(std::move(level));
    }
    return levels;
}

std::vector<GroupLcc> lcc_by_group(const AdjacencyMatrix& adj, const NodeCatalog& nodes,
                                   ConnectivityMode mode) {
    std::map<std::string, std::vector<Eigen::Index>> members;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        members[nodes.group_of(nodes.ids[i])].push_back(static_cast<Eigen::Index>(i));

    std::vector<GroupLcc> rows;
    for (const auto& [group, idx] : members) {
        GroupLcc row;
        row.group = group;
        row.group_size = static_cast<int>(idx.size());
        // Induced subgraph on the group's nodes.
        AdjacencyMatrix sub;
        sub.year = adj.year;
        sub.layer = adj.layer;
        sub.threshold = adj.threshold;
        const auto k = static_cast<Eigen::Index>(idx.size());
        sub.a.setConstant(k, k, false);
        for (Eigen::Index a = 0; a < k; ++a)
            for (Eigen::Index b = 0; b < k; ++b)
                if (a != b) sub.a(a, b) = adj.a(idx[static_cast<std::size_t>(a)],
                                                idx[static_cast<std::size_t>(b)]);
        row.lcc_size = components(sub, mode).lcc_size;
        row.pct = row.group_size > 0
                      ? 100.0 * static_cast<double>(row.lcc_size) / row.group_size
                      : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace multinet
