#include "multinet/taxonomy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "multinet/io.hpp"

namespace multinet {

Dendrogram complete_linkage(const LayerDistanceMatrix& dist) {
    const auto C = static_cast<int>(dist.d.rows());
    if (C < 1 || dist.d.cols() != C)
        throw std::invalid_argument("complete_linkage: distance matrix must be square");
    if (static_cast<int>(dist.codes.size()) != C)
        throw std::invalid_argument("complete_linkage: need one code per row");
    {
        std::vector<std::string> bad;
        for (int i = 0; i < C; ++i)
            for (int j = i + 1; j < C; ++j)
                if (!is_defined(dist.d(i, j)))
                    bad.push_back(dist.codes[static_cast<std::size_t>(i)] + "/" +
                                  dist.codes[static_cast<std::size_t>(j)]);
        if (!bad.empty()) {
            std::string msg = "complete_linkage: undefined distances for pairs:";
            for (const auto& p : bad) msg += " " + p;
            throw std::invalid_argument(msg);
        }
    }

    Dendrogram out;
    out.leaves = dist.codes;

    struct Cluster {
        int id;           // leaf index or C + step
        std::string rep;  // smallest contained leaf label
        int size;
    };
    std::vector<Cluster> active;
    active.reserve(static_cast<std::size_t>(C));
    for (int i = 0; i < C; ++i)
        active.push_back({i, dist.codes[static_cast<std::size_t>(i)], 1});

    // Working distances between active slots. The complete-linkage
    // Lance-Williams update is a pure max, so entries stay bit-identical to
    // a full recomputation over member pairs.
    std::vector<std::vector<double>> d(static_cast<std::size_t>(C),
                                       std::vector<double>(static_cast<std::size_t>(C), 0.0));
    for (int i = 0; i < C; ++i)
        for (int j = 0; j < C; ++j) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = dist.d(i, j);

    auto pair_key = [&](std::size_t a, std::size_t b) {
        return active[a].rep <= active[b].rep
                   ? std::make_pair(active[a].rep, active[b].rep)
                   : std::make_pair(active[b].rep, active[a].rep);
    };

    for (int step = 0; active.size() > 1; ++step) {
        std::size_t best_a = 0, best_b = 1;
        double best = d[0][1];
        auto best_key = pair_key(0, 1);
        for (std::size_t a = 0; a < active.size(); ++a) {
            for (std::size_t b = a + 1; b < active.size(); ++b) {
                const double dd = d[a][b];
                if (dd < best) {
                    best = dd;
                    best_a = a;
                    best_b = b;
                    best_key = pair_key(a, b);
                } else if (dd == best) {
                    auto key = pair_key(a, b);
                    if (key < best_key) {
                        best_a = a;
                        best_b = b;
                        best_key = key;
                    }
                }
            }
        }

        Cluster& ca = active[best_a];
        Cluster& cb = active[best_b];
        Merge m;
        m.a = ca.rep <= cb.rep ? ca.id : cb.id;
        m.b = ca.rep <= cb.rep ? cb.id : ca.id;
        m.height = best;
        m.size = ca.size + cb.size;
        out.merges.push_back(m);

        // Fold b into a, then drop slot b.
        for (std::size_t k = 0; k < active.size(); ++k) {
            if (k == best_a || k == best_b) continue;
            const double nd = std::max(d[best_a][k], d[best_b][k]);
            d[best_a][k] = nd;
            d[k][best_a] = nd;
        }
        ca.id = C + step;
        ca.rep = std::min(ca.rep, cb.rep);
        ca.size = m.size;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(best_b));
        for (auto& row : d) row.erase(row.begin() + static_cast<std::ptrdiff_t>(best_b));
    }
    return out;
}

namespace {

// Leaf sets per cluster id, in merge order.
std::vector<std::vector<int>> cluster_members(const Dendrogram& dendro) {
    const auto C = static_cast<int>(dendro.leaves.size());
    std::vector<std::vector<int>> members(static_cast<std::size_t>(C) + dendro.merges.size());
    for (int i = 0; i < C; ++i) members[static_cast<std::size_t>(i)] = {i};
    for (std::size_t s = 0; s < dendro.merges.size(); ++s) {
        const Merge& m = dendro.merges[s];
        auto& dst = members[static_cast<std::size_t>(C) + s];
        dst = members[static_cast<std::size_t>(m.a)];
        dst.insert(dst.end(), members[static_cast<std::size_t>(m.b)].begin(),
                   members[static_cast<std::size_t>(m.b)].end());
        std::sort(dst.begin(), dst.end());
    }
    return members;
}

}  // namespace

Eigen::MatrixXd cophenetic(const Dendrogram& dendro) {
    const auto C = static_cast<int>(dendro.leaves.size());
    Eigen::MatrixXd coph = Eigen::MatrixXd::Zero(C, C);
    const auto members = cluster_members(dendro);
    for (std::size_t s = 0; s < dendro.merges.size(); ++s) {
        const Merge& m = dendro.merges[s];
        // The merge is the lowest common cluster for every cross pair.
        for (int i : members[static_cast<std::size_t>(m.a)])
            for (int j : members[static_cast<std::size_t>(m.b)]) {
                coph(i, j) = m.height;
                coph(j, i) = m.height;
            }
    }
    return coph;
}

std::vector<int> cut_tree(const Dendrogram& dendro, double height) {
    if (height < 0.0) throw std::invalid_argument("cut_tree: height must be >= 0");
    const auto C = static_cast<int>(dendro.leaves.size());
    // Replay merges at or below the cut over a leaf-level union-find.
    std::vector<int> parent(static_cast<std::size_t>(C));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    const auto members = cluster_members(dendro);
    for (const Merge& m : dendro.merges) {
        if (m.height > height) continue;
        const int ra = find(members[static_cast<std::size_t>(m.a)].front());
        const int rb = find(members[static_cast<std::size_t>(m.b)].front());
        if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
    }
    // Renumber clusters 0..k-1 in order of smallest leaf.
    std::vector<int> label(static_cast<std::size_t>(C), -1);
    std::vector<int> out(static_cast<std::size_t>(C));
    int next = 0;
    for (int i = 0; i < C; ++i) {
        const int r = find(i);
        if (label[static_cast<std::size_t>(r)] < 0) label[static_cast<std::size_t>(r)] = next++;
        out[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(r)];
    }
    return out;
}

namespace {

struct NewickNode {
    int id;
    double height;
    std::string min_label;
};

std::string render_newick(const Dendrogram& dendro, int id, double parent_height,
                          bool is_root, const std::vector<NewickNode>& nodes) {
    const auto C = static_cast<int>(dendro.leaves.size());
    std::string body;
    if (id < C) {
        body = dendro.leaves[static_cast<std::size_t>(id)];
    } else {
        const Merge& m = dendro.merges[static_cast<std::size_t>(id - C)];
        int first = m.a, second = m.b;
        if (nodes[static_cast<std::size_t>(second)].min_label <
            nodes[static_cast<std::size_t>(first)].min_label)
            std::swap(first, second);
        const double h = nodes[static_cast<std::size_t>(id)].height;
        body = "(" + render_newick(dendro, first, h, false, nodes) + "," +
               render_newick(dendro, second, h, false, nodes) + ")";
    }
    if (is_root) return body;
    const double branch = parent_height - nodes[static_cast<std::size_t>(id)].height;
    return body + ":" + format_double(branch);
}

}  // namespace

std::string to_newick(const Dendrogram& dendro) {
    const auto C = static_cast<int>(dendro.leaves.size());
    if (C == 0) throw std::invalid_argument("to_newick: empty dendrogram");
    std::vector<NewickNode> nodes(static_cast<std::size_t>(C) + dendro.merges.size());
    for (int i = 0; i < C; ++i)
        nodes[static_cast<std::size_t>(i)] = {i, 0.0, dendro.leaves[static_cast<std::size_t>(i)]};
    for (std::size_t s = 0; s < dendro.merges.size(); ++s) {
        const Merge& m = dendro.merges[s];
        nodes[static_cast<std::size_t>(C) + s] = {
            static_cast<int>(C + static_cast<int>(s)), m.height,
            std::min(nodes[static_cast<std::size_t>(m.a)].min_label,
                     nodes[static_cast<std::size_t>(m.b)].min_label)};
    }
    const int root = dendro.merges.empty() ? 0 : C + static_cast<int>(dendro.merges.size()) - 1;
    return render_newick(dendro, root, 0.0, true, nodes) + ";";
}

}  // namespace multinet
