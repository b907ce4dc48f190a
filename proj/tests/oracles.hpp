#pragma once

// Independent oracles shared by the unit suites and the acceptance binary.
// Each one is a direct enumeration or a library-grade solver, deliberately
// separate from the production code path it checks.

#include <Eigen/Eigenvalues>
#include <charconv>
#include <map>
#include <random>

#include "helpers.hpp"
#include "multinet/core.hpp"
#include "multinet/corr.hpp"
#include "multinet/taxonomy.hpp"

namespace testutil {

using multinet::Dendrogram;
using multinet::LayerDistanceMatrix;
using multinet::Merge;
using multinet::MultiNetworkPanel;

// Exhaustive ordered-pair enumeration of directed triangle intensities on
// the max-rescaled, cube-rooted weights.
struct TripleOracle {
    Eigen::VectorXd cyc, mid, in, out, all;
};

inline TripleOracle enumerate_triangles(const LayerWeightMatrix& layer) {
    const Eigen::Index n = layer.n();
    const double wmax = layer.w.maxCoeff();
    auto what = [&](Eigen::Index a, Eigen::Index b) {
        return wmax > 0 ? std::cbrt(layer.w(a, b) / wmax) : 0.0;
    };
    TripleOracle t;
    t.cyc = Eigen::VectorXd::Zero(n);
    t.mid = Eigen::VectorXd::Zero(n);
    t.in = Eigen::VectorXd::Zero(n);
    t.out = Eigen::VectorXd::Zero(n);
    t.all = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            for (Eigen::Index h = 0; h < n; ++h) {
                if (h == i || h == j) continue;
                t.cyc(i) += what(i, j) * what(j, h) * what(h, i);
                t.mid(i) += what(i, j) * what(h, j) * what(h, i);
                t.in(i) += what(j, i) * what(j, h) * what(h, i);
                t.out(i) += what(i, j) * what(j, h) * what(i, h);
                const double sij = what(i, j) + what(j, i);
                const double sjh = what(j, h) + what(h, j);
                const double shi = what(h, i) + what(i, h);
                t.all(i) += sij * sjh * shi;
            }
        }
    }
    return t;
}

inline Eigen::VectorXd principal_eigenvector(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < m.rows(); ++k)
        if (std::abs(solver.eigenvalues()(k)) > std::abs(solver.eigenvalues()(best))) best = k;
    Eigen::VectorXd v = solver.eigenvectors().col(best).real();
    if (v.sum() < 0) v = -v;
    return v / v.lpNorm<1>();
}

// Agglomeration oracle: recomputes every inter-cluster distance from the
// original matrix as a max over member pairs at each step (no Lance-Williams
// update), with the same representative-pair tie-break as production.
inline std::vector<Merge> naive_complete_linkage(const LayerDistanceMatrix& dist) {
    const auto C = static_cast<int>(dist.d.rows());
    struct Cl {
        int id;
        std::vector<int> leaves;
        std::string rep;
    };
    std::vector<Cl> clusters;
    for (int i = 0; i < C; ++i)
        clusters.push_back({i, {i}, dist.codes[static_cast<std::size_t>(i)]});

    std::vector<Merge> merges;
    for (int step = 0; clusters.size() > 1; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t ba = 0, bb = 1;
        std::pair<std::string, std::string> bkey;
        bool have = false;
        for (std::size_t a = 0; a < clusters.size(); ++a)
            for (std::size_t b = a + 1; b < clusters.size(); ++b) {
                double dmax = 0;
                for (int x : clusters[a].leaves)
                    for (int y : clusters[b].leaves) dmax = std::max(dmax, dist.d(x, y));
                auto key = clusters[a].rep <= clusters[b].rep
                               ? std::make_pair(clusters[a].rep, clusters[b].rep)
                               : std::make_pair(clusters[b].rep, clusters[a].rep);
                if (!have || dmax < best || (dmax == best && key < bkey)) {
                    best = dmax;
                    ba = a;
                    bb = b;
                    bkey = key;
                    have = true;
                }
            }
        Merge m;
        const bool a_first = clusters[ba].rep <= clusters[bb].rep;
        m.a = a_first ? clusters[ba].id : clusters[bb].id;
        m.b = a_first ? clusters[bb].id : clusters[ba].id;
        m.height = best;
        m.size = static_cast<int>(clusters[ba].leaves.size() + clusters[bb].leaves.size());
        merges.push_back(m);
        clusters[ba].leaves.insert(clusters[ba].leaves.end(), clusters[bb].leaves.begin(),
                                   clusters[bb].leaves.end());
        clusters[ba].rep = std::min(clusters[ba].rep, clusters[bb].rep);
        clusters[ba].id = C + step;
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bb));
    }
    return merges;
}

// Minimal Newick reader covering the strings the toolkit writes; used to
// recover the cophenetic matrix from serialized trees.
struct ParsedNode {
    std::string label;
    double branch = 0.0;
    std::vector<ParsedNode> children;
};

inline ParsedNode parse_newick_node(const std::string& s, std::size_t& pos) {
    ParsedNode node;
    if (s[pos] == '(') {
        ++pos;
        node.children.push_back(parse_newick_node(s, pos));
        if (s[pos] != ',') throw std::runtime_error("newick: expected ','");
        ++pos;
        node.children.push_back(parse_newick_node(s, pos));
        if (s[pos] != ')') throw std::runtime_error("newick: expected ')'");
        ++pos;
    } else {
        while (pos < s.size() && s[pos] != ':' && s[pos] != ',' && s[pos] != ')' && s[pos] != ';')
            node.label += s[pos++];
    }
    if (pos < s.size() && s[pos] == ':') {
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != ',' && s[pos] != ')' && s[pos] != ';') ++pos;
        const auto res = std::from_chars(s.data() + start, s.data() + pos, node.branch);
        if (res.ec != std::errc{}) throw std::runtime_error("newick: bad branch length");
    }
    return node;
}

inline void collect_depths(const ParsedNode& node, double depth,
                           std::map<std::string, double>& leaf_depth) {
    if (node.children.empty()) {
        leaf_depth[node.label] = depth;
        return;
    }
    for (const auto& child : node.children)
        collect_depths(child, depth + child.branch, leaf_depth);
}

inline void assign_cophenetic(const ParsedNode& node, double depth, double root_height,
                              const std::map<std::string, int>& index, Eigen::MatrixXd& coph) {
    if (node.children.empty()) return;
    std::vector<std::vector<std::string>> sides;
    for (const auto& child : node.children) {
        std::map<std::string, double> leaves;
        collect_depths(child, 0.0, leaves);
        std::vector<std::string> names;
        if (child.children.empty()) {
            names.push_back(child.label);
        } else {
            for (const auto& [name, d] : leaves) names.push_back(name);
        }
        sides.push_back(names);
        assign_cophenetic(child, depth + child.branch, root_height, index, coph);
    }
    const double h = root_height - depth;
    for (const auto& x : sides[0])
        for (const auto& y : sides[1]) {
            const int i = index.at(x);
            const int j = index.at(y);
            coph(i, j) = h;
            coph(j, i) = h;
        }
}

inline Eigen::MatrixXd cophenetic_from_newick(const std::string& newick,
                                              const std::vector<std::string>& leaves) {
    std::size_t pos = 0;
    const ParsedNode root = parse_newick_node(newick, pos);
    if (newick[pos] != ';') throw std::runtime_error("newick: missing terminator");
    std::map<std::string, double> depth;
    collect_depths(root, 0.0, depth);
    const double root_height = depth.begin()->second;  // ultrametric: all equal

    std::map<std::string, int> index;
    for (std::size_t i = 0; i < leaves.size(); ++i) index[leaves[i]] = static_cast<int>(i);
    Eigen::MatrixXd coph = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(leaves.size()),
                                                 static_cast<Eigen::Index>(leaves.size()));
    assign_cophenetic(root, 0.0, root_height, index, coph);
    return coph;
}

// Random symmetric distance matrix with dyadic entries (multiples of 2^-10),
// so merge heights, branch-length differences and path sums are all exact in
// binary floating point and Newick round-trips compare exactly.
inline LayerDistanceMatrix random_dyadic_dist(std::mt19937_64& gen, int C) {
    std::uniform_int_distribution<int> k(1, 1024);
    LayerDistanceMatrix m;
    m.d = Eigen::MatrixXd::Zero(C, C);
    m.year = 2003;
    for (int i = 0; i < C; ++i) {
        std::string code = "L";
        code += static_cast<char>('A' + i / 10);
        code += static_cast<char>('0' + i % 10);
        m.codes.push_back(code);
    }
    for (int i = 0; i < C; ++i)
        for (int j = i + 1; j < C; ++j) {
            const double v = static_cast<double>(k(gen)) / 1024.0;
            m.d(i, j) = v;
            m.d(j, i) = v;
        }
    return m;
}

// Sup ECDF gap evaluated over the union of sample points.
inline double ks2_grid_oracle(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> grid = a;
    grid.insert(grid.end(), b.begin(), b.end());
    double d = 0.0;
    for (double x : grid) {
        double fa = 0, fb = 0;
        for (double v : a) fa += v <= x ? 1.0 : 0.0;
        for (double v : b) fb += v <= x ? 1.0 : 0.0;
        d = std::max(d, std::abs(fa / static_cast<double>(a.size()) -
                                 fb / static_cast<double>(b.size())));
    }
    return d;
}

// Glue a second single-year panel onto a first as a later year.
inline MultiNetworkPanel splice_two_years(const MultiNetworkPanel& a,
                                          const MultiNetworkPanel& b) {
    MultiNetworkPanel out = a;
    out.years.push_back(b.years.front());
    out.raw.push_back(b.raw.front());
    out.normalized.push_back(b.normalized.front());
    out.aggregate_raw.push_back(b.aggregate_raw.front());
    out.aggregate_normalized.push_back(b.aggregate_normalized.front());
    return out;
}

}  // namespace testutil
