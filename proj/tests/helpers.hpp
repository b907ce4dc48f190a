#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles are
// deliberately written as plain loops, not through the library code paths
// they check.

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "multinet/core.hpp"

namespace testutil {

using multinet::AdjacencyMatrix;
using multinet::BoolMatrix;
using multinet::LayerWeightMatrix;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Random nonnegative weight matrix with zero diagonal.
inline LayerWeightMatrix random_layer(std::mt19937_64& gen, int n, double density,
                                      int year = 2003, std::string code = "01") {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::lognormal_distribution<double> w(0.0, 1.0);
    LayerWeightMatrix layer;
    layer.w = Eigen::MatrixXd::Zero(n, n);
    layer.year = year;
    layer.layer = std::move(code);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && u(gen) < density) layer.w(i, j) = w(gen);
    return layer;
}

inline AdjacencyMatrix random_adjacency(std::mt19937_64& gen, int n, double density) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    AdjacencyMatrix adj;
    adj.a.setConstant(n, n, false);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) adj.a(i, j) = u(gen) < density;
    return adj;
}

// Component partition by breadth-first search; returns node -> smallest
// member index of its component.
inline std::vector<int> bfs_components(const BoolMatrix& a, bool strong) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    for (int start = 0; start < n; ++start) {
        if (comp[static_cast<std::size_t>(start)] >= 0) continue;
        std::queue<int> q;
        q.push(start);
        comp[static_cast<std::size_t>(start)] = start;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int u = 0; u < n; ++u) {
                if (u == v || comp[static_cast<std::size_t>(u)] >= 0) continue;
                const bool linked = strong ? (a(v, u) && a(u, v)) : (a(v, u) || a(u, v));
                if (linked) {
                    comp[static_cast<std::size_t>(u)] = start;
                    q.push(u);
                }
            }
        }
    }
    return comp;
}

// Plain two-pass Pearson correlation skipping NaN pairs.
inline double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (!std::isnan(x[i]) && !std::isnan(y[i])) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    }
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 0 || syy <= 0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace testutil
