#include "multinet/corr.hpp"

#include <algorithm>
#include <cmath>

#include "multinet/stats.hpp"

namespace multinet {

double within_layer_corr(std::span<const double> x, std::span<const double> y, CorrMode mode) {
    if (mode == CorrMode::ProductMoment) return pearson(x, y);
    // Rank the complete cases only, so ties and missing values interact the
    // same way as in the product-moment path.
    const std::size_t n = std::min(x.size(), y.size());
    std::vector<double> xs(n, kUndefined), ys(n, kUndefined);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_defined(x[i]) && is_defined(y[i])) {
            xs[i] = x[i];
            ys[i] = y[i];
        }
    }
    const std::vector<double> rx = midranks(xs);
    const std::vector<double> ry = midranks(ys);
    return pearson(rx, ry);
}

const std::array<WithinCorrPair, 11>& within_corr_pairs() {
    static const std::array<WithinCorrPair, 11> pairs = {{
        {"ns_in", "nd_in"},
        {"ns_out", "nd_out"},
        {"anns_tot", "ns_tot"},
        {"anns_in_in", "ns_in"},
        {"anns_in_out", "ns_in"},
        {"anns_out_in", "ns_out"},
        {"anns_out_out", "ns_out"},
        {"wcc_all", "ns_tot"},
        {"wcc_in", "ns_in"},
        {"wcc_out", "ns_out"},
        {"wcentr", "ns_tot"},
    }};
    return pairs;
}

namespace {

std::span<const double> as_span(const Eigen::VectorXd& v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

std::vector<WithinCorrRow> within_corr_table(const MultiNetworkPanel& panel, int year,
                                             CorrMode mode) {
    const auto t = panel.year_index(year);
    if (!t) throw std::invalid_argument("year " + std::to_string(year) + " not in panel");

    std::vector<std::string> codes = panel.layers.codes;
    codes.push_back(kAggregateLayer);

    std::vector<WithinCorrRow> rows;
    for (const auto& code : codes) {
        WithinCorrRow row;
        row.layer = code;
        row.coefficients.fill(kUndefined);
        if (!panel.normalized_matrix(year, code).empty()) {
            const NodeStatsTable table = stats_table(panel, year, code);
            for (std::size_t k = 0; k < within_corr_pairs().size(); ++k) {
                const auto& pair = within_corr_pairs()[k];
                const Eigen::VectorXd x = table.column(pair.x);
                const Eigen::VectorXd y = table.column(pair.y);
                row.coefficients[k] = within_layer_corr(as_span(x), as_span(y), mode);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

LayerCorrelationMatrix cross_layer_stat_corr(const MultiNetworkPanel& panel, int year,
                                             const std::string& statistic, CorrMode mode,
                                             unsigned threads) {
    const auto t = panel.year_index(year);
    if (!t) throw std::invalid_argument("year " + std::to_string(year) + " not in panel");

    const auto C = static_cast<int>(panel.n_layers());
    std::vector<Eigen::VectorXd> columns(static_cast<std::size_t>(C));
    std::vector<bool> available(static_cast<std::size_t>(C), false);
    for (int c = 0; c < C; ++c) {
        if (panel.layer_empty(*t, static_cast<std::size_t>(c))) continue;
        const NodeStatsTable table = stats_table(panel, year, panel.layers.codes[static_cast<std::size_t>(c)]);
        columns[static_cast<std::size_t>(c)] = table.column(statistic);
        available[static_cast<std::size_t>(c)] = true;
    }

    LayerCorrelationMatrix out;
    out.kind = CorrKind::CrossStat;
    out.statistic = statistic;
    out.year = year;
    out.codes = panel.layers.codes;
    out.phi.setConstant(C, C, kUndefined);
    for (int c = 0; c < C; ++c)
        if (available[static_cast<std::size_t>(c)]) out.phi(c, c) = 1.0;

    const auto pairs = layer_pairs(C);
    std::vector<double> vals(pairs.size(), kUndefined);
    parallel_for(pairs.size(), threads, [&](std::size_t k) {
        const auto [c, d] = pairs[k];
        if (!available[static_cast<std::size_t>(c)] || !available[static_cast<std::size_t>(d)])
            return;
        vals[k] = within_layer_corr(as_span(columns[static_cast<std::size_t>(c)]),
                                    as_span(columns[static_cast<std::size_t>(d)]), mode);
    });
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        out.phi(pairs[k].first, pairs[k].second) = vals[k];
        out.phi(pairs[k].second, pairs[k].first) = vals[k];
    }
    return out;
}

namespace {

// Flatten the N(N-1) off-diagonal entries in row-major order.
std::vector<double> offdiag(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) v.push_back(m(i, j));
    return v;
}

template <typename BuildPair>
LayerCorrelationMatrix interlayer_matrix(const MultiNetworkPanel& panel, int year, CorrKind kind,
                                         unsigned threads, BuildPair&& cell) {
    const auto t = panel.year_index(year);
    if (!t) throw std::invalid_argument("year " + std::to_string(year) + " not in panel");

    const auto C = static_cast<int>(panel.n_layers());
    LayerCorrelationMatrix out;
    out.kind = kind;
    out.year = year;
    out.codes = panel.layers.codes;
    out.phi.setConstant(C, C, kUndefined);
    for (int c = 0; c < C; ++c)
        if (!panel.layer_empty(*t, static_cast<std::size_t>(c))) out.phi(c, c) = 1.0;

    const auto pairs = layer_pairs(C);
    std::vector<double> vals(pairs.size(), kUndefined);
    parallel_for(pairs.size(), threads, [&](std::size_t k) {
        vals[k] = cell(*t, pairs[k].first, pairs[k].second);
    });
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        out.phi(pairs[k].first, pairs[k].second) = vals[k];
        out.phi(pairs[k].second, pairs[k].first) = vals[k];
    }
    return out;
}

}  // namespace

double phi_weighted(const Eigen::MatrixXd& wa, const Eigen::MatrixXd& wb) {
    return pearson(offdiag(wa), offdiag(wb));
}

double phi_unweighted(const BoolMatrix& aa, const BoolMatrix& ab) {
    const Eigen::Index n = aa.rows();
    std::vector<double> xa, xb;
    xa.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1));
    xb.reserve(xa.capacity());
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) {
                xa.push_back(aa(i, j) ? 1.0 : 0.0);
                xb.push_back(ab(i, j) ? 1.0 : 0.0);
            }
    return pearson(xa, xb);
}

LayerCorrelationMatrix interlayer_corr_weighted(const MultiNetworkPanel& panel, int year,
                                                unsigned threads) {
    return interlayer_matrix(panel, year, CorrKind::PhiW, threads,
                             [&](std::size_t t, int c, int d) {
                                 return phi_weighted(panel.normalized[t][static_cast<std::size_t>(c)].w,
                                                     panel.normalized[t][static_cast<std::size_t>(d)].w);
                             });
}

LayerCorrelationMatrix interlayer_corr_unweighted(const MultiNetworkPanel& panel, int year,
                                                  unsigned threads) {
    const auto t0 = panel.year_index(year);
    if (!t0) throw std::invalid_argument("year " + std::to_string(year) + " not in panel");
    // Binarize once per layer, not once per pair.
    std::vector<BoolMatrix> adj(panel.n_layers());
    for (std::size_t c = 0; c < panel.n_layers(); ++c)
        adj[c] = binarize(panel.normalized[*t0][c]).a;
    return interlayer_matrix(panel, year, CorrKind::PhiU, threads,
                             [&](std::size_t, int c, int d) {
                                 return phi_unweighted(adj[static_cast<std::size_t>(c)],
                                                       adj[static_cast<std::size_t>(d)]);
                             });
}

LayerDistanceMatrix corr_to_distance(const LayerCorrelationMatrix& corr) {
    LayerDistanceMatrix out;
    out.weighted = corr.kind != CorrKind::PhiU;
    out.year = corr.year;
    out.codes = corr.codes;
    out.d = corr.phi.unaryExpr([](double phi) {
        if (!is_defined(phi)) return kUndefined;
        return std::sqrt((1.0 - phi) / 2.0);
    });
    return out;
}

double average_interlayer(const Eigen::MatrixXd& matrix) {
    std::vector<double> vals;
    for (Eigen::Index c = 0; c < matrix.rows(); ++c)
        for (Eigen::Index d = c + 1; d < matrix.cols(); ++d)
            if (is_defined(matrix(c, d))) vals.push_back(matrix(c, d));
    if (vals.empty()) return kUndefined;
    return compensated_sum(vals) / static_cast<double>(vals.size());
}

EvolutionSeries evolution_series(const MultiNetworkPanel& panel, unsigned threads) {
    if (panel.n_years() < 2)
        throw std::invalid_argument("evolution_series: need at least two years");
    EvolutionSeries s;
    for (int year : panel.years) {
        const LayerCorrelationMatrix pw = interlayer_corr_weighted(panel, year, threads);
        const LayerCorrelationMatrix pu = interlayer_corr_unweighted(panel, year, threads);
        s.years.push_back(year);
        s.phi_w.push_back(average_interlayer(pw.phi));
        s.phi_u.push_back(average_interlayer(pu.phi));
        // The distance average is the mean of the transformed matrix, not a
        // transform of the mean.
        s.d_w.push_back(average_interlayer(corr_to_distance(pw).d));
        s.d_u.push_back(average_interlayer(corr_to_distance(pu).d));
    }
    return s;
}

}  // namespace multinet
