#include "multinet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "multinet/io.hpp"

namespace multinet {

DegreeStats degrees(const AdjacencyMatrix& adj) {
    const Eigen::Index n = adj.n();
    Eigen::MatrixXi a = adj.a.cast<int>().matrix();
    DegreeStats d;
    d.nd_out = a.rowwise().sum();
    d.nd_in = a.colwise().sum().transpose();
    d.nd_tot = d.nd_in + d.nd_out;
    d.nd_bilateral.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        int b = 0;
        for (Eigen::Index j = 0; j < n; ++j) b += a(i, j) * a(j, i);
        d.nd_bilateral(i) = b;
    }
    return d;
}

StrengthStats strengths(const LayerWeightMatrix& layer) {
    StrengthStats s;
    s.ns_out = layer.w.rowwise().sum();
    s.ns_in = layer.w.colwise().sum().transpose();
    s.ns_tot = s.ns_in + s.ns_out;
    return s;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> strength_per_degree(const StrengthStats& ns,
                                                                const DegreeStats& nd) {
    const Eigen::Index n = ns.ns_in.size();
    Eigen::VectorXd in(n), out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        in(i) = nd.nd_in(i) > 0 ? ns.ns_in(i) / nd.nd_in(i) : kUndefined;
        out(i) = nd.nd_out(i) > 0 ? ns.ns_out(i) / nd.nd_out(i) : kUndefined;
    }
    return {in, out};
}

AnnsStats anns(const LayerWeightMatrix& layer, const AdjacencyMatrix& adj) {
    const Eigen::Index n = layer.n();
    const StrengthStats ns = strengths(layer);
    AnnsStats r;
    r.in_in.setConstant(n, kUndefined);
    r.in_out.setConstant(n, kUndefined);
    r.out_in.setConstant(n, kUndefined);
    r.out_out.setConstant(n, kUndefined);
    r.tot.setConstant(n, kUndefined);

    for (Eigen::Index i = 0; i < n; ++i) {
        double sum_in_in = 0, sum_in_out = 0, sum_out_in = 0, sum_out_out = 0, sum_tot = 0;
        int k_in = 0, k_out = 0, k_union = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const bool in_nb = adj.a(j, i);   // i imports from j
            const bool out_nb = adj.a(i, j);  // i exports to j
            if (in_nb) {
                sum_in_in += ns.ns_in(j);
                sum_in_out += ns.ns_out(j);
                ++k_in;
            }
            if (out_nb) {
                sum_out_in += ns.ns_in(j);
                sum_out_out += ns.ns_out(j);
                ++k_out;
            }
            if (in_nb || out_nb) {
                sum_tot += ns.ns_tot(j);
                ++k_union;
            }
        }
        if (k_in > 0) {
            r.in_in(i) = sum_in_in / k_in;
            r.in_out(i) = sum_in_out / k_in;
        }
        if (k_out > 0) {
            r.out_in(i) = sum_out_in / k_out;
            r.out_out(i) = sum_out_out / k_out;
        }
        if (k_union > 0) r.tot(i) = sum_tot / k_union;
    }
    return r;
}

namespace {

// Triangle-intensity numerators: diagonal entries of the directed products
// of the max-rescaled, cube-rooted weight matrix.
struct TriangleNumerators {
    Eigen::VectorXd cyc, mid, in, out, all;
};

TriangleNumerators triangle_numerators(const LayerWeightMatrix& layer) {
    const double wmax = layer.w.maxCoeff();
    const Eigen::Index n = layer.n();
    Eigen::MatrixXd what(n, n);
    if (wmax > 0.0)
        what = (layer.w / wmax).unaryExpr([](double x) { return std::cbrt(x); });
    else
        what.setZero();
    const Eigen::MatrixXd whatT = what.transpose();
    const Eigen::MatrixXd what2 = what * what;
    const Eigen::MatrixXd sym = what + whatT;

    TriangleNumerators t;
    t.cyc = (what2 * what).diagonal();
    t.mid = (what * whatT * what).diagonal();
    t.in = (whatT * what2).diagonal();
    t.out = (what2 * whatT).diagonal();
    t.all = (sym * sym * sym).diagonal();
    return t;
}

}  // namespace

WccStats weighted_clustering(const LayerWeightMatrix& layer, const AdjacencyMatrix& adj) {
    const Eigen::Index n = layer.n();
    const TriangleNumerators t = triangle_numerators(layer);
    const DegreeStats d = degrees(adj);

    WccStats w;
    w.cyc.setConstant(n, kUndefined);
    w.mid.setConstant(n, kUndefined);
    w.in.setConstant(n, kUndefined);
    w.out.setConstant(n, kUndefined);
    w.all.setConstant(n, kUndefined);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double din = d.nd_in(i), dout = d.nd_out(i);
        const double dtot = d.nd_tot(i), dbil = d.nd_bilateral(i);
        const double den_cyc = din * dout - dbil;
        if (den_cyc > 0) {
            w.cyc(i) = t.cyc(i) / den_cyc;
            w.mid(i) = t.mid(i) / den_cyc;
        }
        if (din > 1) w.in(i) = t.in(i) / (din * (din - 1));
        if (dout > 1) w.out(i) = t.out(i) / (dout * (dout - 1));
        const double den_all = 2.0 * (dtot * (dtot - 1) - 2.0 * dbil);
        if (den_all > 0) w.all(i) = t.all(i) / den_all;
    }
    return w;
}

TriangleShares triangle_shares(const LayerWeightMatrix& layer, const AdjacencyMatrix& adj) {
    (void)adj;  // same precondition as weighted_clustering; shares need only weights
    const Eigen::Index n = layer.n();
    const TriangleNumerators t = triangle_numerators(layer);

    TriangleShares s;
    s.cyc.setConstant(n, kUndefined);
    s.mid.setConstant(n, kUndefined);
    s.in.setConstant(n, kUndefined);
    s.out.setConstant(n, kUndefined);
    double acc_cyc = 0, acc_mid = 0, acc_in = 0, acc_out = 0;
    int nodes_with_triangles = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double tot = t.cyc(i) + t.mid(i) + t.in(i) + t.out(i);
        if (tot <= 0.0) continue;
        s.cyc(i) = t.cyc(i) / tot;
        s.mid(i) = t.mid(i) / tot;
        s.in(i) = t.in(i) / tot;
        s.out(i) = t.out(i) / tot;
        acc_cyc += s.cyc(i);
        acc_mid += s.mid(i);
        acc_in += s.in(i);
        acc_out += s.out(i);
        ++nodes_with_triangles;
    }
    if (nodes_with_triangles > 0) {
        s.net_cyc = acc_cyc / nodes_with_triangles;
        s.net_mid = acc_mid / nodes_with_triangles;
        s.net_in = acc_in / nodes_with_triangles;
        s.net_out = acc_out / nodes_with_triangles;
    }
    return s;
}

namespace {

struct PowerResult {
    Eigen::VectorXd v;
    std::size_t iterations;
};

PowerResult power_iteration(const Eigen::MatrixXd& m, std::size_t max_iterations) {
    const Eigen::Index n = m.rows();
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    double diff = 0.0;
    for (std::size_t it = 1; it <= max_iterations; ++it) {
        Eigen::VectorXd u = m * v;
        const double s = u.lpNorm<1>();
        // Nilpotent direction exhausted (no cycle feeds back): keep the last
        // normalized iterate, where all mass sits on the feeding nodes.
        if (s == 0.0) return {v, it};
        u /= s;
        diff = (u - v).lpNorm<1>();
        v = std::move(u);
        if (diff < 1e-12) return {v, it};
    }
    throw ConvergenceError("eigenvector centrality did not converge", diff);
}

}  // namespace

CentralityResult eigenvector_centrality(const LayerWeightMatrix& layer,
                                        std::size_t max_iterations) {
    if (layer.empty()) throw EmptyLayerError(layer.year, layer.layer);
    CentralityResult r;
    auto out = power_iteration(layer.w, max_iterations);
    auto in = power_iteration(layer.w.transpose(), max_iterations);
    r.out_centrality = std::move(out.v);
    r.in_centrality = std::move(in.v);
    r.iterations = std::max(out.iterations, in.iterations);
    r.wcentr = r.in_centrality + r.out_centrality;
    r.wcentr /= r.wcentr.lpNorm<1>();
    return r;
}

const std::vector<std::string>& NodeStatsTable::column_names() {
    static const std::vector<std::string> names = {
        "nd_in",        "nd_out",      "nd_tot",      "ns_in",       "ns_out",
        "ns_tot",       "ns_in_per_nd_in", "ns_out_per_nd_out",
        "anns_in_in",   "anns_in_out", "anns_out_in", "anns_out_out", "anns_tot",
        "wcc_cyc",      "wcc_mid",     "wcc_in",      "wcc_out",     "wcc_all",
        "wcentr"};
    return names;
}

Eigen::VectorXd NodeStatsTable::column(const std::string& name) const {
    if (name == "nd_in") return nd_in.cast<double>();
    if (name == "nd_out") return nd_out.cast<double>();
    if (name == "nd_tot") return nd_tot.cast<double>();
    if (name == "ns_in") return ns_in;
    if (name == "ns_out") return ns_out;
    if (name == "ns_tot") return ns_tot;
    if (name == "ns_in_per_nd_in") return ns_in_per_nd_in;
    if (name == "ns_out_per_nd_out") return ns_out_per_nd_out;
    if (name == "anns_in_in") return anns_in_in;
    if (name == "anns_in_out") return anns_in_out;
    if (name == "anns_out_in") return anns_out_in;
    if (name == "anns_out_out") return anns_out_out;
    if (name == "anns_tot") return anns_tot;
    if (name == "wcc_cyc") return wcc_cyc;
    if (name == "wcc_mid") return wcc_mid;
    if (name == "wcc_in") return wcc_in;
    if (name == "wcc_out") return wcc_out;
    if (name == "wcc_all") return wcc_all;
    if (name == "wcentr") return wcentr;
    throw std::invalid_argument("unknown statistic '" + name + "'");
}

NodeStatsTable stats_table(const MultiNetworkPanel& panel, int year, const std::string& layer) {
    const LayerWeightMatrix& m = panel.normalized_matrix(year, layer);
    if (m.empty()) throw EmptyLayerError(year, layer);
    const AdjacencyMatrix adj = binarize(m);

    NodeStatsTable t;
    t.node_ids = panel.nodes.ids;
    t.year = year;
    t.layer = layer;

    const DegreeStats nd = degrees(adj);
    const StrengthStats ns = strengths(m);
    t.nd_in = nd.nd_in;
    t.nd_out = nd.nd_out;
    t.nd_tot = nd.nd_tot;
    t.ns_in = ns.ns_in;
    t.ns_out = ns.ns_out;
    t.ns_tot = ns.ns_tot;
    std::tie(t.ns_in_per_nd_in, t.ns_out_per_nd_out) = strength_per_degree(ns, nd);

    const AnnsStats a = anns(m, adj);
    t.anns_in_in = a.in_in;
    t.anns_in_out = a.in_out;
    t.anns_out_in = a.out_in;
    t.anns_out_out = a.out_out;
    t.anns_tot = a.tot;

    const WccStats w = weighted_clustering(m, adj);
    t.wcc_cyc = w.cyc;
    t.wcc_mid = w.mid;
    t.wcc_in = w.in;
    t.wcc_out = w.out;
    t.wcc_all = w.all;

    t.wcentr = eigenvector_centrality(m).wcentr;
    return t;
}

void write_stats_csv(std::ostream& out, const NodeStatsTable& table) {
    out << "node";
    for (const auto& name : NodeStatsTable::column_names()) out << ',' << name;
    out << '\n';
    const auto n = static_cast<Eigen::Index>(table.node_ids.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        out << table.node_ids[static_cast<std::size_t>(i)];
        out << ',' << table.nd_in(i) << ',' << table.nd_out(i) << ',' << table.nd_tot(i);
        for (const auto* col : {&table.ns_in, &table.ns_out, &table.ns_tot,
                                &table.ns_in_per_nd_in, &table.ns_out_per_nd_out,
                                &table.anns_in_in, &table.anns_in_out, &table.anns_out_in,
                                &table.anns_out_out, &table.anns_tot, &table.wcc_cyc,
                                &table.wcc_mid, &table.wcc_in, &table.wcc_out, &table.wcc_all,
                                &table.wcentr})
            out << ',' << format_cell((*col)(i));
        out << '\n';
    }
}

std::vector<std::pair<std::string, double>> rank_top(const NodeStatsTable& table,
                                                     const std::string& statistic,
                                                     std::size_t k) {
    if (k < 1) throw std::invalid_argument("rank_top: k must be >= 1");
    const Eigen::VectorXd col = table.column(statistic);
    std::vector<std::pair<std::string, double>> entries;
    for (Eigen::Index i = 0; i < col.size(); ++i)
        if (is_defined(col(i)))
            entries.emplace_back(table.node_ids[static_cast<std::size_t>(i)], col(i));
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (entries.size() > k) entries.resize(k);
    return entries;
}

namespace {

std::vector<double> weight_sample(const LayerWeightMatrix& m, bool include_zeros) {
    if (!include_zeros) return positive_weights(m);
    std::vector<double> all;
    const Eigen::Index n = m.n();
    all.reserve(static_cast<std::size_t>(n) * (n - 1));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j) all.push_back(m.w(i, j));
    return all;
}

}  // namespace

std::vector<MomentsRow> moments_report(const MultiNetworkPanel& panel, int year,
                                       const std::string& statistic,
                                       bool include_zero_weights) {
    const auto t = panel.year_index(year);
    if (!t) throw std::invalid_argument("year " + std::to_string(year) + " not in panel");
    const bool weight_stat = statistic == "weight";
    if (!weight_stat) {
        const auto& names = NodeStatsTable::column_names();
        if (std::find(names.begin(), names.end(), statistic) == names.end())
            throw std::invalid_argument("unknown statistic '" + statistic + "'");
    }

    auto layer_moments = [&](const std::string& code) -> Moments {
        const auto& m = panel.normalized_matrix(year, code);
        if (m.empty()) return {};
        if (weight_stat) {
            const auto sample = weight_sample(m, include_zero_weights);
            return sample_moments(sample);
        }
        const NodeStatsTable table = stats_table(panel, year, code);
        const Eigen::VectorXd col = table.column(statistic);
        return sample_moments(std::span<const double>(col.data(),
                                                      static_cast<std::size_t>(col.size())));
    };

    const Moments agg = layer_moments(kAggregateLayer);
    std::vector<MomentsRow> rows;
    auto make_row = [&](const std::string& code) {
        MomentsRow row;
        row.layer = code;
        const Moments m = layer_moments(code);
        row.n = m.n;
        row.mean = m.mean;
        row.sd = m.sd;
        if (is_defined(m.mean) && is_defined(agg.mean) && agg.mean != 0.0)
            row.ratio_pct = 100.0 * m.mean / agg.mean;
        const auto& norm = panel.normalized_matrix(year, code);
        row.density = panel.n_nodes() >= 2 ? density(binarize(norm)) : kUndefined;
        rows.push_back(std::move(row));
    };
    for (const auto& code : panel.layers.codes) make_row(code);
    make_row(kAggregateLayer);
    return rows;
}

}  // namespace multinet
