#include "multinet/synth.hpp"

#include <cmath>

#include "multinet/rng.hpp"

namespace multinet {

namespace {

constexpr std::uint64_t kEdgeTag = 0x65646765;    // fresh edge indicator
constexpr std::uint64_t kReuseTag = 0x72657573;   // reuse-previous-layer coin
constexpr std::uint64_t kWeightTag = 0x77656967;  // weight draw

void validate(const SynthSpec& spec) {
    if (spec.n_nodes < 2) throw std::invalid_argument("synth: need at least 2 nodes");
    if (spec.n_layers < 1) throw std::invalid_argument("synth: need at least 1 layer");
    if (spec.n_years < 1) throw std::invalid_argument("synth: need at least 1 year");
    if (!(spec.density > 0.0 && spec.density <= 1.0))
        throw std::invalid_argument("synth: density must lie in (0, 1]");
    if (!(spec.interlayer_overlap >= 0.0 && spec.interlayer_overlap <= 1.0))
        throw std::invalid_argument("synth: overlap must lie in [0, 1]");
    if (spec.weight_model == WeightModel::Lognormal && !(spec.sigma >= 0.0))
        throw std::invalid_argument("synth: sigma must be >= 0");
    if (spec.weight_model == WeightModel::Pareto && !(spec.alpha > 0.0 && spec.xmin > 0.0))
        throw std::invalid_argument("synth: pareto needs alpha > 0 and xmin > 0");
}

double draw_weight(const SynthSpec& spec, const CounterRng& rng, std::uint64_t year,
                   std::uint64_t layer, std::uint64_t i, std::uint64_t j) {
    const CounterRng s = rng.stream({kWeightTag, year, layer, i});
    switch (spec.weight_model) {
        case WeightModel::Lognormal:
            return std::exp(spec.mu + spec.sigma * s.normal(j));
        case WeightModel::Pareto:
            return spec.xmin * std::pow(s.uniform(j), -1.0 / spec.alpha);
        case WeightModel::Uniform:
            return s.uniform(j);
    }
    return 0.0;
}

std::string zero_padded(int code, int width) {
    std::string s = std::to_string(code);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

}  // namespace

MultiNetworkPanel generate_panel(const SynthSpec& spec) {
    validate(spec);
    const CounterRng rng(spec.seed);
    const auto n = static_cast<Eigen::Index>(spec.n_nodes);

    MultiNetworkPanel panel;
    for (int i = 0; i < spec.n_nodes; ++i) panel.nodes.ids.push_back("N" + zero_padded(i, 3));
    panel.nodes.labels = panel.nodes.ids;
    for (int c = 0; c < spec.n_layers; ++c) {
        panel.layers.codes.push_back(zero_padded(c + 1, 2));
        panel.layers.descriptions.push_back("synthetic layer " + zero_padded(c + 1, 2));
    }
    for (int t = 0; t < spec.n_years; ++t) panel.years.push_back(spec.first_year + t);

    panel.raw.resize(static_cast<std::size_t>(spec.n_years));
    panel.normalized.resize(static_cast<std::size_t>(spec.n_years));
    panel.aggregate_raw.resize(static_cast<std::size_t>(spec.n_years));
    panel.aggregate_normalized.resize(static_cast<std::size_t>(spec.n_years));

    for (int t = 0; t < spec.n_years; ++t) {
        const auto yt = static_cast<std::uint64_t>(t);
        auto& yearly = panel.raw[static_cast<std::size_t>(t)];
        yearly.resize(static_cast<std::size_t>(spec.n_layers));
        BoolMatrix prev;
        for (int c = 0; c < spec.n_layers; ++c) {
            const auto ct = static_cast<std::uint64_t>(c);
            BoolMatrix present(n, n);
            present.setConstant(false);
            for (Eigen::Index i = 0; i < n; ++i) {
                const CounterRng edge = rng.stream({kEdgeTag, yt, ct, static_cast<std::uint64_t>(i)});
                const CounterRng reuse =
                    rng.stream({kReuseTag, yt, ct, static_cast<std::uint64_t>(i)});
                for (Eigen::Index j = 0; j < n; ++j) {
                    if (i == j) continue;
                    const auto jc = static_cast<std::uint64_t>(j);
                    bool on;
                    if (c > 0 && reuse.uniform(jc) < spec.interlayer_overlap)
                        on = prev(i, j);
                    else
                        on = edge.uniform(jc) < spec.density;
                    present(i, j) = on;
                }
            }
            LayerWeightMatrix& layer = yearly[static_cast<std::size_t>(c)];
            layer.w = Eigen::MatrixXd::Zero(n, n);
            layer.year = panel.years[static_cast<std::size_t>(t)];
            layer.layer = panel.layers.codes[static_cast<std::size_t>(c)];
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j)
                    if (present(i, j))
                        layer.w(i, j) = draw_weight(spec, rng, yt, ct,
                                                    static_cast<std::uint64_t>(i),
                                                    static_cast<std::uint64_t>(j));
            prev = std::move(present);
        }

        auto& norm = panel.normalized[static_cast<std::size_t>(t)];
        norm.resize(static_cast<std::size_t>(spec.n_layers));
        for (int c = 0; c < spec.n_layers; ++c) {
            const auto& raw = yearly[static_cast<std::size_t>(c)];
            norm[static_cast<std::size_t>(c)] = raw.empty() ? raw : normalize_layer(raw);
        }
        panel.aggregate_raw[static_cast<std::size_t>(t)] = aggregate_layers(yearly);
        panel.aggregate_normalized[static_cast<std::size_t>(t)] =
            panel.aggregate_raw[static_cast<std::size_t>(t)].empty()
                ? panel.aggregate_raw[static_cast<std::size_t>(t)]
                : normalize_layer(panel.aggregate_raw[static_cast<std::size_t>(t)]);
    }
    return panel;
}

std::vector<EdgeRecord> generate_records(const SynthSpec& spec) {
    const MultiNetworkPanel panel = generate_panel(spec);
    std::vector<EdgeRecord> records;
    for (std::size_t t = 0; t < panel.n_years(); ++t) {
        for (std::size_t c = 0; c < panel.n_layers(); ++c) {
            const auto& layer = panel.raw[t][c];
            for (Eigen::Index i = 0; i < layer.n(); ++i)
                for (Eigen::Index j = 0; j < layer.n(); ++j)
                    if (layer.w(i, j) > 0.0)
                        records.push_back({panel.years[t], layer.layer,
                                           panel.nodes.ids[static_cast<std::size_t>(i)],
                                           panel.nodes.ids[static_cast<std::size_t>(j)],
                                           layer.w(i, j)});
        }
    }
    return records;
}

}  // namespace multinet
