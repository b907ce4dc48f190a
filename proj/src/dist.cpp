#include "multinet/dist.hpp"

#include <algorithm>
#include <cmath>

#include "multinet/rng.hpp"

namespace multinet {

std::vector<double> positive_log_weights(const LayerWeightMatrix& layer) {
    std::vector<double> logs = positive_weights(layer);
    if (logs.empty()) throw EmptyLayerError(layer.year, layer.layer);
    for (double& v : logs) v = std::log(v);
    std::sort(logs.begin(), logs.end());
    return logs;
}

double kolmogorov_sf(double lambda) noexcept {
    // Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2), truncated when
    // terms drop below 1e-12. Below lambda = 0.2 the value is 1 to >= 1e-30.
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 10000; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double ks_asymptotic_p(double d, double effective_n) {
    const double rootn = std::sqrt(effective_n);
    const double lambda = (rootn + 0.12 + 0.11 / rootn) * d;
    return kolmogorov_sf(lambda);
}

double ks_normal_statistic(std::span<const double> sorted, double mu, double sigma) {
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double phi = normal_cdf((sorted[i] - mu) / sigma);
        const double below = static_cast<double>(i) / n;        // F(x-)
        const double at = static_cast<double>(j + 1) / n;       // F(x)
        d = std::max({d, std::abs(below - phi), std::abs(at - phi)});
        i = j + 1;
    }
    return d;
}

}  // namespace

TestResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());

    const auto n = static_cast<double>(x.size());
    const auto m = static_cast<double>(y.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        double v;
        if (i < x.size() && j < y.size())
            v = std::min(x[i], y[j]);
        else
            v = i < x.size() ? x[i] : y[j];
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }

    TestResult r;
    r.method = TestMethod::Ks2;
    r.n = x.size();
    r.m = y.size();
    r.statistic = d;
    r.p_value = ks_asymptotic_p(d, n * m / (n + m));
    return r;
}

TestResult ks_one_sample_normal(std::span<const double> sample, double mu, double sigma) {
    if (sample.size() < 2) throw std::invalid_argument("ks_one_sample_normal: need n >= 2");
    if (!(sigma > 0.0)) throw std::invalid_argument("ks_one_sample_normal: sigma must be > 0");
    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());

    TestResult r;
    r.method = TestMethod::Ks1Normal;
    r.n = x.size();
    r.statistic = ks_normal_statistic(x, mu, sigma);
    r.p_value = ks_asymptotic_p(r.statistic, static_cast<double>(x.size()));
    return r;
}

TestResult lilliefors(std::span<const double> sample, std::size_t mc_reps, std::uint64_t seed) {
    if (sample.size() < 4) throw std::invalid_argument("lilliefors: need n >= 4");
    if (mc_reps < 1) throw std::invalid_argument("lilliefors: need mc_reps >= 1");
    const Moments m = sample_moments(sample);
    if (!(m.sd > 0.0)) throw std::invalid_argument("lilliefors: zero sample variance");

    std::vector<double> x(sample.begin(), sample.end());
    std::sort(x.begin(), x.end());
    const double observed = ks_normal_statistic(x, m.mean, m.sd);

    const std::size_t n = x.size();
    const CounterRng rng(seed);
    std::vector<double> sim(n);
    std::size_t exceed = 0;
    for (std::size_t rep = 0; rep < mc_reps; ++rep) {
        const CounterRng stream = rng.stream({0x4c696c6cULL, rep});
        for (std::size_t i = 0; i < n; ++i) sim[i] = stream.normal(i);
        const Moments sm = sample_moments(sim);
        std::sort(sim.begin(), sim.end());
        if (ks_normal_statistic(sim, sm.mean, sm.sd) >= observed) ++exceed;
    }

    TestResult r;
    r.method = TestMethod::Lilliefors;
    r.n = n;
    r.statistic = observed;
    r.p_value = static_cast<double>(exceed) / static_cast<double>(mc_reps);
    r.mc_seed = seed;
    r.mc_reps = mc_reps;
    return r;
}

LognormalityReport lognormality_report(const MultiNetworkPanel& panel, int year,
                                       std::size_t mc_reps, std::uint64_t seed,
                                       unsigned threads) {
    const auto t = panel.year_index(year);
    if (!t) throw std::invalid_argument("year " + std::to_string(year) + " not in panel");

    LognormalityReport rep;
    std::vector<std::vector<double>> samples;
    for (std::size_t c = 0; c < panel.n_layers(); ++c) {
        const auto& norm = panel.normalized[*t][c];
        if (norm.empty()) {
            rep.skipped_layers.push_back(norm.layer);
            continue;
        }
        rep.codes.push_back(norm.layer);
        samples.push_back(positive_log_weights(norm));
    }

    const auto C = static_cast<int>(rep.codes.size());
    rep.pair_pvalues.setConstant(C, C, kUndefined);
    const auto pairs = layer_pairs(C);
    std::vector<double> pair_p(pairs.size(), kUndefined);
    parallel_for(pairs.size(), threads, [&](std::size_t k) {
        const auto [c, d] = pairs[k];
        pair_p[k] = ks_two_sample(samples[static_cast<std::size_t>(c)],
                                  samples[static_cast<std::size_t>(d)]).p_value;
    });
    std::size_t similar = 0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        rep.pair_pvalues(pairs[k].first, pairs[k].second) = pair_p[k];
        if (pair_p[k] > 0.05) ++similar;
    }
    if (!pairs.empty())
        rep.frac_pairs_similar = static_cast<double>(similar) / static_cast<double>(pairs.size());

    rep.layer_tests.resize(rep.codes.size());
    parallel_for(rep.codes.size(), threads, [&](std::size_t c) {
        LayerTestRow row;
        row.layer = rep.codes[c];
        row.n = samples[c].size();
        const Moments m = sample_moments(samples[c]);
        if (samples[c].size() >= 4 && m.sd > 0.0) {
            // Seed derived per layer so concurrent and sequential runs agree.
            const TestResult lil = lilliefors(samples[c], mc_reps,
                                              splitmix64(seed ^ splitmix64(c + 1)));
            row.d_lilliefors = lil.statistic;
            row.p_lilliefors = lil.p_value;
        }
        if (samples[c].size() >= 2 && m.sd > 0.0) {
            const TestResult ks = ks_one_sample_normal(samples[c], m.mean, m.sd);
            row.d_ks = ks.statistic;
            row.p_ks = ks.p_value;
        }
        rep.layer_tests[c] = std::move(row);
    });

    std::size_t testable = 0, rejected = 0;
    for (const auto& row : rep.layer_tests) {
        if (!is_defined(row.p_lilliefors)) continue;
        ++testable;
        if (row.p_lilliefors < 0.05) ++rejected;  // strict rejection at 5%
    }
    if (testable > 0)
        rep.frac_layers_reject_lognormal =
            static_cast<double>(rejected) / static_cast<double>(testable);
    return rep;
}

std::vector<HistBin> log_weight_histogram(const LayerWeightMatrix& layer, int bins) {
    if (bins < 1) throw std::invalid_argument("log_weight_histogram: need bins >= 1");
    const std::vector<double> logs = positive_log_weights(layer);
    const double lo = logs.front();
    const double hi = logs.back();
    std::vector<HistBin> out;
    if (lo == hi) {
        out.push_back({lo, hi, static_cast<long>(logs.size())});
        return out;
    }
    const double width = (hi - lo) / bins;
    out.resize(static_cast<std::size_t>(bins));
    for (int b = 0; b < bins; ++b) {
        out[static_cast<std::size_t>(b)].left = lo + b * width;
        out[static_cast<std::size_t>(b)].right = b + 1 == bins ? hi : lo + (b + 1) * width;
    }
    for (double v : logs) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        if (b >= out.size()) b = out.size() - 1;
        ++out[b].count;
    }
    return out;
}

}  // namespace multinet
