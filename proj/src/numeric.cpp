#include "multinet/numeric.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

namespace multinet {

double compensated_sum(std::span<const double> xs) noexcept {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

Moments sample_moments(std::span<const double> xs) noexcept {
    std::vector<double> vals;
    vals.reserve(xs.size());
    for (double x : xs)
        if (is_defined(x)) vals.push_back(x);

    Moments m;
    m.n = vals.size();
    if (m.n == 0) return m;
    m.mean = compensated_sum(vals) / static_cast<double>(m.n);
    if (m.n < 2) return m;
    std::vector<double> sq(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        double d = vals[i] - m.mean;
        sq[i] = d * d;
    }
    m.sd = std::sqrt(compensated_sum(sq) / static_cast<double>(m.n - 1));
    return m;
}

double pearson(std::span<const double> x, std::span<const double> y) noexcept {
    const std::size_t n = std::min(x.size(), y.size());
    std::vector<double> xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_defined(x[i]) && is_defined(y[i])) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    }
    const std::size_t k = xs.size();
    if (k < 2) return kUndefined;

    const double mx = compensated_sum(xs) / static_cast<double>(k);
    const double my = compensated_sum(ys) / static_cast<double>(k);
    std::vector<double> xy(k), xx(k), yy(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        xy[i] = dx * dy;
        xx[i] = dx * dx;
        yy[i] = dy * dy;
    }
    const double sxx = compensated_sum(xx);
    const double syy = compensated_sum(yy);
    if (sxx <= 0.0 || syy <= 0.0) return kUndefined;
    double r = compensated_sum(xy) / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

std::vector<double> midranks(std::span<const double> xs) {
    std::vector<double> out(xs.size(), kUndefined);
    std::vector<std::size_t> idx;
    idx.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (is_defined(xs[i])) idx.push_back(i);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) out[idx[t]] = rank;
        i = j + 1;
    }
    return out;
}

std::vector<std::pair<int, int>> layer_pairs(int n_layers) {
    std::vector<std::pair<int, int>> pairs;
    if (n_layers < 2) return pairs;
    pairs.reserve(static_cast<std::size_t>(n_layers) * (n_layers - 1) / 2);
    for (int c = 0; c < n_layers; ++c)
        for (int d = c + 1; d < n_layers; ++d) pairs.emplace_back(c, d);
    return pairs;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(n));
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += t) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace multinet
