#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace multinet {

// Counter-based generator: every variate is a pure function of (key, counter),
// so any single draw is reproducible in isolation and generation order never
// matters. Mixing is splitmix64 (Steele et al., "Fast splittable PRNGs").

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(splitmix64(seed)) {}

    // Derive a sub-stream; used to key draws by (year, layer, i, j)-style tuples.
    CounterRng stream(std::initializer_list<std::uint64_t> words) const noexcept {
        std::uint64_t k = key_;
        for (std::uint64_t w : words) k = splitmix64(k ^ splitmix64(w));
        CounterRng r(0);
        r.key_ = k;
        return r;
    }

    std::uint64_t bits(std::uint64_t counter) const noexcept {
        return splitmix64(key_ ^ splitmix64(counter + 0x632be59bd9b4e019ULL));
    }

    // Uniform on the open interval (0, 1); never returns an exact endpoint.
    double uniform(std::uint64_t counter) const noexcept {
        return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via inverse CDF.
    double normal(std::uint64_t counter) const noexcept;

private:
    std::uint64_t key_;
};

// Inverse of the standard normal CDF. Acklam's rational approximation
// polished with one Halley step against erfc, accurate to ~1e-15.
double normal_quantile(double p) noexcept;

// Standard normal CDF, |error| < 1e-15 (erfc based).
inline double normal_cdf(double z) noexcept {
    return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

inline double CounterRng::normal(std::uint64_t counter) const noexcept {
    return normal_quantile(uniform(counter));
}

}  // namespace multinet
