#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "multinet/core.hpp"
#include "multinet/numeric.hpp"

namespace multinet {

enum class TestMethod { Ks2, Ks1Normal, Lilliefors };

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    TestMethod method = TestMethod::Ks2;
    std::size_t n = 0;
    std::size_t m = 0;               // second sample size (two-sample only)
    std::uint64_t mc_seed = 0;       // Monte Carlo p-values only
    std::size_t mc_reps = 0;

    friend bool operator==(const TestResult&, const TestResult&) = default;
};

inline constexpr std::uint64_t kLillieforsSeed = 20030101;
inline constexpr std::size_t kLillieforsReps = 10000;

// Natural logs of the strictly positive off-diagonal weights, ascending.
std::vector<double> positive_log_weights(const LayerWeightMatrix& layer);

// Two-sample Kolmogorov-Smirnov: exact sup ECDF gap via a merge over the
// union of sample points; asymptotic p-value with the usual small-sample
// correction on the effective size.
TestResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// One-sample KS against Normal(mu, sigma); both one-sided gaps at each point.
TestResult ks_one_sample_normal(std::span<const double> sample, double mu, double sigma);

// Lilliefors normality test: KS statistic against the sample-estimated
// normal, p-value by seeded Monte Carlo with parameters re-estimated in
// every replicate.
TestResult lilliefors(std::span<const double> sample, std::size_t mc_reps = kLillieforsReps,
                      std::uint64_t seed = kLillieforsSeed);

// Survival function of the Kolmogorov distribution at lambda.
double kolmogorov_sf(double lambda) noexcept;

struct LayerTestRow {
    std::string layer;
    std::size_t n = 0;
    double d_lilliefors = kUndefined;
    double p_lilliefors = kUndefined;
    double d_ks = kUndefined;
    double p_ks = kUndefined;
};

struct LognormalityReport {
    std::vector<std::string> codes;  // layers with positive weights, panel order
    Eigen::MatrixXd pair_pvalues;    // upper triangle; NaN elsewhere
    std::vector<LayerTestRow> layer_tests;
    double frac_pairs_similar = kUndefined;      // two-sample p > 0.05
    double frac_layers_reject_lognormal = kUndefined;  // Lilliefors p < 0.05
    std::vector<std::string> skipped_layers;     // empty layers
};

LognormalityReport lognormality_report(const MultiNetworkPanel& panel, int year,
                                       std::size_t mc_reps = kLillieforsReps,
                                       std::uint64_t seed = kLillieforsSeed,
                                       unsigned threads = 1);

struct HistBin {
    double left = 0.0;
    double right = 0.0;
    long count = 0;
};

// Equal-width bins over the log-weight range; degenerate ranges collapse to
// a single bin.
std::vector<HistBin> log_weight_histogram(const LayerWeightMatrix& layer, int bins);

}  // namespace multinet
