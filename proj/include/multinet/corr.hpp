#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "multinet/core.hpp"
#include "multinet/numeric.hpp"

namespace multinet {

enum class CorrKind { PhiW, PhiU, CrossStat };
enum class CorrMode { ProductMoment, Rank };

// C x C symmetric correlation matrix with unit diagonal. Degenerate entries
// (zero variance on either side) are NaN.
struct LayerCorrelationMatrix {
    Eigen::MatrixXd phi;
    CorrKind kind = CorrKind::PhiW;
    std::string statistic;  // CrossStat only
    int year = 0;
    std::vector<std::string> codes;
};

struct LayerDistanceMatrix {
    Eigen::MatrixXd d;
    bool weighted = true;
    int year = 0;
    std::vector<std::string> codes;
};

struct EvolutionSeries {
    std::vector<int> years;
    std::vector<double> phi_w, phi_u, d_w, d_u;
};

// Pearson correlation between two per-node statistics, complete-case over
// nodes where both are defined. Rank mode applies the same formula to
// midranks (Spearman).
double within_layer_corr(std::span<const double> x, std::span<const double> y,
                         CorrMode mode = CorrMode::ProductMoment);

// The named statistic pairs of the within-layer correlation table.
struct WithinCorrPair {
    const char* x;
    const char* y;
};
const std::array<WithinCorrPair, 11>& within_corr_pairs();

struct WithinCorrRow {
    std::string layer;
    std::array<double, 11> coefficients{};
};

// One row per layer plus the aggregate; empty layers yield all-NaN rows.
std::vector<WithinCorrRow> within_corr_table(const MultiNetworkPanel& panel, int year,
                                             CorrMode mode = CorrMode::ProductMoment);

// Correlation of one statistic across layer pairs, over nodes defined in both.
LayerCorrelationMatrix cross_layer_stat_corr(const MultiNetworkPanel& panel, int year,
                                             const std::string& statistic,
                                             CorrMode mode = CorrMode::ProductMoment,
                                             unsigned threads = 1);

// Edge-weight correlation between two layers over all N(N-1) directed pairs.
double phi_weighted(const Eigen::MatrixXd& wa, const Eigen::MatrixXd& wb);

// Edge-indicator correlation (the phi coefficient of the two link patterns).
double phi_unweighted(const BoolMatrix& aa, const BoolMatrix& ab);

LayerCorrelationMatrix interlayer_corr_weighted(const MultiNetworkPanel& panel, int year,
                                                unsigned threads = 1);
LayerCorrelationMatrix interlayer_corr_unweighted(const MultiNetworkPanel& panel, int year,
                                                  unsigned threads = 1);

// d = sqrt((1 - phi) / 2), entrywise; NaN propagates.
LayerDistanceMatrix corr_to_distance(const LayerCorrelationMatrix& corr);

// Mean over the defined off-diagonal upper-triangle entries.
double average_interlayer(const Eigen::MatrixXd& matrix);

EvolutionSeries evolution_series(const MultiNetworkPanel& panel, unsigned threads = 1);

}  // namespace multinet
