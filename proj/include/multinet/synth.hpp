#pragma once

#include <cstdint>
#include <vector>

#include "multinet/core.hpp"
#include "multinet/ingest.hpp"

namespace multinet {

enum class WeightModel { Lognormal, Pareto, Uniform };

// Seeded synthetic multi-network panel: the desk-scale stand-in for real
// trade data in tests, demos and CI.
struct SynthSpec {
    std::uint64_t seed = 1;
    int n_nodes = 20;
    int n_layers = 4;
    int n_years = 1;
    int first_year = 2000;
    double density = 0.2;      // per-layer link probability, in (0, 1]
    WeightModel weight_model = WeightModel::Lognormal;
    double mu = 0.0;           // lognormal location
    double sigma = 1.0;        // lognormal scale
    double alpha = 2.0;        // pareto tail index
    double xmin = 1.0;         // pareto lower bound
    // Probability that layer c+1 reuses an edge slot of layer c instead of
    // redrawing it; tunes the unweighted inter-layer correlation.
    double interlayer_overlap = 0.0;
};

// Fully determined by the SynthSpec: every edge indicator and weight is a
// pure function of (seed, year, layer, i, j).
MultiNetworkPanel generate_panel(const SynthSpec& spec);

// The same panel as a flat record list in the ingestion CSV schema.
std::vector<EdgeRecord> generate_records(const SynthSpec& spec);

}  // namespace multinet
