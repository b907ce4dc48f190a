#pragma once

#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "multinet/core.hpp"

namespace multinet {

// One raw directed flow: exporter -> importer, value in current currency units.
struct EdgeRecord {
    int year = 0;
    std::string layer;
    std::string exporter;
    std::string importer;
    double value = 0.0;

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

enum class DuplicatePolicy { Sum, Last, Error };

struct IngestConfig {
    int year_min = std::numeric_limits<int>::min();
    int year_max = std::numeric_limits<int>::max();
    bool balance_panel = true;
    DuplicatePolicy duplicates = DuplicatePolicy::Sum;
};

// Dropped nodes and records from panel balancing.
struct BalanceReport {
    std::size_t observed_nodes = 0;
    std::size_t kept_nodes = 0;
    // node id -> years it was observed in (nodes missing from some year).
    std::map<std::string, std::vector<int>> dropped;
    std::size_t dropped_records = 0;

    std::string to_text() const;
};

// Parses delimiter-separated text (comma or tab, auto-detected from the
// header line). Header row is required and must name the columns year,
// layer, exporter, importer, value - any order, case-insensitive.
std::vector<EdgeRecord> parse_records(std::istream& in);

void write_records_csv(std::ostream& out, std::span<const EdgeRecord> records);

// Optional node -> group map, CSV with header columns node, group.
std::unordered_map<std::string, std::string> parse_groups(std::istream& in);

MultiNetworkPanel build_panel(std::span<const EdgeRecord> records, const IngestConfig& config = {},
                              BalanceReport* report = nullptr);

struct LayerSummaryRow {
    std::string layer_code;
    double total_value = 0.0;
    long link_count = 0;
    double value_per_link = 0.0;  // NaN when link_count == 0
    double share = 0.0;           // of aggregate total
    double density = 0.0;
};

struct LayerSummary {
    std::vector<LayerSummaryRow> rows;  // sorted by total_value descending
    // Pearson correlation of log total value vs density across non-empty layers.
    double log_value_density_corr = 0.0;
};

LayerSummary layer_summary(const MultiNetworkPanel& panel, int year);

void write_layer_summary_csv(std::ostream& out, const LayerSummary& summary);

}  // namespace multinet
