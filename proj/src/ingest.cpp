#include "multinet/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "multinet/io.hpp"
#include "multinet/numeric.hpp"

namespace multinet {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            fields.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        fields.push_back(trim(std::string_view(line).substr(start, pos - start)));
        start = pos + 1;
    }
    return fields;
}

int parse_int(const std::string& s, std::size_t line, const char* column) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(line, column, "not an integer: '" + s + "'");
    return v;
}

double parse_value(const std::string& s, std::size_t line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(line, "value", "not a number: '" + s + "'");
    if (!std::isfinite(v)) throw ValidationError(line, "value", "non-finite value");
    if (v < 0.0) throw ValidationError(line, "value", "negative value: '" + s + "'");
    return v;
}

struct Header {
    char delim = ',';
    // positions of year, layer, exporter, importer, value
    std::array<std::size_t, 5> col{};
};

Header parse_header(const std::string& line) {
    Header h;
    h.delim = line.find('\t') != std::string::npos ? '\t' : ',';
    const auto names = split(line, h.delim);
    static const std::array<const char*, 5> wanted = {"year", "layer", "exporter", "importer",
                                                      "value"};
    for (std::size_t k = 0; k < wanted.size(); ++k) {
        bool found = false;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (lower(names[i]) == wanted[k]) {
                h.col[k] = i;
                found = true;
                break;
            }
        }
        if (!found) throw ParseError(1, wanted[k], "missing required column");
    }
    return h;
}

}  // namespace

std::vector<EdgeRecord> parse_records(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "", "empty input");
    const Header h = parse_header(line);

    std::vector<EdgeRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split(line, h.delim);
        const std::size_t need = *std::max_element(h.col.begin(), h.col.end()) + 1;
        if (fields.size() < need)
            throw ParseError(lineno, "",
                             "expected at least " + std::to_string(need) + " fields, got " +
                                 std::to_string(fields.size()));
        EdgeRecord r;
        r.year = parse_int(fields[h.col[0]], lineno, "year");
        r.layer = fields[h.col[1]];
        r.exporter = fields[h.col[2]];
        r.importer = fields[h.col[3]];
        r.value = parse_value(fields[h.col[4]], lineno);
        if (r.layer.empty()) throw ParseError(lineno, "layer", "empty layer code");
        if (r.exporter.empty()) throw ParseError(lineno, "exporter", "empty node id");
        if (r.importer.empty()) throw ParseError(lineno, "importer", "empty node id");
        if (r.exporter == r.importer)
            throw ValidationError(lineno, "importer", "self-flow " + r.exporter + " -> " +
                                                          r.importer + " is not allowed");
        records.push_back(std::move(r));
    }
    return records;
}

void write_records_csv(std::ostream& out, std::span<const EdgeRecord> records) {
    out << "year,layer,exporter,importer,value\n";
    for (const auto& r : records) {
        out << r.year << ',' << r.layer << ',' << r.exporter << ',' << r.importer << ','
            << format_double(r.value) << '\n';
    }
}

std::unordered_map<std::string, std::string> parse_groups(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "", "empty groups file");
    const char delim = line.find('\t') != std::string::npos ? '\t' : ',';
    const auto names = split(line, delim);
    std::size_t node_col = names.size(), group_col = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string n = lower(names[i]);
        if (n == "node") node_col = i;
        if (n == "group") group_col = i;
    }
    if (node_col == names.size()) throw ParseError(1, "node", "missing required column");
    if (group_col == names.size()) throw ParseError(1, "group", "missing required column");

    std::unordered_map<std::string, std::string> groups;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto fields = split(line, delim);
        if (fields.size() <= std::max(node_col, group_col))
            throw ParseError(lineno, "", "too few fields");
        groups[fields[node_col]] = fields[group_col];
    }
    return groups;
}

std::string BalanceReport::to_text() const {
    std::ostringstream os;
    os << "observed nodes: " << observed_nodes << "\n";
    os << "kept nodes: " << kept_nodes << "\n";
    os << "dropped nodes: " << dropped.size() << "\n";
    for (const auto& [id, years] : dropped) {
        os << "  " << id << " (present in";
        for (int y : years) os << ' ' << y;
        os << ")\n";
    }
    os << "dropped records: " << dropped_records << "\n";
    return os.str();
}

MultiNetworkPanel build_panel(std::span<const EdgeRecord> records, const IngestConfig& config,
                              BalanceReport* report) {
    std::vector<const EdgeRecord*> kept;
    kept.reserve(records.size());
    for (const auto& r : records)
        if (r.year >= config.year_min && r.year <= config.year_max) kept.push_back(&r);
    if (kept.empty()) throw IngestError("no records after year filtering");

    std::set<int> year_set;
    std::set<std::string> layer_set;
    std::map<std::string, std::set<int>> node_years;
    for (const auto* r : kept) {
        year_set.insert(r->year);
        layer_set.insert(r->layer);
        node_years[r->exporter].insert(r->year);
        node_years[r->importer].insert(r->year);
    }

    MultiNetworkPanel panel;
    panel.years.assign(year_set.begin(), year_set.end());
    panel.layers.codes.assign(layer_set.begin(), layer_set.end());
    panel.layers.descriptions.assign(panel.layers.codes.begin(), panel.layers.codes.end());

    BalanceReport rep;
    rep.observed_nodes = node_years.size();
    for (const auto& [id, yrs] : node_years) {
        if (!config.balance_panel || yrs.size() == panel.years.size()) {
            panel.nodes.ids.push_back(id);
        } else {
            rep.dropped.emplace(id, std::vector<int>(yrs.begin(), yrs.end()));
        }
    }
    rep.kept_nodes = panel.nodes.ids.size();
    panel.nodes.labels = panel.nodes.ids;

    const auto n = static_cast<Eigen::Index>(panel.nodes.size());
    const std::size_t T = panel.n_years();
    const std::size_t C = panel.n_layers();

    panel.raw.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        panel.raw[t].resize(C);
        for (std::size_t c = 0; c < C; ++c) {
            panel.raw[t][c].w = Eigen::MatrixXd::Zero(n, n);
            panel.raw[t][c].year = panel.years[t];
            panel.raw[t][c].layer = panel.layers.codes[c];
        }
    }

    // Fill in input order so DuplicatePolicy::Last keeps the final record.
    std::set<std::tuple<std::size_t, std::size_t, Eigen::Index, Eigen::Index>> seen;
    std::vector<std::string> collisions;
    for (const auto* r : kept) {
        auto i = panel.nodes.index_of(r->exporter);
        auto j = panel.nodes.index_of(r->importer);
        if (!i || !j) {
            ++rep.dropped_records;
            continue;
        }
        const std::size_t t = *panel.year_index(r->year);
        const std::size_t c = *panel.layers.index_of(r->layer);
        auto& cell = panel.raw[t][c].w(static_cast<Eigen::Index>(*i),
                                       static_cast<Eigen::Index>(*j));
        const bool dup = !seen.emplace(t, c, static_cast<Eigen::Index>(*i),
                                       static_cast<Eigen::Index>(*j)).second;
        switch (config.duplicates) {
            case DuplicatePolicy::Sum:
                cell += r->value;
                break;
            case DuplicatePolicy::Last:
                cell = r->value;
                break;
            case DuplicatePolicy::Error:
                if (dup)
                    collisions.push_back(std::to_string(r->year) + "/" + r->layer + "/" +
                                         r->exporter + "->" + r->importer);
                else
                    cell = r->value;
                break;
        }
    }
    if (!collisions.empty()) {
        std::sort(collisions.begin(), collisions.end());
        collisions.erase(std::unique(collisions.begin(), collisions.end()), collisions.end());
        std::string msg = "duplicate records:";
        for (const auto& k : collisions) msg += " " + k;
        throw ConflictError(msg, std::move(collisions));
    }

    panel.normalized.resize(T);
    panel.aggregate_raw.resize(T);
    panel.aggregate_normalized.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        panel.normalized[t].resize(C);
        for (std::size_t c = 0; c < C; ++c) {
            const auto& raw = panel.raw[t][c];
            // Empty layers stay as flagged zero matrices so C is stable.
            panel.normalized[t][c] = raw.empty() ? raw : normalize_layer(raw);
        }
        panel.aggregate_raw[t] = aggregate_layers(panel.raw[t]);
        panel.aggregate_normalized[t] = panel.aggregate_raw[t].empty()
                                            ? panel.aggregate_raw[t]
                                            : normalize_layer(panel.aggregate_raw[t]);
    }

    if (report) *report = std::move(rep);
    return panel;
}

LayerSummary layer_summary(const MultiNetworkPanel& panel, int year) {
    const auto t = panel.year_index(year);
    if (!t) throw std::invalid_argument("year " + std::to_string(year) + " not in panel");

    LayerSummary summary;
    const double aggregate_total = panel.aggregate_raw[*t].total();
    std::vector<double> log_totals, densities;
    for (std::size_t c = 0; c < panel.n_layers(); ++c) {
        const auto& raw = panel.raw[*t][c];
        LayerSummaryRow row;
        row.layer_code = raw.layer;
        row.total_value = raw.total();
        row.link_count = (raw.w.array() > 0.0).count();
        row.value_per_link =
            row.link_count > 0 ? row.total_value / static_cast<double>(row.link_count)
                               : kUndefined;
        row.share = aggregate_total > 0.0 ? row.total_value / aggregate_total : kUndefined;
        row.density = panel.n_nodes() >= 2 ? density(binarize(raw)) : kUndefined;
        if (row.total_value > 0.0) {
            log_totals.push_back(std::log(row.total_value));
            densities.push_back(row.density);
        }
        summary.rows.push_back(std::move(row));
    }
    std::sort(summary.rows.begin(), summary.rows.end(),
              [](const LayerSummaryRow& a, const LayerSummaryRow& b) {
                  if (a.total_value != b.total_value) return a.total_value > b.total_value;
                  return a.layer_code < b.layer_code;
              });
    summary.log_value_density_corr = pearson(log_totals, densities);
    return summary;
}

void write_layer_summary_csv(std::ostream& out, const LayerSummary& summary) {
    out << "layer_code,total_value,link_count,value_per_link,share\n";
    for (const auto& r : summary.rows) {
        out << r.layer_code << ',' << format_double(r.total_value) << ',' << r.link_count << ','
            << format_cell(r.value_per_link) << ',' << format_cell(r.share) << '\n';
    }
}

}  // namespace multinet
