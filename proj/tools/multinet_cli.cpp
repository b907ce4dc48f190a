// multinet: batch analytics over commodity-layered trade networks.
// File-in/file-out; every output is byte-stable for fixed inputs and flags.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "multinet/connectivity.hpp"
#include "multinet/corr.hpp"
#include "multinet/dist.hpp"
#include "multinet/ingest.hpp"
#include "multinet/io.hpp"
#include "multinet/stats.hpp"
#include "multinet/synth.hpp"
#include "multinet/taxonomy.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace multinet;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
    std::string input;
    std::string out_dir;
    int year = 0;
    std::string layers = "all,aggregate";
    std::string groups_file;
    int year_min = std::numeric_limits<int>::min();
    int year_max = std::numeric_limits<int>::max();
    bool no_balance = false;
    std::string duplicates = "sum";
    unsigned threads = 1;

    std::map<std::string, std::string> recorded;  // resolved options for the manifest
    std::vector<std::string> inputs_used;
    std::vector<std::string> outputs;
};

void record(CommonOpts& opts, const std::string& key, const std::string& value) {
    opts.recorded[key] = value;
}

std::ofstream open_output(CommonOpts& opts, const std::string& name) {
    fs::create_directories(opts.out_dir);
    const fs::path path = fs::path(opts.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    opts.outputs.push_back(name);
    return out;
}

IngestConfig ingest_config(const CommonOpts& opts) {
    IngestConfig config;
    config.year_min = opts.year_min;
    config.year_max = opts.year_max;
    config.balance_panel = !opts.no_balance;
    if (opts.duplicates == "sum")
        config.duplicates = DuplicatePolicy::Sum;
    else if (opts.duplicates == "last")
        config.duplicates = DuplicatePolicy::Last;
    else
        config.duplicates = DuplicatePolicy::Error;
    return config;
}

MultiNetworkPanel load_panel(CommonOpts& opts, BalanceReport* report = nullptr) {
    std::ifstream in(opts.input, std::ios::binary);
    if (!in) throw IngestError("cannot open input file " + opts.input);
    opts.inputs_used.push_back(opts.input);
    const auto records = parse_records(in);
    auto panel = build_panel(records, ingest_config(opts), report);
    if (!opts.groups_file.empty()) {
        std::ifstream gf(opts.groups_file, std::ios::binary);
        if (!gf) throw IngestError("cannot open groups file " + opts.groups_file);
        opts.inputs_used.push_back(opts.groups_file);
        panel.nodes.groups = parse_groups(gf);
    }
    return panel;
}

// Layer selector: comma list of codes, "all" (every commodity layer) and/or
// "aggregate". Output order follows the panel catalog, aggregate last.
std::vector<std::string> select_layers(const MultiNetworkPanel& panel, const std::string& spec) {
    std::vector<std::string> out;
    bool want_all = false, want_aggregate = false;
    std::vector<std::string> named;
    std::istringstream ss(spec);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        if (token == "all")
            want_all = true;
        else if (token == "aggregate")
            want_aggregate = true;
        else {
            if (!panel.layers.index_of(token))
                throw std::invalid_argument("unknown layer code '" + token + "'");
            named.push_back(token);
        }
    }
    if (want_all)
        out = panel.layers.codes;
    else
        out = named;
    if (want_aggregate) out.push_back(kAggregateLayer);
    if (out.empty()) throw std::invalid_argument("layer selector '" + spec + "' is empty");
    return out;
}

int require_year(const CommonOpts& opts, const MultiNetworkPanel& panel) {
    if (!panel.year_index(opts.year))
        throw std::invalid_argument("year " + std::to_string(opts.year) + " not in panel");
    return opts.year;
}

std::string join_members(const std::vector<int>& members, const NodeCatalog& nodes) {
    std::string out;
    for (std::size_t k = 0; k < members.size(); ++k) {
        if (k) out += ';';
        out += nodes.ids[static_cast<std::size_t>(members[k])];
    }
    return out;
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& codes,
                      const Eigen::MatrixXd& m) {
    out << "layer";
    for (const auto& code : codes) out << ',' << code;
    out << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << codes[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << ',' << format_cell(m(i, j));
        out << '\n';
    }
}

json matrix_json(const std::string& kind, int year, const std::vector<std::string>& codes,
                 const Eigen::MatrixXd& m) {
    json values = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (is_defined(m(i, j)))
                row.push_back(m(i, j));
            else
                row.push_back(nullptr);
        }
        values.push_back(std::move(row));
    }
    return json{{"kind", kind}, {"year", year}, {"codes", codes}, {"values", values}};
}

void write_manifest(CommonOpts& opts, const std::string& command) {
    json inputs = json::array();
    std::sort(opts.inputs_used.begin(), opts.inputs_used.end());
    opts.inputs_used.erase(std::unique(opts.inputs_used.begin(), opts.inputs_used.end()),
                           opts.inputs_used.end());
    for (const auto& path : opts.inputs_used) {
        std::ifstream in(path, std::ios::binary);
        inputs.push_back(json{{"path", path}, {"fnv1a64", in ? fnv1a_hex(in) : "missing"}});
    }
    std::sort(opts.outputs.begin(), opts.outputs.end());
    json manifest{{"tool", "multinet"},
                  {"version", kVersion},
                  {"command", command},
                  {"options", opts.recorded},
                  {"inputs", inputs},
                  {"outputs", opts.outputs}};
    auto out = open_output(opts, "manifest.json");
    out << manifest.dump(2) << '\n';

    // Wall-clock stamp lives outside the manifest so reruns stay comparable.
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::ofstream stamp(fs::path(opts.out_dir) / "run_stamp.txt", std::ios::binary);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    stamp << command << ' ' << buf << '\n';
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_ingest(CommonOpts& opts) {
    BalanceReport report;
    const auto panel = load_panel(opts, &report);
    {
        auto out = open_output(opts, "balance_report.txt");
        out << report.to_text();
    }
    json empty_layers = json::array();
    for (std::size_t t = 0; t < panel.n_years(); ++t)
        for (std::size_t c = 0; c < panel.n_layers(); ++c)
            if (panel.layer_empty(t, c))
                empty_layers.push_back(
                    json{{"year", panel.years[t]}, {"layer", panel.layers.codes[c]}});
    json info{{"n_nodes", panel.n_nodes()},   {"n_layers", panel.n_layers()},
              {"n_years", panel.n_years()},   {"years", panel.years},
              {"nodes", panel.nodes.ids},     {"layers", panel.layers.codes},
              {"empty_layers", empty_layers}};
    auto out = open_output(opts, "panel_info.json");
    out << info.dump(2) << '\n';
}

void cmd_summary(CommonOpts& opts) {
    const auto panel = load_panel(opts);
    const int year = require_year(opts, panel);
    const auto summary = layer_summary(panel, year);
    {
        auto out = open_output(opts, "layer_summary_" + std::to_string(year) + ".csv");
        write_layer_summary_csv(out, summary);
    }
    json meta{{"year", year},
              {"log_value_density_corr",
               is_defined(summary.log_value_density_corr) ? json(summary.log_value_density_corr)
                                                          : json(nullptr)}};
    auto out = open_output(opts, "summary_meta_" + std::to_string(year) + ".json");
    out << meta.dump(2) << '\n';
    std::cout << "log total value vs density correlation: "
              << format_cell(summary.log_value_density_corr) << '\n';
}

void cmd_stats(CommonOpts& opts) {
    const auto panel = load_panel(opts);
    const int year = require_year(opts, panel);
    for (const auto& code : select_layers(panel, opts.layers)) {
        if (panel.normalized_matrix(year, code).empty()) {
            std::cerr << "skipping empty layer " << code << " in " << year << '\n';
            continue;
        }
        const auto table = stats_table(panel, year, code);
        auto out = open_output(opts, "stats_" + std::to_string(year) + "_" + code + ".csv");
        write_stats_csv(out, table);
    }
}

void cmd_rank(CommonOpts& opts, const std::string& stat, int k) {
    const auto panel = load_panel(opts);
    const int year = require_year(opts, panel);
    record(opts, "stat", stat);
    record(opts, "k", std::to_string(k));
    auto out = open_output(opts, "rank_" + stat + "_" + std::to_string(year) + ".csv");
    out << "layer,rank,node,value\n";
    for (const auto& code : select_layers(panel, opts.layers)) {
        if (panel.normalized_matrix(year, code).empty()) {
            std::cerr << "skipping empty layer " << code << " in " << year << '\n';
            continue;
        }
        const auto table = stats_table(panel, year, code);
        const auto top = rank_top(table, stat, static_cast<std::size_t>(k));
        for (std::size_t pos = 0; pos < top.size(); ++pos)
            out << code << ',' << pos + 1 << ',' << top[pos].first << ','
                << format_double(top[pos].second) << '\n';
    }
}

void cmd_moments(CommonOpts& opts, const std::string& stat, bool include_zeros) {
    const auto panel = load_panel(opts);
    const int year = require_year(opts, panel);
    record(opts, "stat", stat);
    if (stat == "triangle_shares") {
        auto out = open_output(opts, "triangle_shares_" + std::to_string(year) + ".csv");
        out << "layer,cyc,mid,in,out\n";
        for (const auto& code : select_layers(panel, opts.layers)) {
            const auto& m = panel.normalized_matrix(year, code);
            if (m.empty()) {
                out << code << ",,,,\n";
                continue;
            }
            const auto s = triangle_shares(m, binarize(m));
            out << code << ',' << format_cell(s.net_cyc) << ',' << format_cell(s.net_mid) << ','
                << format_cell(s.net_in) << ',' << format_cell(s.net_out) << '\n';
        }
        return;
    }
    record(opts, "include_zeros", include_zeros ? "true" : "false");
    const auto rows = moments_report(panel, year, stat, include_zeros);
    auto out = open_output(opts, "moments_" + stat + "_" + std::to_string(year) + ".csv");
    out << "layer,n,mean,sd,ratio_pct,density\n";
    for (const auto& row : rows)
        out << row.layer << ',' << row.n << ',' << format_cell(row.mean) << ','
            << format_cell(row.sd) << ',' << format_cell(row.ratio_pct) << ','
            << format_cell(row.density) << '\n';
}

void cmd_connectivity(CommonOpts& opts, const std::string& mode_name,
                      const std::vector<double>& percentiles) {
    const auto panel = load_panel(opts);
    const int year = require_year(opts, panel);
    const ConnectivityMode mode =
        mode_name == "strong" ? ConnectivityMode::Strong : ConnectivityMode::Weak;
    record(opts, "mode", mode_name);
    {
        std::string plist;
        for (double p : percentiles) plist += (plist.empty() ? "" : ",") + format_double(p);
        record(opts, "percentiles", plist);
    }

    auto out =
        open_output(opts, "lcc_profile_" + mode_name + "_" + std::to_string(year) + ".csv");
    out << "layer,percentile,largest_pct,cut_weight,links,lcc_size,members\n";
    for (const auto& code : select_layers(panel, opts.layers)) {
        const auto& m = panel.normalized_matrix(year, code);
        if (m.empty()) {
            std::cerr << "skipping empty layer " << code << " in " << year << '\n';
            continue;
        }
        // The all-links row, then one row per threshold percentile p
        // (keeping the largest (100-p)% of link weights).
        std::vector<double> largest = {100.0};
        for (double p : percentiles) {
            if (!(p > 0.0 && p < 100.0))
                throw std::invalid_argument("percentile must lie in (0, 100)");
            largest.push_back(100.0 - p);
        }
        const auto levels = lcc_profile(m, largest, mode);
        for (std::size_t j = 0; j < levels.size(); ++j) {
            const double pct = j == 0 ? 0.0 : percentiles[j - 1];
            out << code << ',' << format_double(pct) << ','
                << format_double(levels[j].largest_pct) << ','
                << format_double(levels[j].cut_weight) << ',' << levels[j].links_retained << ','
                << levels[j].lcc_size << ',' << join_members(levels[j].lcc_members, panel.nodes)
                << '\n';
        }
    }

    if (!opts.groups_file.empty()) {
        // Wide layout: one LCC-percentage column per panel year.
        for (const auto& code : select_layers(panel, opts.layers)) {
            auto gout = open_output(opts, "lcc_groups_" + mode_name + "_" + code + ".csv");
            gout << "group,n";
            for (int y : panel.years) gout << ',' << y;
            gout << '\n';
            std::map<std::string, std::pair<int, std::map<int, double>>> table;
            for (int y : panel.years) {
                const auto& m = panel.normalized_matrix(y, code);
                if (m.empty()) continue;
                for (const auto& row : lcc_by_group(binarize(m), panel.nodes, mode)) {
                    table[row.group].first = row.group_size;
                    table[row.group].second[y] = row.pct;
                }
            }
            for (const auto& [group, data] : table) {
                gout << group << ',' << data.first;
                for (int y : panel.years) {
                    auto it = data.second.find(y);
                    gout << ',' << (it == data.second.end() ? "" : format_double(it->second));
                }
                gout << '\n';
            }
        }
    }
}

void cmd_distributions(CommonOpts& opts, std::size_t mc_reps, std::uint64_t seed, int bins) {
    const auto panel = load_panel(opts);
    const int year = require_year(opts, panel);
    record(opts, "mc_reps", std::to_string(mc_reps));
    record(opts, "seed", std::to_string(seed));
    record(opts, "bins", std::to_string(bins));
    const auto rep = lognormality_report(panel, year, mc_reps, seed, opts.threads);

    {
        auto out = open_output(opts, "pair_pvalues_" + std::to_string(year) + ".csv");
        write_matrix_csv(out, rep.codes, rep.pair_pvalues);
    }
    {
        auto out = open_output(opts, "layer_tests_" + std::to_string(year) + ".csv");
        out << "layer,n,d_lilliefors,p_lilliefors,d_ks,p_ks\n";
        for (const auto& row : rep.layer_tests)
            out << row.layer << ',' << row.n << ',' << format_cell(row.d_lilliefors) << ','
                << format_cell(row.p_lilliefors) << ',' << format_cell(row.d_ks) << ','
                << format_cell(row.p_ks) << '\n';
    }
    {
        auto out = open_output(opts, "log_weight_hist_" + std::to_string(year) + ".csv");
        out << "layer,bin_left,bin_right,count\n";
        const std::size_t t = *panel.year_index(year);
        for (std::size_t c = 0; c < panel.n_layers(); ++c) {
            const auto& m = panel.normalized[t][c];
            if (m.empty()) continue;
            for (const auto& bin : log_weight_histogram(m, bins))
                out << m.layer << ',' << format_double(bin.left) << ','
                    << format_double(bin.right) << ',' << bin.count << '\n';
        }
    }
    json meta{
        {"year", year},
        {"pairs", rep.codes.size() * (rep.codes.size() - 1) / 2},
        {"frac_pairs_similar",
         is_defined(rep.frac_pairs_similar) ? json(rep.frac_pairs_similar) : json(nullptr)},
        {"frac_layers_reject_lognormal", is_defined(rep.frac_layers_reject_lognormal)
                                             ? json(rep.frac_layers_reject_lognormal)
                                             : json(nullptr)},
        {"skipped_layers", rep.skipped_layers}};
    auto out = open_output(opts, "distributions_meta_" + std::to_string(year) + ".json");
    out << meta.dump(2) << '\n';
}

void cmd_within_corr(CommonOpts& opts, const std::string& corr_mode) {
    const auto panel = load_panel(opts);
    const int year = require_year(opts, panel);
    record(opts, "corr", corr_mode);
    const CorrMode mode = corr_mode == "rank" ? CorrMode::Rank : CorrMode::ProductMoment;
    const auto rows = within_corr_table(panel, year, mode);
    auto out = open_output(opts, "within_corr_" + std::to_string(year) + ".csv");
    out << "layer";
    for (const auto& pair : within_corr_pairs()) out << ',' << pair.x << '~' << pair.y;
    out << '\n';
    for (const auto& row : rows) {
        out << row.layer;
        for (double v : row.coefficients) out << ',' << format_cell(v);
        out << '\n';
    }
}

void cmd_cross_corr(CommonOpts& opts, const std::string& stat, const std::string& corr_mode) {
    const auto panel = load_panel(opts);
    const int year = require_year(opts, panel);
    record(opts, "stat", stat);
    record(opts, "corr", corr_mode);
    const CorrMode mode = corr_mode == "rank" ? CorrMode::Rank : CorrMode::ProductMoment;
    const auto m = cross_layer_stat_corr(panel, year, stat, mode, opts.threads);
    {
        auto out = open_output(opts, "cross_corr_" + stat + "_" + std::to_string(year) + ".csv");
        write_matrix_csv(out, m.codes, m.phi);
    }
    auto out = open_output(opts, "cross_corr_" + stat + "_" + std::to_string(year) + ".json");
    out << matrix_json("cross_stat:" + stat, year, m.codes, m.phi).dump(2) << '\n';
}

LayerCorrelationMatrix layer_corr_for(const MultiNetworkPanel& panel, int year,
                                      const std::string& kind, unsigned threads) {
    return kind == "unweighted" ? interlayer_corr_unweighted(panel, year, threads)
                                : interlayer_corr_weighted(panel, year, threads);
}

void cmd_layer_corr(CommonOpts& opts, const std::string& kind) {
    const auto panel = load_panel(opts);
    const int year = require_year(opts, panel);
    record(opts, "kind", kind);
    const auto m = layer_corr_for(panel, year, kind, opts.threads);
    const auto d = corr_to_distance(m);
    {
        auto out = open_output(opts, "layer_corr_" + kind + "_" + std::to_string(year) + ".csv");
        write_matrix_csv(out, m.codes, m.phi);
    }
    {
        auto out = open_output(opts, "layer_dist_" + kind + "_" + std::to_string(year) + ".csv");
        write_matrix_csv(out, d.codes, d.d);
    }
    auto out = open_output(opts, "layer_corr_" + kind + "_" + std::to_string(year) + ".json");
    out << matrix_json(kind == "unweighted" ? "phi_u" : "phi_w", year, m.codes, m.phi).dump(2)
        << '\n';
}

void cmd_taxonomy(CommonOpts& opts, const std::string& kind) {
    const auto panel = load_panel(opts);
    const int year = require_year(opts, panel);
    record(opts, "kind", kind);
    const auto corr = layer_corr_for(panel, year, kind, opts.threads);
    const auto dist = corr_to_distance(corr);

    // Degenerate layers (no links, or zero variance) have undefined
    // distances; the dendrogram is built over the well-defined rest.
    std::vector<std::string> dropped;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index c = 0; c < dist.d.rows(); ++c) {
        bool ok = true;
        for (Eigen::Index j = 0; j < dist.d.cols(); ++j)
            if (j != c && !is_defined(dist.d(c, j))) ok = false;
        if (ok)
            keep.push_back(c);
        else
            dropped.push_back(dist.codes[static_cast<std::size_t>(c)]);
    }
    LayerDistanceMatrix pruned;
    pruned.weighted = dist.weighted;
    pruned.year = dist.year;
    pruned.d.resize(static_cast<Eigen::Index>(keep.size()),
                    static_cast<Eigen::Index>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a) {
        pruned.codes.push_back(dist.codes[static_cast<std::size_t>(keep[a])]);
        for (std::size_t b = 0; b < keep.size(); ++b)
            pruned.d(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                dist.d(keep[a], keep[b]);
    }
    if (pruned.codes.empty()) throw EmptyLayerError(year, "all layers degenerate");
    for (const auto& code : dropped)
        std::cerr << "dropping layer " << code << " with undefined distances\n";

    const auto dendro = complete_linkage(pruned);
    {
        auto out =
            open_output(opts, "taxonomy_" + kind + "_" + std::to_string(year) + ".newick");
        out << to_newick(dendro) << '\n';
    }
    {
        auto out = open_output(opts,
                               "taxonomy_merges_" + kind + "_" + std::to_string(year) + ".csv");
        out << "step,cluster_a,cluster_b,height,new_size\n";
        for (std::size_t s = 0; s < dendro.merges.size(); ++s)
            out << s << ',' << dendro.merges[s].a << ',' << dendro.merges[s].b << ','
                << format_double(dendro.merges[s].height) << ',' << dendro.merges[s].size << '\n';
    }
    json meta{{"year", year},
              {"kind", kind},
              {"leaves", dendro.leaves},
              {"dropped_layers", dropped}};
    auto out = open_output(opts, "taxonomy_" + kind + "_" + std::to_string(year) + ".json");
    out << meta.dump(2) << '\n';
}

void cmd_evolution(CommonOpts& opts) {
    const auto panel = load_panel(opts);
    const auto series = evolution_series(panel, opts.threads);
    auto out = open_output(opts, "evolution.csv");
    out << "year,phi_w,phi_u,d_w,d_u\n";
    for (std::size_t t = 0; t < series.years.size(); ++t)
        out << series.years[t] << ',' << format_cell(series.phi_w[t]) << ','
            << format_cell(series.phi_u[t]) << ',' << format_cell(series.d_w[t]) << ','
            << format_cell(series.d_u[t]) << '\n';
}

void cmd_synth(CommonOpts& opts, const SynthSpec& spec, const std::string& weight_model) {
    record(opts, "seed", std::to_string(spec.seed));
    record(opts, "nodes", std::to_string(spec.n_nodes));
    record(opts, "layers", std::to_string(spec.n_layers));
    record(opts, "years", std::to_string(spec.n_years));
    record(opts, "first_year", std::to_string(spec.first_year));
    record(opts, "density", format_double(spec.density));
    record(opts, "overlap", format_double(spec.interlayer_overlap));
    record(opts, "weight_model", weight_model);
    const auto records = generate_records(spec);
    auto out = open_output(opts, "synthetic_edges.csv");
    write_records_csv(out, records);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiplex trade-network analytics"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOpts opts;
    SynthSpec synth_spec;
    std::string stat = "ns_tot";
    std::string mode_name = "weak";
    std::string kind = "unweighted";
    std::string corr_mode = "product-moment";
    std::string weight_model = "lognormal";
    std::vector<double> percentiles = {90.0, 95.0, 99.0};
    int k = 3;
    int bins = 30;
    bool include_zeros = false;
    std::size_t mc_reps = kLillieforsReps;
    std::uint64_t seed = kLillieforsSeed;

    auto add_common = [&](CLI::App* cmd, bool needs_input, bool needs_year) {
        if (needs_input) {
            cmd->add_option("--input", opts.input, "edge-list CSV")->required();
            cmd->add_option("--year-min", opts.year_min, "first year kept");
            cmd->add_option("--year-max", opts.year_max, "last year kept");
            cmd->add_flag("--no-balance", opts.no_balance, "keep nodes missing from some years");
            cmd->add_option("--duplicates", opts.duplicates, "sum|last|error")
                ->check(CLI::IsMember({"sum", "last", "error"}));
        }
        cmd->add_option("--out", opts.out_dir, "output directory")->required();
        if (needs_year) cmd->add_option("--year", opts.year, "panel year")->required();
        cmd->add_option("--threads", opts.threads, "worker threads (output-invariant)");
        return cmd;
    };

    auto* c_ingest =
        add_common(app.add_subcommand("ingest", "parse and balance the panel"), true, false);
    auto* c_summary =
        add_common(app.add_subcommand("summary", "per-layer trade totals"), true, true);
    auto* c_stats =
        add_common(app.add_subcommand("stats", "node statistics tables"), true, true);
    c_stats->add_option("--layers", opts.layers, "codes, all, aggregate");
    auto* c_rank =
        add_common(app.add_subcommand("rank", "top-k nodes by a statistic"), true, true);
    c_rank->add_option("--layers", opts.layers, "codes, all, aggregate");
    c_rank->add_option("--stat", stat, "statistic name")->required();
    c_rank->add_option("--k", k, "list length")->check(CLI::PositiveNumber);
    auto* c_moments = add_common(
        app.add_subcommand("moments", "per-layer moments vs the aggregate"), true, true);
    c_moments->add_option("--layers", opts.layers, "codes, all, aggregate");
    c_moments->add_option("--stat", stat, "statistic name, weight, or triangle_shares")
        ->required();
    c_moments->add_flag("--include-zeros", include_zeros,
                        "average link weights over all pairs, not positive links only");
    auto* c_conn = add_common(
        app.add_subcommand("connectivity", "largest connected components"), true, true);
    c_conn->add_option("--layers", opts.layers, "codes, all, aggregate");
    c_conn->add_option("--mode", mode_name, "weak|strong")
        ->check(CLI::IsMember({"weak", "strong"}));
    c_conn->add_option("--percentiles", percentiles,
                       "threshold percentiles, e.g. 90,95,99 for largest 10/5/1%")
        ->delimiter(',');
    c_conn->add_option("--groups", opts.groups_file, "node,group CSV for group-level LCCs");
    auto* c_dist = add_common(
        app.add_subcommand("distributions", "link-weight distribution tests"), true, true);
    c_dist->add_option("--mc-reps", mc_reps, "Lilliefors Monte Carlo replicates");
    c_dist->add_option("--seed", seed, "Monte Carlo base seed");
    c_dist->add_option("--bins", bins, "histogram bins")->check(CLI::PositiveNumber);
    auto* c_within = add_common(
        app.add_subcommand("within-corr", "statistic correlations inside each layer"), true,
        true);
    c_within->add_option("--corr", corr_mode, "product-moment|rank")
        ->check(CLI::IsMember({"product-moment", "rank"}));
    auto* c_cross = add_common(
        app.add_subcommand("cross-corr", "one statistic correlated across layers"), true, true);
    c_cross->add_option("--stat", stat, "statistic name")->required();
    c_cross->add_option("--corr", corr_mode, "product-moment|rank")
        ->check(CLI::IsMember({"product-moment", "rank"}));
    auto* c_layer = add_common(
        app.add_subcommand("layer-corr", "edge-level inter-layer correlation matrix"), true,
        true);
    c_layer->add_option("--kind", kind, "weighted|unweighted")
        ->check(CLI::IsMember({"weighted", "unweighted"}));
    auto* c_tax = add_common(
        app.add_subcommand("taxonomy", "complete-linkage layer dendrogram"), true, true);
    c_tax->add_option("--kind", kind, "weighted|unweighted")
        ->check(CLI::IsMember({"weighted", "unweighted"}));
    auto* c_evo = add_common(
        app.add_subcommand("evolution", "average inter-layer correlation per year"), true,
        false);
    auto* c_synth = add_common(
        app.add_subcommand("synth", "seeded synthetic panel as CSV"), false, false);
    c_synth->add_option("--seed", synth_spec.seed, "generator seed");
    c_synth->add_option("--nodes", synth_spec.n_nodes, "node count");
    c_synth->add_option("--layers", synth_spec.n_layers, "layer count");
    c_synth->add_option("--years", synth_spec.n_years, "year count");
    c_synth->add_option("--first-year", synth_spec.first_year, "first year label");
    c_synth->add_option("--density", synth_spec.density, "per-layer link probability");
    c_synth->add_option("--overlap", synth_spec.interlayer_overlap,
                        "edge reuse probability between consecutive layers");
    c_synth->add_option("--weight-model", weight_model, "lognormal|pareto|uniform")
        ->check(CLI::IsMember({"lognormal", "pareto", "uniform"}));
    c_synth->add_option("--mu", synth_spec.mu, "lognormal location");
    c_synth->add_option("--sigma", synth_spec.sigma, "lognormal scale");
    c_synth->add_option("--alpha", synth_spec.alpha, "pareto tail index");
    c_synth->add_option("--xmin", synth_spec.xmin, "pareto lower bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();

    // The output directory is not recorded: it never affects file content.
    record(opts, "input", opts.input);
    if (sub->get_option_no_throw("--year")) record(opts, "year", std::to_string(opts.year));
    if (command != "synth" && sub->get_option_no_throw("--layers"))
        record(opts, "layers", opts.layers);
    // Thread count is execution detail, not content-affecting config, so it
    // stays out of the manifest and reruns at any width compare byte-equal.
    if (opts.no_balance) record(opts, "balance", "off");
    if (!opts.groups_file.empty()) record(opts, "groups", opts.groups_file);
    if (opts.duplicates != "sum") record(opts, "duplicates", opts.duplicates);

    try {
        if (sub == c_ingest)
            cmd_ingest(opts);
        else if (sub == c_summary)
            cmd_summary(opts);
        else if (sub == c_stats)
            cmd_stats(opts);
        else if (sub == c_rank)
            cmd_rank(opts, stat, k);
        else if (sub == c_moments)
            cmd_moments(opts, stat, include_zeros);
        else if (sub == c_conn)
            cmd_connectivity(opts, mode_name, percentiles);
        else if (sub == c_dist)
            cmd_distributions(opts, mc_reps, seed, bins);
        else if (sub == c_within)
            cmd_within_corr(opts, corr_mode);
        else if (sub == c_cross)
            cmd_cross_corr(opts, stat, corr_mode);
        else if (sub == c_layer)
            cmd_layer_corr(opts, kind);
        else if (sub == c_tax)
            cmd_taxonomy(opts, kind);
        else if (sub == c_evo)
            cmd_evolution(opts);
        else if (sub == c_synth) {
            if (weight_model == "pareto")
                synth_spec.weight_model = WeightModel::Pareto;
            else if (weight_model == "uniform")
                synth_spec.weight_model = WeightModel::Uniform;
            cmd_synth(opts, synth_spec, weight_model);
        }
        write_manifest(opts, command);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
