#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "sagecut/checkpoint.hpp"
#include "sagecut/graph_io.hpp"
#include "sagecut/partition_io.hpp"
#include "sagecut/synth.hpp"
#include "sagecut/trainer.hpp"
#include "sagecut/verify.hpp"

using namespace sagecut;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("CF_LOG");
        if (!env) return 1;
        const std::string v(env);
        if (v == "silent") return 0;
        if (v == "debug") return 2;
        return 1;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[sagecut] " << msg << "\n";
}

std::uint64_t hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot hash missing file: " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof(buf))) break;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string timestamp_utc(std::chrono::system_clock::time_point tp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(tp);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

// One manifest per run: resolved config, input hashes, seed, version, times.
class Manifest {
public:
    Manifest(std::string subcommand, std::uint64_t seed)
        : subcommand_(std::move(subcommand)), seed_(seed),
          start_(std::chrono::system_clock::now()) {}

    void set_config(json config) { config_ = std::move(config); }
    void add_input(const std::string& path) { inputs_[path] = hex64(hash_file(path)); }

    void write(const std::string& path) const {
        json doc;
        doc["subcommand"] = subcommand_;
        doc["config"] = config_;
        doc["inputs"] = inputs_;
        doc["seed"] = seed_;
        doc["tool_version"] = kVersion;
        doc["started"] = timestamp_utc(start_);
        doc["finished"] = timestamp_utc(std::chrono::system_clock::now());
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open for writing: " + path);
        out << doc.dump(2) << '\n';
    }

private:
    std::string subcommand_;
    json config_;
    std::map<std::string, std::string> inputs_;
    std::uint64_t seed_ = 0;
    std::chrono::system_clock::time_point start_;
};

struct DatasetPaths {
    std::string data_dir;
    std::string edges, features, labels, masks;

    std::string resolve(const std::string& explicit_path, const char* name) const {
        if (!explicit_path.empty()) return explicit_path;
        if (data_dir.empty()) return {};
        const std::filesystem::path dir(data_dir);
        if (std::string(name) == "features") {
            const auto csv = dir / "features.csv";
            if (std::filesystem::exists(csv)) return csv.string();
            return (dir / "features.bin").string();
        }
        if (std::string(name) == "edges") return (dir / "graph.edges").string();
        return (dir / (std::string(name) + ".txt")).string();
    }

    std::string edges_path() const { return resolve(edges, "edges"); }
    std::string features_path() const { return resolve(features, "features"); }
    std::string labels_path() const { return resolve(labels, "labels"); }
    std::string masks_path() const { return resolve(masks, "masks"); }
};

void add_dataset_options(CLI::App* cmd, DatasetPaths& paths) {
    cmd->add_option("--data", paths.data_dir,
                    "Dataset directory (graph.edges, features.csv|bin, labels.txt, masks.txt)");
    cmd->add_option("--edges", paths.edges, "Edge list file");
    cmd->add_option("--features", paths.features, "Feature matrix file (CSV or CFM1 binary)");
    cmd->add_option("--labels", paths.labels, "Labels file");
    cmd->add_option("--masks", paths.masks, "Split masks file");
}

Graph load_dataset(const DatasetPaths& paths, bool need_training_payload, Manifest& manifest) {
    const std::string edges = paths.edges_path();
    if (edges.empty())
        throw CLI::ValidationError("--data or --edges is required for this subcommand");
    auto [g, report] = load_graph(edges);
    manifest.add_input(edges);
    if (report.dropped_self_loops || report.merged_duplicate_edges)
        log_info("loader dropped " + std::to_string(report.dropped_self_loops) +
                 " self-loop(s), merged " + std::to_string(report.merged_duplicate_edges) +
                 " duplicate(s)");

    const std::string features = paths.features_path();
    if (!features.empty() && std::filesystem::exists(features)) {
        g.features = load_features(features, g.num_nodes);
        manifest.add_input(features);
    }
    const std::string labels = paths.labels_path();
    if (!labels.empty() && std::filesystem::exists(labels)) {
        load_labels(labels, g);
        manifest.add_input(labels);
    }
    const std::string masks = paths.masks_path();
    if (!masks.empty() && std::filesystem::exists(masks)) {
        load_masks(masks, g);
        manifest.add_input(masks);
    }
    if (need_training_payload && (!g.has_features() || !g.has_labels() || !g.has_masks()))
        throw CLI::ValidationError("training needs features, labels and masks (use --data DIR)");
    return g;
}

// Built-in homophilic fixture used by verify subcommands when no dataset is
// given.
Graph builtin_fixture() {
    return gen_homophilic_sbm(SbmSpec{200, 4, 0.15, 0.01, 8, 0.3, 7});
}

json comm_report_json(const CommReport& r) {
    return json{{"mode", r.mode == CommMode::cofree ? "cofree" : "halo_sync_model"},
                {"floats_per_iteration", r.floats_per_iteration},
                {"gradient_floats", r.gradient_floats},
                {"embedding_floats", r.embedding_floats}};
}

void write_json(const json& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << doc.dump(2) << '\n';
}

void emit_report(const json& doc, const std::string& out_path, Manifest& manifest) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        write_json(doc, out_path);
        manifest.write(out_path + ".manifest.json");
        log_info("wrote " + out_path);
    }
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
    SbmSpec sbm;
    PowerLawSpec power_law;
    std::string out_dir;
    std::string features_format = "csv";
};

int run_gen_sbm(const GenArgs& args) {
    Manifest manifest("gen sbm", args.sbm.seed);
    manifest.set_config(json{{"nodes", args.sbm.num_nodes},
                             {"classes", args.sbm.num_classes},
                             {"p_in", args.sbm.p_in},
                             {"p_out", args.sbm.p_out},
                             {"feature_dim", args.sbm.feature_dim},
                             {"feature_noise", args.sbm.feature_noise},
                             {"seed", args.sbm.seed},
                             {"features_format", args.features_format}});
    const Graph g = gen_homophilic_sbm(args.sbm);
    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path dir(args.out_dir);
    save_edge_list(g, (dir / "graph.edges").string());
    if (args.features_format == "bin")
        save_features_binary(g.features, (dir / "features.bin").string());
    else
        save_features_csv(g.features, (dir / "features.csv").string());
    save_labels(g, (dir / "labels.txt").string());
    save_masks(g, (dir / "masks.txt").string());
    manifest.write((dir / "manifest.json").string());
    log_info("generated sbm graph: " + std::to_string(g.num_nodes) + " nodes, " +
             std::to_string(g.num_edges()) + " edges, homophily " +
             std::to_string(homophily_ratio(g)));
    return 0;
}

int run_gen_power_law(const GenArgs& args) {
    Manifest manifest("gen powerlaw", args.power_law.seed);
    manifest.set_config(json{{"nodes", args.power_law.num_nodes},
                             {"exponent", args.power_law.exponent},
                             {"min_degree", args.power_law.min_degree},
                             {"seed", args.power_law.seed}});
    const Graph g = gen_power_law(args.power_law);
    std::filesystem::create_directories(args.out_dir);
    const std::filesystem::path dir(args.out_dir);
    save_edge_list(g, (dir / "graph.edges").string());
    manifest.write((dir / "manifest.json").string());
    const auto [min_d, max_d] = degree_extremes(g);
    log_info("generated power-law graph: " + std::to_string(g.num_nodes) + " nodes, " +
             std::to_string(g.num_edges()) + " edges, degrees [" + std::to_string(min_d) +
             ", " + std::to_string(max_d) + "]");
    return 0;
}

// ---------------------------------------------------------- partition ----

struct PartitionArgs {
    DatasetPaths dataset;
    std::string algorithm = "ne";
    int parts = 4;
    std::uint64_t seed = 0;
    double balance_slack = 1.1;
    std::string weights_scheme;  // embed loss weights when set
    std::string out;
    std::string stats_path;
};

int run_partition(const PartitionArgs& args) {
    Manifest manifest("partition", args.seed);
    manifest.set_config(json{{"algo", args.algorithm},
                             {"parts", args.parts},
                             {"seed", args.seed},
                             {"balance_slack", args.balance_slack}});
    const Graph g = load_dataset(args.dataset, false, manifest);
    const std::string stats_path =
        args.stats_path.empty() ? args.out + ".stats.json" : args.stats_path;

    json stats;
    stats["algorithm"] = args.algorithm;
    stats["num_parts"] = args.parts;
    stats["seed"] = args.seed;

    const auto fill_vertex_cut_stats = [&](const VertexCutPartition& part) {
        const ReplicationStats rs = replication_stats(part, g);
        stats["rf"] = rs.rf;
        stats["edge_balance"] = rs.edge_balance;
        stats["node_balance"] = rs.node_balance;
        stats["duplicated_nodes"] = rs.duplicated_nodes;
        json sizes = json::array();
        for (const PartSubgraph& sub : part.parts)
            sizes.push_back(json{{"nodes", sub.nodes.size()}, {"edges", sub.edges.size()}});
        stats["parts"] = std::move(sizes);
        if (!part.warnings.empty()) stats["warnings"] = part.warnings;
    };

    if (args.algorithm == "edge_cut") {
        const EdgeCutPartition ec = partition_edge_cut_greedy(g, args.parts, args.seed);
        save_edge_cut(ec, args.out);
        stats["halo_nodes"] = ec.total_halo();
        stats["cut_edges"] = ec.cut_edges.size();
    } else {
        VertexCutPartition part;
        if (args.algorithm == "random") {
            part = partition_random(g, args.parts, args.seed);
        } else if (args.algorithm == "dbh") {
            part = partition_dbh(g, args.parts, args.seed);
        } else if (args.algorithm == "ne") {
            part = partition_ne(g, args.parts, args.seed, args.balance_slack);
        } else if (args.algorithm == "ec2vc") {
            const EdgeCutPartition ec = partition_edge_cut_greedy(g, args.parts, args.seed);
            stats["halo_nodes"] = ec.total_halo();
            stats["cut_edges"] = ec.cut_edges.size();
            part = edge_cut_to_vertex_cut(g, ec, args.seed);
        }
        if (args.weights_scheme.empty()) {
            save_partition(part, args.out);
        } else {
            const NodeWeights weights =
                compute_weights(reweight_scheme_from_string(args.weights_scheme), g, part);
            save_partition(part, args.out, &weights);
        }
        fill_vertex_cut_stats(part);
    }
    write_json(stats, stats_path);
    manifest.write(args.out + ".manifest.json");
    log_info("wrote " + args.out + " and " + stats_path);
    return 0;
}

// -------------------------------------------------------------- train ----

struct TrainArgs {
    DatasetPaths dataset;
    std::string mode = "full";
    std::string parts_file;
    std::string config_path;
    TrainConfig config;
    std::string out = "metrics.jsonl";
    std::string checkpoint_path;
    std::string dump_masks_path;
    std::string loss_name = "softmax_ce";
    std::string reweight_name = "dar";
    std::string precision_name = "f64";
    std::string hidden_spec = "32";
};

std::vector<int> parse_hidden(const std::string& spec) {
    std::vector<int> dims;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            dims.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw CLI::ValidationError("bad --hidden value '" + tok + "'");
        }
    }
    if (dims.empty()) throw CLI::ValidationError("--hidden must not be empty");
    return dims;
}

json train_config_json(const TrainConfig& c) {
    return json{{"layers", c.layers},
                {"hidden", c.hidden},
                {"epochs", c.epochs},
                {"learning_rate", c.learning_rate},
                {"loss", c.loss == LossKind::bce ? "bce" : "softmax_ce"},
                {"reweight", to_string(c.reweight)},
                {"use_dropedge", c.use_dropedge},
                {"dropedge_k", c.dropedge_k},
                {"drop_ratio", c.drop_ratio},
                {"seed", c.seed},
                {"precision", c.precision == Precision::f32 ? "f32" : "f64"},
                {"workers", c.workers}};
}

// JSON config mirrors TrainConfig field names; explicitly passed flags win.
void apply_config_file(const std::string& path, TrainArgs& args,
                       const std::map<std::string, bool>& flag_given) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot open config file: " + path);
    json doc;
    in >> doc;
    const auto take = [&](const char* key, auto& target) {
        if (doc.contains(key) && !flag_given.at(key)) doc.at(key).get_to(target);
    };
    take("layers", args.config.layers);
    if (doc.contains("hidden") && !flag_given.at("hidden"))
        doc.at("hidden").get_to(args.config.hidden);
    take("epochs", args.config.epochs);
    take("learning_rate", args.config.learning_rate);
    take("use_dropedge", args.config.use_dropedge);
    take("dropedge_k", args.config.dropedge_k);
    take("drop_ratio", args.config.drop_ratio);
    take("seed", args.config.seed);
    take("workers", args.config.workers);
    take("loss", args.loss_name);
    take("reweight", args.reweight_name);
    take("precision", args.precision_name);
}

int run_train(TrainArgs& args, const std::map<std::string, bool>& flag_given) {
    if (!args.config_path.empty()) apply_config_file(args.config_path, args, flag_given);
    if (flag_given.at("hidden")) args.config.hidden = parse_hidden(args.hidden_spec);

    if (args.loss_name == "bce")
        args.config.loss = LossKind::bce;
    else if (args.loss_name == "softmax_ce")
        args.config.loss = LossKind::softmax_ce;
    else
        throw CLI::ValidationError("unknown loss kind: " + args.loss_name);
    args.config.reweight = reweight_scheme_from_string(args.reweight_name);
    if (args.precision_name == "f32")
        args.config.precision = Precision::f32;
    else if (args.precision_name == "f64")
        args.config.precision = Precision::f64;
    else
        throw CLI::ValidationError("unknown precision: " + args.precision_name);
    validate_train_config(args.config);

    if (args.mode == "cofree" && args.parts_file.empty())
        throw CLI::ValidationError("cofree mode requires --parts-file");

    Manifest manifest("train", args.config.seed);
    json config = train_config_json(args.config);
    config["mode"] = args.mode;
    if (!args.parts_file.empty()) config["parts_file"] = args.parts_file;
    manifest.set_config(config);

    const Graph g = load_dataset(args.dataset, true, manifest);

    TrainResult result;
    if (args.mode == "full") {
        result = train_full_graph(g, args.config);
    } else {
        const VertexCutPartition part = load_partition(args.parts_file, g);
        manifest.add_input(args.parts_file);
        if (!args.dump_masks_path.empty() && args.config.use_dropedge) {
            json dump = json::array();
            for (std::size_t i = 0; i < part.parts.size(); ++i) {
                const DropEdgeMaskSet set = partition_mask_set(part.parts[i], args.config, i);
                dump.push_back(json{{"partition", i},
                                    {"num_masks", set.num_masks},
                                    {"ratio", set.ratio},
                                    {"masks", set.masks}});
            }
            write_json(dump, args.dump_masks_path);
            log_info("wrote " + args.dump_masks_path);
        }
        result = train_cofree(g, part, args.config);
    }

    write_metrics_jsonl(result.metrics, args.out);
    const std::string ckpt =
        args.checkpoint_path.empty() ? args.out + ".ckpt" : args.checkpoint_path;
    save_checkpoint(result.model, ckpt);
    manifest.write(args.out + ".manifest.json");
    if (!result.metrics.empty())
        log_info("final: loss " + std::to_string(result.metrics.back().train_loss) +
                 ", test metric " + std::to_string(result.metrics.back().test_metric));
    log_info("wrote " + args.out + " and " + ckpt);
    return 0;
}

// ------------------------------------------------------------- verify ----

struct VerifyGradEquivArgs {
    DatasetPaths dataset;
    int layers = 1;
    int parts = 4;
    int seeds = 10;
    int hidden = 16;
    std::string scheme = "all";
    std::string out;
};

int run_verify_grad_equiv(const VerifyGradEquivArgs& args) {
    Manifest manifest("verify grad-equiv", 0);
    manifest.set_config(json{{"layers", args.layers},
                             {"parts", args.parts},
                             {"seeds", args.seeds},
                             {"hidden", args.hidden},
                             {"scheme", args.scheme}});
    const Graph g = args.dataset.edges_path().empty() ? builtin_fixture()
                                                      : load_dataset(args.dataset, true, manifest);

    std::vector<ReweightScheme> schemes;
    if (args.scheme == "all")
        schemes = {ReweightScheme::dar, ReweightScheme::vanilla_inv, ReweightScheme::none};
    else
        schemes = {reweight_scheme_from_string(args.scheme)};

    const std::vector<int> hidden_dims(static_cast<std::size_t>(args.layers), args.hidden);
    json per_scheme = json::object();
    std::map<std::string, double> medians;
    for (const ReweightScheme scheme : schemes) {
        std::vector<double> errors;
        for (int s = 1; s <= args.seeds; ++s) {
            const auto seed = static_cast<std::uint64_t>(s);
            const SageModel<double> model = make_sage_model<double>(
                g.features.cols(), hidden_dims, g.num_classes, seed);
            const VertexCutPartition part = partition_random(g, args.parts, seed);
            errors.push_back(grad_equivalence(g, part, model, scheme).aggregate_error);
        }
        std::vector<double> sorted = errors;
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[sorted.size() / 2];
        medians[to_string(scheme)] = median;
        per_scheme[to_string(scheme)] = json{{"errors", errors}, {"median", median}};
    }

    bool ok = true;
    if (args.layers == 0 && medians.count("dar")) ok = ok && medians["dar"] <= 1e-12;
    if (args.layers >= 1 && medians.size() == 3)
        ok = ok && medians["dar"] < medians["vanilla_inv"] &&
             medians["vanilla_inv"] < medians["none"];

    json doc;
    doc["layers"] = args.layers;
    doc["parts"] = args.parts;
    doc["homophily"] = g.labels.empty() ? 0.0 : homophily_ratio(g);
    doc["schemes"] = per_scheme;
    doc["pass"] = ok;
    emit_report(doc, args.out, manifest);
    return ok ? 0 : 1;
}

struct VerifyRfArgs {
    int parts = 2;
    std::string degrees = "2";
    std::size_t trials = 100000;
    std::uint64_t seed = 0;
    std::string out;
};

int run_verify_rf(const VerifyRfArgs& args) {
    Manifest manifest("verify rf", args.seed);
    manifest.set_config(json{{"p", args.parts},
                             {"degree", args.degrees},
                             {"trials", args.trials},
                             {"seed", args.seed}});
    std::vector<std::int64_t> degrees;
    std::stringstream ss(args.degrees);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            degrees.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw CLI::ValidationError("bad --degree value '" + tok + "'");
        }
    }

    const auto rows = mc_replication_check(args.parts, degrees, args.trials, args.seed);
    bool ok = true;
    json table = json::array();
    for (const McCheckRow& row : rows) {
        ok = ok && std::abs(row.z_score) <= 4.0;
        table.push_back(json{{"degree", row.degree},
                             {"empirical_mean", row.empirical_mean},
                             {"expected", row.expected},
                             {"std_error", row.std_error},
                             {"z", row.z_score}});
    }
    json doc;
    doc["p"] = args.parts;
    doc["trials"] = args.trials;
    doc["rows"] = std::move(table);
    doc["pass"] = ok;
    emit_report(doc, args.out, manifest);
    return ok ? 0 : 1;
}

struct VerifyTheorem1Args {
    DatasetPaths dataset;
    int parts = 4;
    int seeds = 50;
    std::string out;
};

int run_verify_theorem1(const VerifyTheorem1Args& args) {
    Manifest manifest("verify theorem1", 0);
    manifest.set_config(json{{"p", args.parts}, {"seeds", args.seeds}});
    const Graph g = args.dataset.edges_path().empty()
                        ? builtin_fixture()
                        : load_dataset(args.dataset, false, manifest);

    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(args.seeds));
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
    const auto rows = halo_conversion_audit(g, args.parts, seeds);
    bool ok = true;
    json table = json::array();
    for (const ConversionAuditRow& row : rows) {
        ok = ok && row.pass;
        table.push_back(json{{"seed", row.seed},
                             {"halo_nodes", row.total_halo},
                             {"duplicated_nodes", row.duplicated_nodes},
                             {"pass", row.pass}});
    }
    json doc;
    doc["p"] = args.parts;
    doc["rows"] = std::move(table);
    doc["pass"] = ok;
    emit_report(doc, args.out, manifest);
    return ok ? 0 : 1;
}

// -------------------------------------------------------------- bench ----

struct BenchArgs {
    DatasetPaths dataset;
    std::string parts_file;
    int layers = 2;
    int hidden = 32;
    int iters = 10;
    std::uint64_t seed = 0;
    std::string out = "bench.csv";
};

int run_bench(const BenchArgs& args) {
    Manifest manifest("bench", args.seed);
    manifest.set_config(json{{"parts_file", args.parts_file},
                             {"layers", args.layers},
                             {"hidden", args.hidden},
                             {"iters", args.iters},
                             {"seed", args.seed}});
    if (args.parts_file.empty()) throw CLI::ValidationError("bench requires --parts-file");
    const Graph g = load_dataset(args.dataset, true, manifest);
    const VertexCutPartition part = load_partition(args.parts_file, g);
    manifest.add_input(args.parts_file);

    TrainConfig config;
    config.layers = args.layers;
    config.hidden = {args.hidden};
    config.epochs = args.iters;
    config.seed = args.seed;

    const std::clock_t t0 = std::clock();
    const TrainResult result = train_cofree(g, part, config);
    const std::clock_t t1 = std::clock();
    const double ms_per_iter = 1000.0 * static_cast<double>(t1 - t0) /
                               static_cast<double>(CLOCKS_PER_SEC) / std::max(1, args.iters);

    const std::size_t params = result.model.param_count();
    const EdgeCutPartition ec = partition_edge_cut_greedy(g, part.num_parts, args.seed);
    const CommReport cofree = comm_volume(CommMode::cofree, part.num_parts, params,
                                          static_cast<std::size_t>(args.layers),
                                          static_cast<std::size_t>(args.hidden), 0);
    const CommReport halo = comm_volume(CommMode::halo_sync_model, part.num_parts, params,
                                        static_cast<std::size_t>(args.layers),
                                        static_cast<std::size_t>(args.hidden), ec.total_halo());

    std::ofstream out(args.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + args.out);
    out << "mode,parts,layers,hidden_dim,param_floats,gradient_floats,embedding_floats,"
           "total_floats,ms_per_iter\n";
    out << "cofree," << part.num_parts << ',' << args.layers << ',' << args.hidden << ','
        << params << ',' << cofree.gradient_floats << ',' << cofree.embedding_floats << ','
        << cofree.floats_per_iteration << ',' << ms_per_iter << '\n';
    out << "halo_sync_model," << part.num_parts << ',' << args.layers << ',' << args.hidden
        << ',' << params << ',' << halo.gradient_floats << ',' << halo.embedding_floats << ','
        << halo.floats_per_iteration << ",\n";
    manifest.write(args.out + ".manifest.json");
    log_info("wrote " + args.out);
    std::cout << comm_report_json(cofree).dump() << "\n"
              << comm_report_json(halo).dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vertex-cut partitioned GraphSAGE training testbed"};
    app.set_version_flag("--version", std::string("sagecut ") + kVersion);
    app.require_subcommand(1);

    // gen
    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate synthetic graph datasets");
    gen->require_subcommand(1);
    CLI::App* gen_sbm = gen->add_subcommand("sbm", "Homophilic stochastic block model");
    gen_sbm->add_option("--nodes", gen_args.sbm.num_nodes, "Node count")->required();
    gen_sbm->add_option("--classes", gen_args.sbm.num_classes, "Class count")
        ->check(CLI::PositiveNumber);
    gen_sbm->add_option("--pin", gen_args.sbm.p_in, "Intra-class edge probability");
    gen_sbm->add_option("--pout", gen_args.sbm.p_out, "Inter-class edge probability");
    gen_sbm->add_option("--fdim", gen_args.sbm.feature_dim, "Feature dimension (0 = classes)");
    gen_sbm->add_option("--noise", gen_args.sbm.feature_noise, "Feature noise scale");
    gen_sbm->add_option("--seed", gen_args.sbm.seed, "Seed");
    gen_sbm->add_option("--out", gen_args.out_dir, "Output directory")->required();
    gen_sbm->add_option("--features-format", gen_args.features_format, "csv or bin")
        ->check(CLI::IsMember({"csv", "bin"}));

    CLI::App* gen_pl = gen->add_subcommand("powerlaw", "Chung-Lu power-law graph");
    gen_pl->add_option("--nodes", gen_args.power_law.num_nodes, "Node count")->required();
    gen_pl->add_option("--exponent", gen_args.power_law.exponent, "Tail exponent (> 1)");
    gen_pl->add_option("--min-degree", gen_args.power_law.min_degree, "Minimum expected degree");
    gen_pl->add_option("--seed", gen_args.power_law.seed, "Seed");
    gen_pl->add_option("--out", gen_args.out_dir, "Output directory")->required();

    // partition
    PartitionArgs part_args;
    CLI::App* partition = app.add_subcommand("partition", "Partition a graph");
    add_dataset_options(partition, part_args.dataset);
    partition->add_option("--algo", part_args.algorithm, "Partitioning algorithm")
        ->check(CLI::IsMember({"random", "dbh", "ne", "edge_cut", "ec2vc"}));
    partition->add_option("--parts", part_args.parts, "Number of parts")
        ->check(CLI::PositiveNumber);
    partition->add_option("--seed", part_args.seed, "Seed");
    partition->add_option("--balance-slack", part_args.balance_slack,
                          "Neighbor-expansion balance slack (>= 1)");
    partition->add_option("--weights", part_args.weights_scheme,
                          "Embed loss weights of this scheme in the partition JSON")
        ->check(CLI::IsMember({"dar", "vanilla_inv", "none"}));
    partition->add_option("--out", part_args.out, "Partition JSON path")->required();
    partition->add_option("--stats", part_args.stats_path,
                          "Stats JSON path (default <out>.stats.json)");

    // train
    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "Train full-graph or communication-free");
    add_dataset_options(train, train_args.dataset);
    train->add_option("--mode", train_args.mode, "full or cofree")
        ->check(CLI::IsMember({"full", "cofree"}));
    train->add_option("--parts-file", train_args.parts_file, "Vertex-cut partition JSON");
    train->add_option("--config", train_args.config_path, "JSON config (flags override)");
    auto* opt_layers = train->add_option("--layers", train_args.config.layers, "SAGE layers");
    auto* opt_hidden =
        train->add_option("--hidden", train_args.hidden_spec, "Hidden dims, e.g. 32 or 64,32");
    auto* opt_epochs = train->add_option("--epochs", train_args.config.epochs, "Epochs");
    auto* opt_lr = train->add_option("--lr", train_args.config.learning_rate, "Learning rate");
    auto* opt_loss = train->add_option("--loss", train_args.loss_name, "softmax_ce or bce")
                         ->check(CLI::IsMember({"softmax_ce", "bce"}));
    auto* opt_reweight =
        train->add_option("--reweight", train_args.reweight_name, "dar, vanilla_inv or none")
            ->check(CLI::IsMember({"dar", "vanilla_inv", "none"}));
    auto* opt_dropedge =
        train->add_flag("--dropedge", train_args.config.use_dropedge, "Enable edge dropping");
    auto* opt_k = train->add_option("--dropedge-k", train_args.config.dropedge_k,
                                    "Precomputed mask count");
    auto* opt_ratio =
        train->add_option("--drop-ratio", train_args.config.drop_ratio, "Drop probability");
    auto* opt_seed = train->add_option("--seed", train_args.config.seed, "Seed");
    auto* opt_precision =
        train->add_option("--precision", train_args.precision_name, "f64 or f32")
            ->check(CLI::IsMember({"f64", "f32"}));
    auto* opt_workers =
        train->add_option("--workers", train_args.config.workers, "Worker thread cap");
    train->add_option("--out", train_args.out, "Metrics JSONL path");
    train->add_option("--checkpoint", train_args.checkpoint_path,
                      "Checkpoint path (default <out>.ckpt)");
    train->add_option("--dump-masks", train_args.dump_masks_path,
                      "Debug-dump the per-partition edge-drop masks to this JSON file");

    // verify
    CLI::App* verify = app.add_subcommand("verify", "Run independent verification checks");
    verify->require_subcommand(1);
    VerifyGradEquivArgs ge_args;
    CLI::App* grad_equiv = verify->add_subcommand(
        "grad-equiv", "Full-graph vs gathered reweighted gradient residual");
    add_dataset_options(grad_equiv, ge_args.dataset);
    grad_equiv->add_option("--layers", ge_args.layers, "SAGE layers (0 = feature classifier)");
    grad_equiv->add_option("--parts", ge_args.parts, "Partition count");
    grad_equiv->add_option("--seeds", ge_args.seeds, "Seed count")->check(CLI::PositiveNumber);
    grad_equiv->add_option("--hidden", ge_args.hidden, "Hidden dim");
    grad_equiv->add_option("--scheme", ge_args.scheme, "dar, vanilla_inv, none or all")
        ->check(CLI::IsMember({"dar", "vanilla_inv", "none", "all"}));
    grad_equiv->add_option("--out", ge_args.out, "Report JSON path (default stdout)");

    VerifyRfArgs rf_args;
    CLI::App* rf = verify->add_subcommand("rf", "Monte Carlo replication-factor expectation");
    rf->add_option("--p", rf_args.parts, "Partition count")->check(CLI::PositiveNumber);
    rf->add_option("--degree", rf_args.degrees, "Degree or comma list");
    rf->add_option("--trials", rf_args.trials, "Trials per degree");
    rf->add_option("--seed", rf_args.seed, "Seed");
    rf->add_option("--out", rf_args.out, "Report JSON path (default stdout)");

    VerifyTheorem1Args t1_args;
    CLI::App* theorem1 = verify->add_subcommand(
        "theorem1", "Edge-cut to vertex-cut conversion duplicates fewer nodes than halos");
    add_dataset_options(theorem1, t1_args.dataset);
    theorem1->add_option("--p", t1_args.parts, "Partition count");
    theorem1->add_option("--seeds", t1_args.seeds, "Seed count")->check(CLI::PositiveNumber);
    theorem1->add_option("--out", t1_args.out, "Report JSON path (default stdout)");

    // bench
    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Communication volume and throughput");
    add_dataset_options(bench, bench_args.dataset);
    bench->add_option("--parts-file", bench_args.parts_file, "Vertex-cut partition JSON");
    bench->add_option("--layers", bench_args.layers, "SAGE layers");
    bench->add_option("--hidden", bench_args.hidden, "Hidden dim");
    bench->add_option("--iters", bench_args.iters, "Iterations to time");
    bench->add_option("--seed", bench_args.seed, "Seed");
    bench->add_option("--out", bench_args.out, "CSV path");

    try {
        app.parse(argc, argv);

        if (gen_sbm->parsed()) return run_gen_sbm(gen_args);
        if (gen_pl->parsed()) return run_gen_power_law(gen_args);
        if (partition->parsed()) return run_partition(part_args);
        if (train->parsed()) {
            const std::map<std::string, bool> flag_given{
                {"layers", opt_layers->count() > 0},
                {"hidden", opt_hidden->count() > 0},
                {"epochs", opt_epochs->count() > 0},
                {"learning_rate", opt_lr->count() > 0},
                {"loss", opt_loss->count() > 0},
                {"reweight", opt_reweight->count() > 0},
                {"use_dropedge", opt_dropedge->count() > 0},
                {"dropedge_k", opt_k->count() > 0},
                {"drop_ratio", opt_ratio->count() > 0},
                {"seed", opt_seed->count() > 0},
                {"precision", opt_precision->count() > 0},
                {"workers", opt_workers->count() > 0}};
            // Passing mask parameters implies edge dropping.
            if (opt_k->count() > 0 || opt_ratio->count() > 0)
                train_args.config.use_dropedge = true;
            return run_train(train_args, flag_given);
        }
        if (grad_equiv->parsed()) return run_verify_grad_equiv(ge_args);
        if (rf->parsed()) return run_verify_rf(rf_args);
        if (theorem1->parsed()) return run_verify_theorem1(t1_args);
        if (bench->parsed()) return run_bench(bench_args);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
