// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion carries its runtime budget in seconds.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sagecut/dropedge.hpp"
#include "sagecut/graph_io.hpp"
#include "sagecut/partition.hpp"
#include "sagecut/reweight.hpp"
#include "sagecut/synth.hpp"
#include "sagecut/trainer.hpp"
#include "sagecut/verify.hpp"

#ifndef SAGECUT_FIXTURE_DIR
#define SAGECUT_FIXTURE_DIR "tests/fixtures"
#endif
#ifndef SAGECUT_CLI_PATH
#define SAGECUT_CLI_PATH "sagecut"
#endif

using namespace sagecut;

namespace {

struct CriterionResult {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
    void note(const std::string& text) {
        if (!detail.empty()) detail += "; ";
        detail += text;
    }
};

const Graph& karate() {
    static const Graph g = [] {
        auto [graph, report] = load_graph(std::string(SAGECUT_FIXTURE_DIR) + "/karate.edges");
        return graph;
    }();
    return g;
}

// n=200, C=4, p_in/p_out = 15 homophilic fixture.
const Graph& sbm200() {
    static const Graph g = gen_homophilic_sbm(SbmSpec{200, 4, 0.15, 0.01, 8, 0.3, 7});
    return g;
}

// n=1000 fixture for partition-count scaling and edge-drop parity.
const Graph& sbm1000() {
    static const Graph g = gen_homophilic_sbm(SbmSpec{1000, 4, 0.12, 0.008, 8, 1.5, 42});
    return g;
}

TrainConfig scaling_config(std::uint64_t seed) {
    TrainConfig cfg;
    cfg.layers = 2;
    cfg.hidden = {16};
    cfg.epochs = 120;
    cfg.learning_rate = 0.01;
    cfg.seed = seed;
    return cfg;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

using PartitionRun = std::pair<const Graph*, VertexCutPartition>;

// Every partition run shared by criteria 1, 2 and 5.
const std::vector<PartitionRun>& all_partition_runs() {
    static const std::vector<PartitionRun> runs = [] {
        std::vector<PartitionRun> out;
        for (const Graph* g : {&karate(), &sbm200()})
            for (const int p : {1, 2, 4, 8, 16})
                for (std::uint64_t seed = 0; seed < 10; ++seed) {
                    out.emplace_back(g, partition_random(*g, p, seed));
                    out.emplace_back(g, partition_dbh(*g, p, seed));
                    out.emplace_back(g, partition_ne(*g, p, seed));
                    out.emplace_back(g, edge_cut_to_vertex_cut(
                                             *g, partition_edge_cut_greedy(*g, p, seed), seed));
                }
        return out;
    }();
    return runs;
}

// 1. Partition validity: edge disjointness, union coverage, endpoint
//    closure, and exact degree conservation for every algorithm x p x seed
//    on both fixtures.
CriterionResult criterion_partition_validity() {
    CriterionResult r;
    std::size_t checked = 0;
    for (const auto& [g, part] : all_partition_runs()) {
        ++checked;
        std::vector<std::uint8_t> edge_seen(g->num_edges(), 0);
        std::vector<NodeId> local_degree_sum(static_cast<std::size_t>(g->num_nodes), 0);
        r.require(part.edge_assignment.size() == g->num_edges(), "assignment length mismatch");
        for (int i = 0; i < part.num_parts; ++i) {
            const PartSubgraph& sub = part.parts[static_cast<std::size_t>(i)];
            std::set<NodeId> endpoints;
            for (std::size_t e = 0; e < sub.edges.size(); ++e) {
                const auto global = static_cast<std::size_t>(sub.edge_global_ids[e]);
                r.require(part.edge_assignment[global] == i, "edge listed in the wrong part");
                r.require(!edge_seen[global], "edge present in two parts");
                edge_seen[global] = 1;
                endpoints.insert(g->edges[global].u);
                endpoints.insert(g->edges[global].v);
            }
            std::set<NodeId> members;
            for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
                members.insert(sub.nodes[j]);
                local_degree_sum[static_cast<std::size_t>(sub.nodes[j])] +=
                    sub.local_degrees[j];
            }
            for (const NodeId v : endpoints)
                r.require(members.count(v) == 1, "endpoint missing from part node set");
            for (const NodeId v : members)
                r.require(endpoints.count(v) == 1 || g->degree(v) == 0,
                          "non-endpoint node in part");
        }
        for (std::size_t e = 0; e < g->num_edges(); ++e)
            r.require(edge_seen[e] == 1, "edge missing from the union");
        for (NodeId v = 0; v < g->num_nodes; ++v)
            r.require(local_degree_sum[static_cast<std::size_t>(v)] == g->degree(v),
                      "local degrees do not sum to the global degree");
    }
    r.note(std::to_string(checked) + " partitions checked");
    return r;
}

// 2. Replication-factor identities on every run from (1).
CriterionResult criterion_rf_identities() {
    CriterionResult r;
    for (const auto& [g, part] : all_partition_runs()) {
        const ReplicationStats stats = replication_stats(part, *g);
        std::int64_t rf_sum = 0;
        for (const int rf : stats.per_node_rf) rf_sum += rf;
        const double mean = static_cast<double>(rf_sum) / static_cast<double>(g->num_nodes);
        r.require(stats.rf == mean, "rf != mean(per_node_rf)");
        r.require(stats.rf >= 1.0 && stats.rf <= static_cast<double>(part.num_parts),
                  "rf outside [1, p]");
        for (NodeId v = 0; v < g->num_nodes; ++v)
            r.require(stats.per_node_rf[static_cast<std::size_t>(v)] >= 1 ||
                          g->degree(v) == 0,
                      "non-isolated node with rf < 1");
    }
    r.note(std::to_string(all_partition_runs().size()) + " stat sets checked");
    return r;
}

// 3. Edge-cut -> vertex-cut conversions duplicate strictly fewer nodes than
//    the halo total (50 seeds), and exactly zero when there are no halos.
CriterionResult criterion_conversion_audit() {
    CriterionResult r;
    std::vector<std::uint64_t> seeds(50);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
    std::size_t h_positive = 0;
    for (const auto& row : halo_conversion_audit(sbm200(), 4, seeds)) {
        r.require(row.pass, "duplicates not below halo total at seed " +
                                std::to_string(row.seed));
        h_positive += row.total_halo > 0;
    }
    r.note(std::to_string(h_positive) + "/50 seeds had halos");

    auto [two_cliques, report] = build_graph(4, {{0, 2}, {1, 3}});
    const EdgeCutPartition ec = edge_cut_from_assignment(two_cliques, 2, {0, 1, 0, 1});
    r.require(ec.total_halo() == 0, "expected a halo-free cut");
    const VertexCutPartition vc = edge_cut_to_vertex_cut(two_cliques, ec, 1);
    r.require(replication_stats(vc, two_cliques).duplicated_nodes == 0,
              "halo-free conversion produced duplicates");
    return r;
}

// 4. Monte Carlo replication expectation within 4 standard errors of
//    p * (1 - (1 - 1/p)^d) for (p, d) in {2,4,8} x {1,2,5,20,50}.
CriterionResult criterion_monte_carlo() {
    CriterionResult r;
    double worst_z = 0.0;
    for (const int p : {2, 4, 8}) {
        const auto rows = mc_replication_check(p, {1, 2, 5, 20, 50}, 100000,
                                               static_cast<std::uint64_t>(p));
        for (const McCheckRow& row : rows) {
            r.require(std::isfinite(row.z_score), "non-finite z score");
            r.require(std::abs(row.z_score) <= 4.0,
                      "z = " + std::to_string(row.z_score) + " at p=" + std::to_string(p) +
                          " d=" + std::to_string(row.degree));
            worst_z = std::max(worst_z, std::abs(row.z_score));
        }
    }
    r.note("worst |z| = " + std::to_string(worst_z));
    return r;
}

// 5. Degree-aware weights of every non-isolated node sum to 1 across parts
//    for every partition from (1), tolerance 1e-12.
CriterionResult criterion_dar_weight_identity() {
    CriterionResult r;
    double worst = 0.0;
    for (const auto& [g, part] : all_partition_runs()) {
        const NodeWeights w = dar_weights(*g, part);
        std::vector<double> totals(static_cast<std::size_t>(g->num_nodes), 0.0);
        for (std::size_t i = 0; i < part.parts.size(); ++i)
            for (std::size_t j = 0; j < part.parts[i].nodes.size(); ++j)
                totals[static_cast<std::size_t>(part.parts[i].nodes[j])] += w.per_part[i][j];
        for (NodeId v = 0; v < g->num_nodes; ++v) {
            if (g->degree(v) == 0) continue;
            const double err = std::abs(totals[static_cast<std::size_t>(v)] - 1.0);
            worst = std::max(worst, err);
            r.require(err <= 1e-12, "weight total off by " + std::to_string(err));
        }
    }
    r.note("worst deviation " + std::to_string(worst));
    return r;
}

// 6. With zero message-passing layers the degree-aware weighted partition
//    loss equals the full-graph loss within 1e-12 for p in {2, 4, 8}.
CriterionResult criterion_flat_model_loss_identity() {
    CriterionResult r;
    const Graph& g = sbm200();
    const SageModel<double> model =
        make_sage_model<double>(g.features.cols(), {}, g.num_classes, 17);
    double worst = 0.0;
    for (const int p : {2, 4, 8}) {
        const VertexCutPartition part = partition_random(g, p, 23);
        const auto [part_loss, full_loss] =
            partition_vs_full_loss(g, part, model, ReweightScheme::dar);
        const double err = std::abs(part_loss - full_loss);
        worst = std::max(worst, err);
        r.require(err <= 1e-12, "loss gap " + std::to_string(err) + " at p=" +
                                    std::to_string(p));
    }
    r.note("worst gap " + std::to_string(worst));
    return r;
}

// 7. Gradient-residual ordering on the homophilic fixture: median over 10
//    seeds of the relative residual is smallest for degree-aware weights,
//    then inverse-replication, then unweighted.
CriterionResult criterion_residual_ordering() {
    CriterionResult r;
    const Graph& g = sbm200();
    std::vector<double> dar, vanilla, none;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const SageModel<double> model =
            make_sage_model<double>(g.features.cols(), {16}, g.num_classes, seed);
        const VertexCutPartition part = partition_random(g, 4, seed);
        dar.push_back(grad_equivalence(g, part, model, ReweightScheme::dar).aggregate_error);
        vanilla.push_back(
            grad_equivalence(g, part, model, ReweightScheme::vanilla_inv).aggregate_error);
        none.push_back(grad_equivalence(g, part, model, ReweightScheme::none).aggregate_error);
    }
    const double m_dar = median(dar), m_vanilla = median(vanilla), m_none = median(none);
    r.require(m_dar < m_vanilla, "dar median not below vanilla_inv");
    r.require(m_vanilla < m_none, "vanilla_inv median not below none");
    std::ostringstream os;
    os.precision(4);
    os << "medians dar=" << m_dar << " vanilla_inv=" << m_vanilla << " none=" << m_none;
    r.note(os.str());
    return r;
}

// 8. Backward pass matches central finite differences (step 1e-5) within
//    1e-6 relative on 20 random small instances.
CriterionResult criterion_gradient_check() {
    CriterionResult r;
    Rng rng(31337);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const NodeId n = 4 + static_cast<NodeId>(rng.next_below(13));
        std::vector<Edge> edges;
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if (rng.next_double() < 0.35) edges.push_back(Edge{u, v});
        auto [g, report] = build_graph(n, edges);

        const int layers = 1 + static_cast<int>(rng.next_below(2));
        std::vector<int> hidden;
        for (int l = 0; l < layers; ++l)
            hidden.push_back(2 + static_cast<int>(rng.next_below(3)));
        const int in_dim = 2 + static_cast<int>(rng.next_below(3));
        const int classes = 2 + static_cast<int>(rng.next_below(2));
        SageModel<double> model =
            make_sage_model<double>(in_dim, hidden, classes, rng.next_u64());

        MatX<double> x(n, in_dim), logit_grad(n, classes);
        for (Eigen::Index i = 0; i < x.rows(); ++i)
            for (Eigen::Index c = 0; c < x.cols(); ++c) x(i, c) = rng.next_gaussian();
        for (Eigen::Index i = 0; i < logit_grad.rows(); ++i)
            for (Eigen::Index c = 0; c < logit_grad.cols(); ++c)
                logit_grad(i, c) = rng.next_gaussian();

        const AdjacencyView adj = g.adjacency();
        const auto fwd = sage_forward(model, adj, x);
        const SageGrads<double> analytic = sage_backward(model, fwd.cache, adj, logit_grad);

        const auto objective = [&] {
            const auto f = sage_forward(model, adj, x);
            return (logit_grad.array() * f.logits.array()).sum();
        };
        std::vector<MatX<double>*> params;
        model.for_each_matrix([&](MatX<double>& m) { params.push_back(&m); });
        std::vector<const MatX<double>*> analytic_mats;
        analytic.for_each_matrix([&](const MatX<double>& m) { analytic_mats.push_back(&m); });
        const double step = 1e-5;
        for (std::size_t k = 0; k < params.size(); ++k) {
            MatX<double> fd(params[k]->rows(), params[k]->cols());
            for (Eigen::Index i = 0; i < params[k]->rows(); ++i)
                for (Eigen::Index c = 0; c < params[k]->cols(); ++c) {
                    const double saved = (*params[k])(i, c);
                    (*params[k])(i, c) = saved + step;
                    const double up = objective();
                    (*params[k])(i, c) = saved - step;
                    const double down = objective();
                    (*params[k])(i, c) = saved;
                    fd(i, c) = (up - down) / (2.0 * step);
                }
            const double rel =
                (fd - *analytic_mats[k]).norm() / std::max(fd.norm(), 1e-12);
            worst = std::max(worst, rel);
            r.require(rel <= 1e-6, "relative error " + std::to_string(rel));
        }
    }
    std::ostringstream os;
    os.precision(3);
    os << "worst relative error " << worst;
    r.note(os.str());
    return r;
}

// 9. Single-partition training replays full-graph training: loss
//    trajectories agree within 1e-10 over 50 epochs.
CriterionResult criterion_single_part_degeneracy() {
    CriterionResult r;
    const Graph& g = sbm200();
    TrainConfig cfg;
    cfg.layers = 2;
    cfg.hidden = {16};
    cfg.epochs = 50;
    cfg.learning_rate = 0.01;
    cfg.seed = 3;
    const TrainResult full = train_full_graph(g, cfg);
    const TrainResult cofree = train_cofree(g, partition_random(g, 1, 3), cfg);
    r.require(full.metrics.size() == cofree.metrics.size(), "epoch count mismatch");
    double worst = 0.0;
    for (std::size_t e = 0; e < full.metrics.size(); ++e) {
        const double gap = std::abs(full.metrics[e].train_loss - cofree.metrics[e].train_loss);
        worst = std::max(worst, gap);
        r.require(gap <= 1e-10, "loss gap " + std::to_string(gap));
    }
    r.note("max loss gap " + std::to_string(worst));
    return r;
}

// 10. Partition-count scaling on the n=1000 fixture: median final test
//     accuracy of gathered-gradient training with degree-aware weights stays
//     within 0.02 of the full-graph oracle for p in {2, 4, 8, 16}.
CriterionResult criterion_partition_scaling() {
    CriterionResult r;
    const Graph& g = sbm1000();
    std::vector<double> full_acc;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
        full_acc.push_back(
            train_full_graph(g, scaling_config(seed)).metrics.back().test_metric);
    const double full_median = median(full_acc);

    std::ostringstream os;
    os.precision(4);
    os << "full=" << full_median;
    for (const int p : {2, 4, 8, 16}) {
        std::vector<double> acc;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            TrainConfig cfg = scaling_config(seed);
            cfg.reweight = ReweightScheme::dar;
            acc.push_back(
                train_cofree(g, partition_random(g, p, seed), cfg).metrics.back().test_metric);
        }
        const double m = median(acc);
        os << " p" << p << "=" << m;
        r.require(std::abs(m - full_median) <= 0.02,
                  "gap " + std::to_string(m - full_median) + " at p=" + std::to_string(p));
    }

    // The unweighted scheme's gap may exceed the degree-aware one; report it.
    std::vector<double> none_acc;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        TrainConfig cfg = scaling_config(seed);
        cfg.reweight = ReweightScheme::none;
        none_acc.push_back(
            train_cofree(g, partition_random(g, 8, seed), cfg).metrics.back().test_metric);
    }
    os << " (none p8=" << median(none_acc) << ")";
    r.note(os.str());
    return r;
}

// 11. Edge-drop mechanics: exact keep counts, uniform mask selection, and
//     accuracy parity with plain gathered-gradient training.
CriterionResult criterion_dropedge() {
    CriterionResult r;
    for (const std::size_t edges : {100UL, 77UL})
        for (const double ratio : {0.5, 0.3})
            for (int k = 1; k <= 4; ++k) {
                const DropEdgeMaskSet set =
                    precompute_masks(edges, k, ratio, static_cast<std::uint64_t>(k));
                const auto expected = static_cast<std::size_t>(
                    std::ceil((1.0 - ratio) * static_cast<double>(edges)));
                for (const auto& mask : set.masks) {
                    std::size_t kept = 0;
                    for (const auto b : mask) kept += b;
                    r.require(kept == expected, "inexact keep count");
                }
            }

    const int k = 10;
    const std::size_t draws = 100000;
    const DropEdgeMaskSet set = precompute_masks(50, k, 0.5, 9);
    std::vector<std::size_t> counts(k, 0);
    Rng rng(substream(9, "dropedge.select", 0, 0));
    for (std::size_t i = 0; i < draws; ++i)
        ++counts[static_cast<std::size_t>(select_mask(set, rng))];
    const double expected_count = static_cast<double>(draws) / k;
    const double sigma = std::sqrt(static_cast<double>(draws) * (1.0 / k) * (1.0 - 1.0 / k));
    for (const std::size_t count : counts)
        r.require(std::abs(static_cast<double>(count) - expected_count) <= 4.0 * sigma,
                  "mask selection frequency beyond 4 sigma");

    const Graph& g = sbm1000();
    std::vector<double> plain, dropped;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const VertexCutPartition part = partition_random(g, 4, seed);
        TrainConfig cfg = scaling_config(seed);
        plain.push_back(train_cofree(g, part, cfg).metrics.back().test_metric);
        cfg.use_dropedge = true;
        cfg.dropedge_k = 10;
        cfg.drop_ratio = 0.5;
        dropped.push_back(train_cofree(g, part, cfg).metrics.back().test_metric);
    }
    const double gap = std::abs(median(dropped) - median(plain));
    r.require(gap <= 0.02, "edge-drop parity gap " + std::to_string(gap));
    std::ostringstream os;
    os.precision(4);
    os << "plain=" << median(plain) << " dropedge=" << median(dropped);
    r.note(os.str());
    return r;
}

// 12. Communication audit: instrumented training exchanges exactly
//     p * |theta| floats per iteration and zero embeddings; the halo-sync
//     cost model exceeds it whenever halos exist.
CriterionResult criterion_comm_audit() {
    CriterionResult r;
    const Graph& g = sbm200();
    const int p = 8;
    const VertexCutPartition part = partition_random(g, p, 4);
    TrainConfig cfg;
    cfg.layers = 2;
    cfg.hidden = {16};
    cfg.epochs = 3;
    cfg.learning_rate = 0.01;
    cfg.seed = 4;
    const TrainResult result = train_cofree(g, part, cfg);

    const std::size_t params = result.model.param_count();
    const CommReport cofree = comm_volume(CommMode::cofree, p, params, 2, 16, 0);
    r.require(cofree.floats_per_iteration == static_cast<std::uint64_t>(p) * params,
              "cofree formula mismatch");
    r.require(result.audit.gradient_floats_per_epoch.size() == 3, "missing audit epochs");
    for (const std::uint64_t floats : result.audit.gradient_floats_per_epoch)
        r.require(floats == cofree.floats_per_iteration,
                  "audited " + std::to_string(floats) + " floats, expected " +
                      std::to_string(cofree.floats_per_iteration));
    r.require(result.audit.embedding_floats == 0, "embeddings crossed worker boundaries");

    const EdgeCutPartition ec = partition_edge_cut_greedy(g, p, 4);
    r.require(ec.total_halo() > 0, "fixture cut produced no halos");
    const CommReport halo =
        comm_volume(CommMode::halo_sync_model, p, params, 2, 16, ec.total_halo());
    r.require(halo.floats_per_iteration > cofree.floats_per_iteration,
              "halo model does not exceed cofree");
    r.note("p*|theta| = " + std::to_string(cofree.floats_per_iteration) + ", halo model " +
           std::to_string(halo.floats_per_iteration));
    return r;
}

// 13. CLI determinism: identical flags and seed give byte-identical output
//     files across reruns.
CriterionResult criterion_cli_determinism() {
    CriterionResult r;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "sagecut_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cli = SAGECUT_CLI_PATH;

    const auto run = [&](const std::string& args) {
        const std::string cmd =
            "cd " + dir.string() + " && CF_LOG=silent " + cli + " " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    const auto same_bytes = [&](const std::string& a, const std::string& b) {
        std::ifstream fa(dir / a, std::ios::binary), fb(dir / b, std::ios::binary);
        if (!fa || !fb) return false;
        const std::string sa((std::istreambuf_iterator<char>(fa)),
                             std::istreambuf_iterator<char>());
        const std::string sb((std::istreambuf_iterator<char>(fb)),
                             std::istreambuf_iterator<char>());
        return !sa.empty() && sa == sb;
    };

    r.require(run("gen sbm --nodes 120 --classes 3 --seed 7 --out a"), "gen run 1 failed");
    r.require(run("gen sbm --nodes 120 --classes 3 --seed 7 --out b"), "gen run 2 failed");
    for (const std::string name : {"graph.edges", "features.csv", "labels.txt", "masks.txt"})
        r.require(same_bytes("a/" + name, "b/" + name), "gen output differs: " + name);

    r.require(run("partition --data a --algo ne --parts 4 --seed 3 --out p1.json"),
              "partition run 1 failed");
    r.require(run("partition --data a --algo ne --parts 4 --seed 3 --out p2.json"),
              "partition run 2 failed");
    r.require(same_bytes("p1.json", "p2.json"), "partition json differs");
    r.require(same_bytes("p1.json.stats.json", "p2.json.stats.json"), "stats differ");

    const std::string train_flags =
        "train --data a --mode cofree --parts-file p1.json --reweight dar --layers 2 "
        "--hidden 8 --epochs 8 --seed 5 --workers 1 ";
    r.require(run(train_flags + "--out m1.jsonl"), "train run 1 failed");
    r.require(run(train_flags + "--out m2.jsonl"), "train run 2 failed");
    r.require(same_bytes("m1.jsonl", "m2.jsonl"), "metrics differ");
    r.require(same_bytes("m1.jsonl.ckpt", "m2.jsonl.ckpt"), "checkpoints differ");

    r.require(run("verify rf --p 2 --degree 2,5 --trials 20000 --seed 1 --out v1.json"),
              "verify run 1 failed");
    r.require(run("verify rf --p 2 --degree 2,5 --trials 20000 --seed 1 --out v2.json"),
              "verify run 2 failed");
    r.require(same_bytes("v1.json", "v2.json"), "verify reports differ");

    r.require(run("train --data a --mode full --layers 0 --epochs 5 --seed 2 --out f1.jsonl"),
              "full train failed");
    r.require(run("train --data a --mode full --layers 0 --epochs 5 --seed 2 --out f2.jsonl"),
              "full train rerun failed");
    r.require(same_bytes("f1.jsonl", "f2.jsonl"), "full-mode metrics differ");

    fs::remove_all(dir);
    return r;
}

struct Criterion {
    int id;
    const char* description;
    double budget_seconds;
    std::function<CriterionResult()> fn;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "partition validity (disjoint, covering, closed, degree-conserving)", 30.0,
         criterion_partition_validity},
        {2, "replication factor identities", 30.0, criterion_rf_identities},
        {3, "edge-cut conversion duplicates fewer nodes than halos", 10.0,
         criterion_conversion_audit},
        {4, "Monte Carlo replication expectation within 4 SE", 60.0, criterion_monte_carlo},
        {5, "degree-aware weights sum to one per node", 30.0, criterion_dar_weight_identity},
        {6, "flat-model weighted partition loss equals full-graph loss", 30.0,
         criterion_flat_model_loss_identity},
        {7, "gradient residual ordering dar < vanilla_inv < none", 60.0,
         criterion_residual_ordering},
        {8, "backward pass matches finite differences", 60.0, criterion_gradient_check},
        {9, "single-partition training equals full-graph training", 60.0,
         criterion_single_part_degeneracy},
        {10, "accuracy holds across partition counts (n=1000 fixture)", 600.0,
         criterion_partition_scaling},
        {11, "edge-drop mechanics: keep counts, uniform selection, parity", 300.0,
         criterion_dropedge},
        {12, "communication audit: p*|theta| floats, zero embeddings", 60.0,
         criterion_comm_audit},
        {13, "CLI reruns are byte-identical", 120.0, criterion_cli_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult result;
        try {
            result = c.fn();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (elapsed > c.budget_seconds) {
            result.pass = false;
            result.note("over budget of " + std::to_string(c.budget_seconds) + "s");
        }
        failures += !result.pass;
        std::printf("[%s] criterion %2d (%6.2fs): %s%s%s\n", result.pass ? "PASS" : "FAIL",
                    c.id, elapsed, c.description, result.detail.empty() ? "" : " -- ",
                    result.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
