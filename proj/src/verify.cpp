#include "sagecut/verify.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sagecut/rng.hpp"

namespace sagecut {

namespace {

// Gathered reweighted partition gradients of the node-count-normalized BCE
// loss at a fixed model state, plus the weighted total loss.
std::pair<SageGrads<double>, double> partition_bce_gradients(const Graph& g,
                                                             const VertexCutPartition& part,
                                                             const SageModel<double>& model,
                                                             const NodeWeights& weights) {
    const Eigen::MatrixXd targets = label_targets(g);
    const double normalizer = static_cast<double>(g.num_nodes);
    std::vector<SageGrads<double>> per_part;
    double total_loss = 0.0;
    for (std::size_t i = 0; i < part.parts.size(); ++i) {
        const PartSubgraph& sub = part.parts[i];
        const auto n_local = static_cast<Eigen::Index>(sub.nodes.size());
        Eigen::MatrixXd features(n_local, g.features.cols());
        Eigen::MatrixXd local_targets(n_local, targets.cols());
        for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
            features.row(static_cast<Eigen::Index>(j)) = g.features.row(sub.nodes[j]);
            local_targets.row(static_cast<Eigen::Index>(j)) = targets.row(sub.nodes[j]);
        }
        const AdjacencyView adj = sub.adjacency();
        auto fwd = sage_forward(model, adj, features);
        auto lg = bce_loss(fwd.logits, local_targets, weights.per_part[i], normalizer);
        per_part.push_back(sage_backward(model, fwd.cache, adj, lg.grad));
        total_loss += lg.loss;
    }
    SageGrads<double> gathered = per_part.front();
    for (std::size_t i = 1; i < per_part.size(); ++i) {
        for (std::size_t l = 0; l < gathered.layers.size(); ++l) {
            gathered.layers[l].message += per_part[i].layers[l].message;
            gathered.layers[l].update += per_part[i].layers[l].update;
        }
        gathered.head += per_part[i].head;
    }
    return {std::move(gathered), total_loss};
}

std::pair<SageGrads<double>, double> full_bce_gradients(const Graph& g,
                                                        const SageModel<double>& model) {
    const Eigen::MatrixXd targets = label_targets(g);
    const double normalizer = static_cast<double>(g.num_nodes);
    const std::vector<double> ones(static_cast<std::size_t>(g.num_nodes), 1.0);
    const AdjacencyView adj = g.adjacency();
    auto fwd = sage_forward(model, adj, g.features);
    auto lg = bce_loss(fwd.logits, targets, ones, normalizer);
    return {sage_backward(model, fwd.cache, adj, lg.grad), lg.loss};
}

}  // namespace

GradEquivReport grad_equivalence(const Graph& g, const VertexCutPartition& part,
                                 const SageModel<double>& model, ReweightScheme scheme) {
    if (!g.has_features() || !g.has_labels())
        throw std::invalid_argument("grad_equivalence: graph needs features and labels");
    if (part.edge_assignment.size() != g.edges.size())
        throw std::invalid_argument("grad_equivalence: partition does not match graph");

    const NodeWeights weights = compute_weights(scheme, g, part);
    auto [g_full, full_loss] = full_bce_gradients(g, model);
    auto [g_gathered, part_loss] = partition_bce_gradients(g, part, model, weights);
    (void)full_loss;
    (void)part_loss;

    GradEquivReport report;
    report.scheme = scheme;
    report.homophily = g.labels.empty() ? 0.0 : homophily_ratio(g);
    double diff_sq = 0.0, ref_sq = 0.0;

    std::vector<const MatX<double>*> full_mats, gathered_mats;
    g_full.for_each_matrix([&](const MatX<double>& m) { full_mats.push_back(&m); });
    g_gathered.for_each_matrix([&](const MatX<double>& m) { gathered_mats.push_back(&m); });
    for (std::size_t k = 0; k < full_mats.size(); ++k) {
        const double d = (*full_mats[k] - *gathered_mats[k]).norm();
        const double r = full_mats[k]->norm();
        report.per_param_error.push_back(r > 0.0 ? d / r : d);
        diff_sq += d * d;
        ref_sq += r * r;
    }
    report.aggregate_error = ref_sq > 0.0 ? std::sqrt(diff_sq / ref_sq) : std::sqrt(diff_sq);
    return report;
}

std::pair<double, double> partition_vs_full_loss(const Graph& g, const VertexCutPartition& part,
                                                 const SageModel<double>& model,
                                                 ReweightScheme scheme) {
    const NodeWeights weights = compute_weights(scheme, g, part);
    auto [g_gathered, part_loss] = partition_bce_gradients(g, part, model, weights);
    auto [g_full, full_loss] = full_bce_gradients(g, model);
    (void)g_gathered;
    (void)g_full;
    return {part_loss, full_loss};
}

std::vector<McCheckRow> mc_replication_check(int num_parts,
                                             const std::vector<std::int64_t>& degrees,
                                             std::size_t trials, std::uint64_t seed) {
    if (num_parts < 1 || num_parts > 64)
        throw std::invalid_argument("mc_replication_check: num_parts must lie in [1, 64]");
    if (trials < 1) throw std::invalid_argument("mc_replication_check: trials must be >= 1");

    std::vector<McCheckRow> rows;
    const double p = static_cast<double>(num_parts);
    for (const std::int64_t d : degrees) {
        if (d < 0) throw std::invalid_argument("mc_replication_check: negative degree");
        Rng rng(substream(seed, "mc.rf", static_cast<std::uint64_t>(d)));
        double sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            std::uint64_t touched = 0;
            for (std::int64_t e = 0; e < d; ++e)
                touched |= 1ULL << rng.next_below(static_cast<std::uint64_t>(num_parts));
            sum += static_cast<double>(std::popcount(touched));
        }
        McCheckRow row;
        row.degree = d;
        row.empirical_mean = sum / static_cast<double>(trials);
        row.expected = expected_rf_random(num_parts, d);
        // Analytic variance of the touched-part count: with q the chance one
        // part sees no edge and q2 the chance a given pair sees none,
        // Var = p q (1-q) + p (p-1) (q2 - q^2). The sample variance would
        // collapse to zero whenever saturation makes every trial identical.
        const double q = std::pow(1.0 - 1.0 / p, static_cast<double>(d));
        const double q2 =
            num_parts >= 2 ? std::pow(1.0 - 2.0 / p, static_cast<double>(d)) : 0.0;
        const double var = p * q * (1.0 - q) + p * (p - 1.0) * (q2 - q * q);
        row.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
        row.z_score = row.std_error > 0.0
                          ? (row.empirical_mean - row.expected) / row.std_error
                          : (row.empirical_mean == row.expected
                                 ? 0.0
                                 : std::numeric_limits<double>::infinity());
        rows.push_back(row);
    }
    return rows;
}

std::vector<ConversionAuditRow> halo_conversion_audit(const Graph& g, int num_parts,
                                                      const std::vector<std::uint64_t>& seeds) {
    if (num_parts < 2) throw std::invalid_argument("halo_conversion_audit: need num_parts >= 2");
    std::vector<ConversionAuditRow> rows;
    for (const std::uint64_t seed : seeds) {
        const EdgeCutPartition ec = partition_edge_cut_greedy(g, num_parts, seed);
        const VertexCutPartition vc = edge_cut_to_vertex_cut(g, ec, seed);
        const ReplicationStats stats = replication_stats(vc, g);
        ConversionAuditRow row;
        row.seed = seed;
        row.total_halo = ec.total_halo();
        row.duplicated_nodes = stats.duplicated_nodes;
        row.pass = row.total_halo > 0
                       ? stats.duplicated_nodes < static_cast<std::int64_t>(row.total_halo)
                       : stats.duplicated_nodes == 0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace sagecut
