#include "sagecut/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sagecut/rng.hpp"

namespace sagecut {

namespace {

void attach_split_masks(Graph& g, std::uint64_t seed) {
    std::vector<NodeId> order(static_cast<std::size_t>(g.num_nodes));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(substream(seed, "split"));
    rng.shuffle(order);
    const auto n = static_cast<std::size_t>(g.num_nodes);
    const std::size_t n_train = (n * 6) / 10;
    const std::size_t n_val = (n * 2) / 10;
    g.train_mask.assign(n, 0);
    g.val_mask.assign(n, 0);
    g.test_mask.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<std::size_t>(order[i]);
        if (i < n_train)
            g.train_mask[v] = 1;
        else if (i < n_train + n_val)
            g.val_mask[v] = 1;
        else
            g.test_mask[v] = 1;
    }
}

}  // namespace

Graph gen_homophilic_sbm(const SbmSpec& spec) {
    if (spec.num_classes < 1) throw std::invalid_argument("sbm: num_classes must be >= 1");
    if (spec.num_nodes < spec.num_classes)
        throw std::invalid_argument("sbm: need at least one node per class");
    if (spec.p_in < 0.0 || spec.p_in > 1.0 || spec.p_out < 0.0 || spec.p_out > 1.0)
        throw std::invalid_argument("sbm: probabilities must lie in [0,1]");
    if (spec.feature_noise < 0.0) throw std::invalid_argument("sbm: feature_noise must be >= 0");
    const int d = spec.feature_dim > 0 ? spec.feature_dim : spec.num_classes;
    if (d < spec.num_classes)
        throw std::invalid_argument("sbm: feature_dim must be >= num_classes");

    const NodeId n = spec.num_nodes;
    std::vector<NodeId> classes(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) classes[static_cast<std::size_t>(v)] = v % spec.num_classes;

    Rng edge_rng(substream(spec.seed, "sbm.edges"));
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = i + 1; j < n; ++j) {
            const double p = classes[static_cast<std::size_t>(i)] ==
                                     classes[static_cast<std::size_t>(j)]
                                 ? spec.p_in
                                 : spec.p_out;
            if (edge_rng.next_double() < p) edges.push_back(Edge{i, j});
        }

    // Rewire isolated draws: one edge to a random same-class partner keeps
    // every node trainable without disturbing homophily.
    std::vector<NodeId> deg(static_cast<std::size_t>(n), 0);
    for (const Edge& e : edges) {
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
    }
    Rng rewire_rng(substream(spec.seed, "sbm.rewire"));
    for (NodeId v = 0; v < n; ++v) {
        if (deg[static_cast<std::size_t>(v)] > 0) continue;
        std::vector<NodeId> candidates;
        for (NodeId u = 0; u < n; ++u)
            if (u != v && classes[static_cast<std::size_t>(u)] == classes[static_cast<std::size_t>(v)])
                candidates.push_back(u);
        if (candidates.empty())
            for (NodeId u = 0; u < n; ++u)
                if (u != v) candidates.push_back(u);
        const NodeId u =
            candidates[static_cast<std::size_t>(rewire_rng.next_below(candidates.size()))];
        edges.push_back(Edge{v, u});
        ++deg[static_cast<std::size_t>(v)];
        ++deg[static_cast<std::size_t>(u)];
    }

    auto [g, report] = build_graph(n, std::move(edges));
    (void)report;

    g.labels = std::move(classes);
    g.num_classes = spec.num_classes;

    Rng feat_rng(substream(spec.seed, "sbm.features"));
    g.features = Eigen::MatrixXd::Zero(n, d);
    for (NodeId v = 0; v < n; ++v) {
        g.features(v, g.labels[static_cast<std::size_t>(v)]) = 1.0;
        for (int c = 0; c < d; ++c)
            g.features(v, c) += spec.feature_noise * feat_rng.next_gaussian();
    }

    attach_split_masks(g, spec.seed);
    return g;
}

Graph gen_power_law(const PowerLawSpec& spec) {
    if (spec.exponent <= 1.0) throw std::invalid_argument("power_law: exponent must exceed 1");
    if (spec.min_degree < 1) throw std::invalid_argument("power_law: min_degree must be >= 1");
    if (spec.num_nodes < 2) throw std::invalid_argument("power_law: need at least 2 nodes");
    if (spec.min_degree >= spec.num_nodes)
        throw std::invalid_argument("power_law: infeasible weight sequence (min_degree >= n)");

    const NodeId n = spec.num_nodes;
    Rng weight_rng(substream(spec.seed, "pl.weights"));
    std::vector<double> w(static_cast<std::size_t>(n));
    const double pareto_shape = spec.exponent - 1.0;
    for (auto& wi : w) {
        const double u = weight_rng.next_open_double();
        wi = static_cast<double>(spec.min_degree) * std::pow(u, -1.0 / pareto_shape);
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    // Cap so no single pair probability saturates badly.
    const double cap = std::sqrt(total);
    for (auto& wi : w) wi = std::min(wi, cap);
    const double total_capped = std::accumulate(w.begin(), w.end(), 0.0);

    Rng edge_rng(substream(spec.seed, "pl.edges"));
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        const double wi = w[static_cast<std::size_t>(i)];
        for (NodeId j = i + 1; j < n; ++j) {
            const double p = std::min(1.0, wi * w[static_cast<std::size_t>(j)] / total_capped);
            if (edge_rng.next_double() < p) edges.push_back(Edge{i, j});
        }
    }

    std::vector<NodeId> deg(static_cast<std::size_t>(n), 0);
    for (const Edge& e : edges) {
        ++deg[static_cast<std::size_t>(e.u)];
        ++deg[static_cast<std::size_t>(e.v)];
    }
    Rng rewire_rng(substream(spec.seed, "pl.rewire"));
    for (NodeId v = 0; v < n; ++v) {
        if (deg[static_cast<std::size_t>(v)] > 0) continue;
        NodeId u = v;
        while (u == v) u = static_cast<NodeId>(rewire_rng.next_below(static_cast<std::uint64_t>(n)));
        edges.push_back(Edge{v, u});
        ++deg[static_cast<std::size_t>(v)];
        ++deg[static_cast<std::size_t>(u)];
    }

    auto [g, report] = build_graph(n, std::move(edges));
    (void)report;
    return g;
}

double fit_power_law_exponent(const std::vector<NodeId>& degrees, NodeId d_min) {
    if (d_min < 1) throw std::invalid_argument("fit_power_law_exponent: d_min must be >= 1");
    double log_sum = 0.0;
    std::size_t count = 0;
    for (const NodeId d : degrees) {
        if (d < d_min) continue;
        log_sum += std::log(static_cast<double>(d) / (static_cast<double>(d_min) - 0.5));
        ++count;
    }
    if (count == 0) throw std::invalid_argument("fit_power_law_exponent: no degrees above cutoff");
    return 1.0 + static_cast<double>(count) / log_sum;
}

}  // namespace sagecut
