#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "sagecut/dropedge.hpp"
#include "sagecut/graph.hpp"
#include "sagecut/nn.hpp"
#include "sagecut/partition.hpp"
#include "sagecut/reweight.hpp"

namespace sagecut {

enum class Precision { f64, f32 };

struct TrainConfig {
    int layers = 2;
    std::vector<int> hidden = {32};  // broadcast to all layers when size 1
    int epochs = 100;
    double learning_rate = 0.01;
    LossKind loss = LossKind::softmax_ce;
    ReweightScheme reweight = ReweightScheme::dar;
    bool use_dropedge = false;
    int dropedge_k = 10;
    double drop_ratio = 0.5;
    std::uint64_t seed = 0;
    Precision precision = Precision::f64;
    int workers = 1;
};

std::vector<int> resolved_hidden_dims(const TrainConfig& config);
void validate_train_config(const TrainConfig& config);

struct EpochMetrics {
    int epoch = 0;
    double train_loss = 0.0;
    double train_metric = 0.0;
    double val_metric = 0.0;
    double test_metric = 0.0;
    double grad_norm = 0.0;
    std::uint64_t comm_floats = 0;
};

enum class CommMode { cofree, halo_sync_model };

struct CommReport {
    CommMode mode = CommMode::cofree;
    std::uint64_t floats_per_iteration = 0;
    std::uint64_t gradient_floats = 0;   // parameter-gradient traffic
    std::uint64_t embedding_floats = 0;  // halo embedding traffic (model only)
};

// cofree: p * |theta| per iteration (the gradient gather is the only
// cross-worker traffic). halo_sync_model: the same gather plus
// 2 * L * total_halo * hidden_dim embedding floats (forward + backward sync
// per layer).
CommReport comm_volume(CommMode mode, int num_parts, std::size_t param_count,
                       std::size_t num_layers, std::size_t hidden_dim, std::size_t total_halo);

// Per-iteration cross-worker float counters observed by the trainer; in
// cofree training only parameter gradients ever cross, so embedding_floats
// stays zero.
struct CommAudit {
    std::vector<std::uint64_t> gradient_floats_per_epoch;
    std::uint64_t embedding_floats = 0;
};

struct TrainResult {
    SageModel<double> model;
    std::vector<EpochMetrics> metrics;
    CommAudit audit;
};

// Elementwise sum in ascending partition order (deterministic reduction).
template <typename Scalar>
SageGrads<Scalar> gather_gradients(const std::vector<SageGrads<Scalar>>& per_partition) {
    if (per_partition.empty()) throw std::invalid_argument("gather_gradients: empty input");
    for (const auto& grads : per_partition)
        if (!same_shapes(per_partition.front(), grads))
            throw std::invalid_argument("gather_gradients: shape mismatch");
    SageGrads<Scalar> total = per_partition.front();
    for (std::size_t i = 1; i < per_partition.size(); ++i) {
        for (std::size_t l = 0; l < total.layers.size(); ++l) {
            total.layers[l].message += per_partition[i].layers[l].message;
            total.layers[l].update += per_partition[i].layers[l].update;
        }
        total.head += per_partition[i].head;
    }
    return total;
}

// Full-graph metric over one split mask: accuracy for multi-class labels,
// micro-F1 for multi-label.
double evaluate(const SageModel<double>& model, const Graph& g,
                std::span<const std::uint8_t> mask);

// Full-graph training: the oracle communication-free training is verified
// against.
TrainResult train_full_graph(const Graph& g, const TrainConfig& config);

// Simulated communication-free data-parallel training: each partition worker
// computes a reweighted loss on its own subgraph (optionally under a
// preselected edge-drop mask), exact gradients are gathered by summation in
// partition order, and a single Adam step updates the shared parameters. No
// node embeddings cross worker boundaries.
TrainResult train_cofree(const Graph& g, const VertexCutPartition& part,
                         const TrainConfig& config);

void write_metrics_jsonl(const std::vector<EpochMetrics>& metrics, const std::string& path);

// The mask set one partition worker trains under; also used by the CLI's
// debug dump so the dumped masks are exactly the trained ones.
inline DropEdgeMaskSet partition_mask_set(const PartSubgraph& sub, const TrainConfig& config,
                                          std::size_t part_index) {
    return precompute_masks(sub.edges.size(), config.dropedge_k, config.drop_ratio,
                            substream(config.seed, "dropedge", part_index));
}

namespace detail {

struct SplitMetrics {
    double train = 0.0, val = 0.0, test = 0.0;
};

double metric_from_logits(const MatX<double>& logits, const Graph& g,
                          std::span<const std::uint8_t> mask);

template <typename Scalar>
SplitMetrics evaluate_splits(const SageModel<Scalar>& model, const Graph& g) {
    const auto fwd = sage_forward(model, g.adjacency(),
                                  MatX<Scalar>(g.features.template cast<Scalar>()));
    const MatX<double> logits = fwd.logits.template cast<double>();
    return SplitMetrics{metric_from_logits(logits, g, g.train_mask),
                        metric_from_logits(logits, g, g.val_mask),
                        metric_from_logits(logits, g, g.test_mask)};
}

void require_trainable(const Graph& g);
double train_node_count(const Graph& g);

// Immutable per-partition training inputs, shared read-only by workers.
template <typename Scalar>
struct PartitionInputs {
    MatX<Scalar> features;
    std::vector<NodeId> class_ids;  // softmax_ce
    MatX<Scalar> targets;           // bce
    std::vector<double> loss_weights;
    DropEdgeMaskSet dropedge;
};

template <typename Scalar>
LossGrad<Scalar> loss_dispatch(LossKind kind, const MatX<Scalar>& logits,
                               std::span<const NodeId> class_ids, const MatX<Scalar>& targets,
                               std::span<const double> weights, double normalizer) {
    if (kind == LossKind::softmax_ce)
        return softmax_ce_loss(logits, class_ids, weights, normalizer);
    return bce_loss(logits, targets, weights, normalizer);
}

template <typename Scalar>
TrainResult train_full_graph_impl(const Graph& g, const TrainConfig& config) {
    validate_train_config(config);
    require_trainable(g);
    if (config.loss == LossKind::softmax_ce && g.labels.empty())
        throw std::invalid_argument("softmax_ce requires multi-class labels");
    const double normalizer = train_node_count(g);

    SageModel<Scalar> model = make_sage_model<Scalar>(
        g.features.cols(), resolved_hidden_dims(config), g.num_classes, config.seed);
    AdamState<Scalar> adam = make_adam_state(model);
    const AdamConfig adam_cfg{config.learning_rate, 0.9, 0.999, 1e-8};

    const MatX<Scalar> features = g.features.template cast<Scalar>();
    const MatX<Scalar> targets =
        config.loss == LossKind::bce ? MatX<Scalar>(label_targets(g).template cast<Scalar>())
                                     : MatX<Scalar>();
    std::vector<double> weights(static_cast<std::size_t>(g.num_nodes), 0.0);
    for (NodeId v = 0; v < g.num_nodes; ++v)
        if (g.train_mask[static_cast<std::size_t>(v)]) weights[static_cast<std::size_t>(v)] = 1.0;

    TrainResult result;
    const AdjacencyView adj = g.adjacency();
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        auto fwd = sage_forward(model, adj, features);
        auto lg = loss_dispatch(config.loss, fwd.logits, g.labels, targets, weights, normalizer);
        auto grads = sage_backward(model, fwd.cache, adj, lg.grad);
        const double norm = grad_norm(grads);
        adam_step(model, grads, adam, adam_cfg);

        const SplitMetrics split = evaluate_splits(model, g);
        result.metrics.push_back(EpochMetrics{epoch, lg.loss, split.train, split.val, split.test,
                                              norm, 0});
    }
    result.model = model_cast<double>(model);
    return result;
}

template <typename Scalar>
TrainResult train_cofree_impl(const Graph& g, const VertexCutPartition& part,
                              const TrainConfig& config) {
    validate_train_config(config);
    require_trainable(g);
    if (config.loss == LossKind::softmax_ce && g.labels.empty())
        throw std::invalid_argument("softmax_ce requires multi-class labels");
    if (part.edge_assignment.size() != g.edges.size() || part.parts.empty())
        throw std::invalid_argument("train_cofree: partition does not match graph");
    const double normalizer = train_node_count(g);
    const auto num_parts = static_cast<std::size_t>(part.num_parts);

    const NodeWeights scheme_weights = compute_weights(config.reweight, g, part);
    const Eigen::MatrixXd all_targets =
        config.loss == LossKind::bce ? label_targets(g) : Eigen::MatrixXd();

    std::vector<PartitionInputs<Scalar>> inputs(num_parts);
    for (std::size_t i = 0; i < num_parts; ++i) {
        const PartSubgraph& sub = part.parts[i];
        PartitionInputs<Scalar>& in = inputs[i];
        const auto n_local = static_cast<Eigen::Index>(sub.nodes.size());
        in.features.resize(n_local, g.features.cols());
        if (config.loss == LossKind::bce) in.targets.resize(n_local, all_targets.cols());
        in.loss_weights.resize(sub.nodes.size());
        if (config.loss == LossKind::softmax_ce) in.class_ids.resize(sub.nodes.size());
        for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
            const NodeId v = sub.nodes[j];
            in.features.row(static_cast<Eigen::Index>(j)) =
                g.features.row(v).template cast<Scalar>();
            if (config.loss == LossKind::bce)
                in.targets.row(static_cast<Eigen::Index>(j)) =
                    all_targets.row(v).template cast<Scalar>();
            else
                in.class_ids[j] = g.labels[static_cast<std::size_t>(v)];
            // Every replica of a train node contributes its weighted loss in
            // every partition containing it.
            in.loss_weights[j] = g.train_mask[static_cast<std::size_t>(v)]
                                     ? scheme_weights.per_part[i][j]
                                     : 0.0;
        }
        if (config.use_dropedge) in.dropedge = partition_mask_set(sub, config, i);
    }

    SageModel<Scalar> model = make_sage_model<Scalar>(
        g.features.cols(), resolved_hidden_dims(config), g.num_classes, config.seed);
    AdamState<Scalar> adam = make_adam_state(model);
    const AdamConfig adam_cfg{config.learning_rate, 0.9, 0.999, 1e-8};
    const std::size_t params = model.param_count();

    TrainResult result;
    std::vector<SageGrads<Scalar>> worker_grads(num_parts);
    std::vector<double> worker_loss(num_parts);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::atomic<std::uint64_t> floats_exchanged{0};
        const auto run_worker = [&](std::size_t i) {
            const PartSubgraph& sub = part.parts[i];
            const PartitionInputs<Scalar>& in = inputs[i];
            std::span<const std::uint8_t> mask;
            if (config.use_dropedge) {
                Rng select_rng(substream(config.seed, "dropedge.select", i,
                                         static_cast<std::uint64_t>(epoch)));
                mask = in.dropedge.masks[static_cast<std::size_t>(
                    select_mask(in.dropedge, select_rng))];
            }
            const AdjacencyView adj = sub.adjacency();
            auto fwd = sage_forward(model, adj, in.features, mask);
            auto lg = loss_dispatch(config.loss, fwd.logits, in.class_ids, in.targets,
                                    in.loss_weights, normalizer);
            worker_grads[i] = sage_backward(model, fwd.cache, adj, lg.grad, mask);
            worker_loss[i] = lg.loss;
            // Only the parameter gradients leave the worker.
            floats_exchanged.fetch_add(params, std::memory_order_relaxed);
        };

        const int pool_size = std::min<int>(config.workers, static_cast<int>(num_parts));
        if (pool_size <= 1) {
            for (std::size_t i = 0; i < num_parts; ++i) run_worker(i);
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(static_cast<std::size_t>(pool_size));
            for (int w = 0; w < pool_size; ++w)
                pool.emplace_back([&, w] {
                    try {
                        for (std::size_t i = static_cast<std::size_t>(w); i < num_parts;
                             i += static_cast<std::size_t>(pool_size))
                            run_worker(i);
                    } catch (...) {
                        errors[static_cast<std::size_t>(w)] = std::current_exception();
                    }
                });
            for (auto& t : pool) t.join();  // gather barrier
            for (const auto& err : errors)
                if (err) std::rethrow_exception(err);
        }

        SageGrads<Scalar> gathered = gather_gradients(worker_grads);
        const double norm = grad_norm(gathered);
        double loss = 0.0;
        for (const double l : worker_loss) loss += l;
        adam_step(model, gathered, adam, adam_cfg);

        result.audit.gradient_floats_per_epoch.push_back(
            floats_exchanged.load(std::memory_order_relaxed));
        const SplitMetrics split = evaluate_splits(model, g);
        result.metrics.push_back(EpochMetrics{
            epoch, loss, split.train, split.val, split.test, norm,
            static_cast<std::uint64_t>(num_parts) * static_cast<std::uint64_t>(params)});
    }
    result.model = model_cast<double>(model);
    return result;
}

}  // namespace detail

}  // namespace sagecut
