#include "sagecut/trainer.hpp"

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace sagecut {

using nlohmann::json;

std::vector<int> resolved_hidden_dims(const TrainConfig& config) {
    if (config.layers == 0) return {};
    if (config.hidden.size() == 1) return std::vector<int>(static_cast<std::size_t>(config.layers),
                                                           config.hidden.front());
    if (config.hidden.size() != static_cast<std::size_t>(config.layers))
        throw std::invalid_argument("hidden dims must match layer count (or be a single value)");
    return config.hidden;
}

void validate_train_config(const TrainConfig& config) {
    if (config.layers < 0) throw std::invalid_argument("layers must be >= 0");
    if (config.epochs < 0) throw std::invalid_argument("epochs must be >= 0");
    if (!(config.learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
    if (config.workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (config.layers > 0 && config.hidden.empty())
        throw std::invalid_argument("hidden dims required for layers > 0");
    for (const int h : config.hidden)
        if (h < 1) throw std::invalid_argument("hidden dims must be positive");
    if (config.use_dropedge) {
        if (config.dropedge_k < 1) throw std::invalid_argument("dropedge_k must be >= 1");
        if (config.drop_ratio < 0.0 || config.drop_ratio >= 1.0)
            throw std::invalid_argument("drop_ratio must lie in [0, 1)");
    }
    (void)resolved_hidden_dims(config);
}

CommReport comm_volume(CommMode mode, int num_parts, std::size_t param_count,
                       std::size_t num_layers, std::size_t hidden_dim, std::size_t total_halo) {
    if (num_parts < 1) throw std::invalid_argument("comm_volume: num_parts must be >= 1");
    CommReport report;
    report.mode = mode;
    report.gradient_floats =
        static_cast<std::uint64_t>(num_parts) * static_cast<std::uint64_t>(param_count);
    if (mode == CommMode::halo_sync_model)
        report.embedding_floats = 2ULL * num_layers * total_halo * hidden_dim;
    report.floats_per_iteration = report.gradient_floats + report.embedding_floats;
    return report;
}

namespace detail {

void require_trainable(const Graph& g) {
    if (!g.has_features()) throw std::invalid_argument("training requires node features");
    if (!g.has_labels()) throw std::invalid_argument("training requires labels");
    if (!g.has_masks()) throw std::invalid_argument("training requires split masks");
}

double train_node_count(const Graph& g) {
    std::size_t count = 0;
    for (const auto m : g.train_mask) count += m;
    if (count == 0) throw std::invalid_argument("training requires a non-empty train mask");
    return static_cast<double>(count);
}

double metric_from_logits(const MatX<double>& logits, const Graph& g,
                          std::span<const std::uint8_t> mask) {
    std::size_t masked = 0;
    for (const auto m : mask) masked += m;
    if (masked == 0) return 0.0;

    if (g.is_multilabel()) {
        // Micro-F1 with positives at logit > 0.
        std::int64_t tp = 0, fp = 0, fn = 0;
        for (Eigen::Index v = 0; v < logits.rows(); ++v) {
            if (!mask[static_cast<std::size_t>(v)]) continue;
            for (Eigen::Index c = 0; c < logits.cols(); ++c) {
                const bool pred = logits(v, c) > 0.0;
                const bool truth = g.multilabels(v, c) != 0.0;
                tp += pred && truth;
                fp += pred && !truth;
                fn += !pred && truth;
            }
        }
        const std::int64_t denom = 2 * tp + fp + fn;
        return denom == 0 ? 0.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
    }

    std::size_t correct = 0;
    for (Eigen::Index v = 0; v < logits.rows(); ++v) {
        if (!mask[static_cast<std::size_t>(v)]) continue;
        Eigen::Index best = 0;
        logits.row(v).maxCoeff(&best);
        correct += best == g.labels[static_cast<std::size_t>(v)];
    }
    return static_cast<double>(correct) / static_cast<double>(masked);
}

}  // namespace detail

double evaluate(const SageModel<double>& model, const Graph& g,
                std::span<const std::uint8_t> mask) {
    if (!g.has_features() || !g.has_labels())
        throw std::invalid_argument("evaluate: graph lacks features or labels");
    if (mask.size() != static_cast<std::size_t>(g.num_nodes))
        throw std::invalid_argument("evaluate: mask length != node count");
    std::size_t masked = 0;
    for (const auto m : mask) masked += m;
    if (masked == 0) throw std::invalid_argument("evaluate: empty mask");
    const auto fwd = sage_forward(model, g.adjacency(), g.features);
    return detail::metric_from_logits(fwd.logits, g, mask);
}

TrainResult train_full_graph(const Graph& g, const TrainConfig& config) {
    if (config.precision == Precision::f32) return detail::train_full_graph_impl<float>(g, config);
    return detail::train_full_graph_impl<double>(g, config);
}

TrainResult train_cofree(const Graph& g, const VertexCutPartition& part,
                         const TrainConfig& config) {
    if (config.precision == Precision::f32)
        return detail::train_cofree_impl<float>(g, part, config);
    return detail::train_cofree_impl<double>(g, part, config);
}

void write_metrics_jsonl(const std::vector<EpochMetrics>& metrics, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const EpochMetrics& m : metrics) {
        json row;
        row["epoch"] = m.epoch;
        row["train_loss"] = m.train_loss;
        row["train_metric"] = m.train_metric;
        row["val_metric"] = m.val_metric;
        row["test_metric"] = m.test_metric;
        row["grad_norm"] = m.grad_norm;
        row["comm_floats"] = m.comm_floats;
        out << row.dump() << '\n';
    }
}

}  // namespace sagecut
