#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "sagecut/graph.hpp"
#include "sagecut/rng.hpp"

namespace sagecut {

template <typename Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// One GraphSAGE layer with a mean aggregator:
//   h_v = update * concat(mean({relu(message * h_u), u in N(v)}), h_v)
// message: hidden x in, update: out x (hidden + in). No bias terms.
template <typename Scalar>
struct SageLayer {
    MatX<Scalar> message;
    MatX<Scalar> update;

    Eigen::Index in_dim() const { return message.cols(); }
    Eigen::Index hidden_dim() const { return message.rows(); }
    Eigen::Index out_dim() const { return update.rows(); }
};

// Layer stack plus a linear classifier head (classes x embed). The same
// structure doubles as the gradient container.
template <typename Scalar>
struct SageModel {
    std::vector<SageLayer<Scalar>> layers;
    MatX<Scalar> head;

    Eigen::Index input_dim() const {
        return layers.empty() ? head.cols() : layers.front().in_dim();
    }
    Eigen::Index embed_dim() const { return head.cols(); }
    Eigen::Index num_classes() const { return head.rows(); }
    std::size_t num_layers() const { return layers.size(); }

    template <typename F>
    void for_each_matrix(F&& f) {
        for (auto& layer : layers) {
            f(layer.message);
            f(layer.update);
        }
        f(head);
    }
    template <typename F>
    void for_each_matrix(F&& f) const {
        for (const auto& layer : layers) {
            f(layer.message);
            f(layer.update);
        }
        f(head);
    }

    std::size_t param_count() const {
        std::size_t total = 0;
        for_each_matrix([&](const MatX<Scalar>& m) { total += static_cast<std::size_t>(m.size()); });
        return total;
    }
};

template <typename Scalar>
using SageGrads = SageModel<Scalar>;

// Glorot-uniform initialization from a named substream of the run seed.
template <typename Scalar>
SageModel<Scalar> make_sage_model(Eigen::Index in_dim, const std::vector<int>& hidden_dims,
                                  Eigen::Index num_classes, std::uint64_t seed) {
    if (in_dim < 1 || num_classes < 1)
        throw std::invalid_argument("make_sage_model: dimensions must be positive");
    for (const int h : hidden_dims)
        if (h < 1) throw std::invalid_argument("make_sage_model: hidden dims must be positive");

    Rng rng(substream(seed, "init"));
    const auto glorot = [&rng](Eigen::Index rows, Eigen::Index cols) {
        const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
        MatX<Scalar> m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                m(r, c) = static_cast<Scalar>(bound * (2.0 * rng.next_double() - 1.0));
        return m;
    };

    SageModel<Scalar> model;
    Eigen::Index in = in_dim;
    for (const int h : hidden_dims) {
        SageLayer<Scalar> layer;
        layer.message = glorot(h, in);
        layer.update = glorot(h, h + in);
        model.layers.push_back(std::move(layer));
        in = h;
    }
    model.head = glorot(num_classes, in);
    return model;
}

template <typename To, typename From>
SageModel<To> model_cast(const SageModel<From>& model) {
    SageModel<To> out;
    out.layers.reserve(model.layers.size());
    for (const auto& layer : model.layers)
        out.layers.push_back(SageLayer<To>{layer.message.template cast<To>(),
                                           layer.update.template cast<To>()});
    out.head = model.head.template cast<To>();
    return out;
}

template <typename Scalar>
SageGrads<Scalar> zeros_like(const SageModel<Scalar>& model) {
    SageGrads<Scalar> out;
    out.layers.reserve(model.layers.size());
    for (const auto& layer : model.layers)
        out.layers.push_back(SageLayer<Scalar>{MatX<Scalar>::Zero(layer.message.rows(), layer.message.cols()),
                                               MatX<Scalar>::Zero(layer.update.rows(), layer.update.cols())});
    out.head = MatX<Scalar>::Zero(model.head.rows(), model.head.cols());
    return out;
}

template <typename Scalar>
bool same_shapes(const SageModel<Scalar>& a, const SageModel<Scalar>& b) {
    if (a.layers.size() != b.layers.size()) return false;
    for (std::size_t l = 0; l < a.layers.size(); ++l)
        if (a.layers[l].message.rows() != b.layers[l].message.rows() ||
            a.layers[l].message.cols() != b.layers[l].message.cols() ||
            a.layers[l].update.rows() != b.layers[l].update.rows() ||
            a.layers[l].update.cols() != b.layers[l].update.cols())
            return false;
    return a.head.rows() == b.head.rows() && a.head.cols() == b.head.cols();
}

template <typename Scalar>
bool all_finite(const SageModel<Scalar>& model) {
    bool ok = true;
    model.for_each_matrix([&](const MatX<Scalar>& m) { ok = ok && m.allFinite(); });
    return ok;
}

template <typename Scalar>
double grad_norm(const SageGrads<Scalar>& grads) {
    double sq = 0.0;
    grads.for_each_matrix([&](const MatX<Scalar>& m) {
        sq += m.template cast<double>().squaredNorm();
    });
    return std::sqrt(sq);
}

// Everything backward needs: layer inputs, pre-ReLU messages, neighbor
// means, and the per-node inverse (masked) degree actually used.
template <typename Scalar>
struct ForwardCache {
    std::vector<MatX<Scalar>> inputs;
    std::vector<MatX<Scalar>> messages_pre;
    std::vector<MatX<Scalar>> neighbor_means;
    MatX<Scalar> embeddings;
    std::vector<Scalar> inv_degree;
    NodeId num_nodes = 0;
};

template <typename Scalar>
struct ForwardResult {
    MatX<Scalar> logits;
    ForwardCache<Scalar> cache;
};

// Per-node masked degrees under an optional edge-keep mask over the view's
// edge id space.
inline std::vector<NodeId> masked_degrees(const AdjacencyView& adj,
                                          std::span<const std::uint8_t> edge_mask) {
    std::vector<NodeId> deg(static_cast<std::size_t>(adj.num_nodes), 0);
    for (NodeId v = 0; v < adj.num_nodes; ++v) {
        if (edge_mask.empty()) {
            deg[static_cast<std::size_t>(v)] = adj.degree(v);
        } else {
            NodeId d = 0;
            for (const EdgeId e : adj.incident_edges(v))
                if (edge_mask[static_cast<std::size_t>(e)]) ++d;
            deg[static_cast<std::size_t>(v)] = d;
        }
    }
    return deg;
}

// Mean over an empty (or fully masked) neighborhood is the zero vector; the
// concat branch then carries the node's own representation through.
template <typename Scalar>
ForwardResult<Scalar> sage_forward(const SageModel<Scalar>& model, const AdjacencyView& adj,
                                   const MatX<Scalar>& features,
                                   std::span<const std::uint8_t> edge_mask = {}) {
    if (features.rows() != adj.num_nodes)
        throw std::invalid_argument("sage_forward: feature rows != node count");
    if (features.cols() != model.input_dim())
        throw std::invalid_argument("sage_forward: feature dim does not match model input dim");
    if (!edge_mask.empty() && edge_mask.size() != adj.num_edges())
        throw std::invalid_argument("sage_forward: edge mask length != edge count");
    if (!features.allFinite()) throw std::invalid_argument("sage_forward: non-finite features");

    const NodeId n = adj.num_nodes;
    ForwardResult<Scalar> out;
    ForwardCache<Scalar>& cache = out.cache;
    cache.num_nodes = n;

    const std::vector<NodeId> deg = masked_degrees(adj, edge_mask);
    cache.inv_degree.resize(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        const NodeId d = deg[static_cast<std::size_t>(v)];
        cache.inv_degree[static_cast<std::size_t>(v)] =
            d > 0 ? Scalar(1) / static_cast<Scalar>(d) : Scalar(0);
    }

    MatX<Scalar> h = features;
    for (const SageLayer<Scalar>& layer : model.layers) {
        cache.inputs.push_back(h);
        MatX<Scalar> msg_pre = h * layer.message.transpose();  // n x hidden
        MatX<Scalar> msg = msg_pre.cwiseMax(Scalar(0));
        MatX<Scalar> mean = MatX<Scalar>::Zero(n, layer.hidden_dim());
        for (NodeId v = 0; v < n; ++v) {
            const auto nbrs = adj.neighbors_of(v);
            const auto eids = adj.incident_edges(v);
            for (std::size_t k = 0; k < nbrs.size(); ++k)
                if (edge_mask.empty() || edge_mask[static_cast<std::size_t>(eids[k])])
                    mean.row(v) += msg.row(nbrs[k]);
            mean.row(v) *= cache.inv_degree[static_cast<std::size_t>(v)];
        }
        const Eigen::Index hidden = layer.hidden_dim();
        const Eigen::Index in = layer.in_dim();
        MatX<Scalar> h_next = mean * layer.update.leftCols(hidden).transpose() +
                              h * layer.update.rightCols(in).transpose();
        cache.messages_pre.push_back(std::move(msg_pre));
        cache.neighbor_means.push_back(std::move(mean));
        h = std::move(h_next);
    }
    cache.embeddings = h;
    out.logits = h * model.head.transpose();
    return out;
}

// Exact gradients of sum_j <logit_grad_j, logits_j> with respect to every
// parameter. The cache must come from a forward pass over the same view.
template <typename Scalar>
SageGrads<Scalar> sage_backward(const SageModel<Scalar>& model, const ForwardCache<Scalar>& cache,
                                const AdjacencyView& adj, const MatX<Scalar>& logit_grad,
                                std::span<const std::uint8_t> edge_mask = {}) {
    if (cache.num_nodes != adj.num_nodes || cache.inputs.size() != model.layers.size())
        throw std::invalid_argument("sage_backward: cache does not match model/view");
    if (logit_grad.rows() != adj.num_nodes || logit_grad.cols() != model.num_classes())
        throw std::invalid_argument("sage_backward: logit grad shape mismatch");
    if (!edge_mask.empty() && edge_mask.size() != adj.num_edges())
        throw std::invalid_argument("sage_backward: edge mask length != edge count");

    const NodeId n = adj.num_nodes;
    SageGrads<Scalar> grads = zeros_like(model);
    grads.head = logit_grad.transpose() * cache.embeddings;
    MatX<Scalar> dh = logit_grad * model.head;  // n x embed

    for (std::size_t l = model.layers.size(); l-- > 0;) {
        const SageLayer<Scalar>& layer = model.layers[l];
        const Eigen::Index hidden = layer.hidden_dim();
        const Eigen::Index in = layer.in_dim();
        const MatX<Scalar>& h_in = cache.inputs[l];
        const MatX<Scalar>& mean = cache.neighbor_means[l];
        const MatX<Scalar>& msg_pre = cache.messages_pre[l];

        SageLayer<Scalar>& layer_grads = grads.layers[l];
        layer_grads.update.leftCols(hidden) = dh.transpose() * mean;
        layer_grads.update.rightCols(in) = dh.transpose() * h_in;

        MatX<Scalar> dmean = dh * layer.update.leftCols(hidden);  // n x hidden
        MatX<Scalar> dh_direct = dh * layer.update.rightCols(in);  // n x in

        MatX<Scalar> dmsg = MatX<Scalar>::Zero(n, hidden);
        for (NodeId v = 0; v < n; ++v) {
            const Scalar inv_d = cache.inv_degree[static_cast<std::size_t>(v)];
            if (inv_d == Scalar(0)) continue;
            const auto nbrs = adj.neighbors_of(v);
            const auto eids = adj.incident_edges(v);
            for (std::size_t k = 0; k < nbrs.size(); ++k)
                if (edge_mask.empty() || edge_mask[static_cast<std::size_t>(eids[k])])
                    dmsg.row(nbrs[k]) += inv_d * dmean.row(v);
        }
        MatX<Scalar> dz =
            ((msg_pre.array() > Scalar(0)).template cast<Scalar>() * dmsg.array()).matrix();
        layer_grads.message = dz.transpose() * h_in;
        dh = dh_direct + dz * layer.message;
    }
    return grads;
}

enum class LossKind { softmax_ce, bce };

template <typename Scalar>
struct LossGrad {
    double loss = 0.0;
    MatX<Scalar> grad;  // d loss / d logits
};

namespace detail {
template <typename Scalar>
void check_loss_inputs(const MatX<Scalar>& logits, std::span<const double> weights,
                       double normalizer) {
    if (weights.size() != static_cast<std::size_t>(logits.rows()))
        throw std::invalid_argument("loss: weight vector length != node count");
    for (const double w : weights)
        if (!(w >= 0.0)) throw std::invalid_argument("loss: node weights must be >= 0");
    if (!(normalizer > 0.0)) throw std::invalid_argument("loss: normalizer must be positive");
}
}  // namespace detail

// loss = sum_j w_j * ce(logits_j, y_j) / normalizer, numerically stable
// log-sum-exp form.
template <typename Scalar>
LossGrad<Scalar> softmax_ce_loss(const MatX<Scalar>& logits, std::span<const NodeId> class_ids,
                                 std::span<const double> weights, double normalizer) {
    detail::check_loss_inputs(logits, weights, normalizer);
    if (class_ids.size() != static_cast<std::size_t>(logits.rows()))
        throw std::invalid_argument("loss: label vector length != node count");

    LossGrad<Scalar> out;
    out.grad = MatX<Scalar>::Zero(logits.rows(), logits.cols());
    double total = 0.0;
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
        const NodeId y = class_ids[static_cast<std::size_t>(r)];
        if (y < 0 || y >= logits.cols())
            throw std::invalid_argument("loss: class id out of range");
        const double w = weights[static_cast<std::size_t>(r)];
        if (w == 0.0) continue;
        const Scalar row_max = logits.row(r).maxCoeff();
        Scalar sum_exp = Scalar(0);
        for (Eigen::Index c = 0; c < logits.cols(); ++c)
            sum_exp += std::exp(logits(r, c) - row_max);
        const Scalar lse = row_max + std::log(sum_exp);
        total += w * static_cast<double>(lse - logits(r, y));
        const Scalar scale = static_cast<Scalar>(w / normalizer);
        for (Eigen::Index c = 0; c < logits.cols(); ++c)
            out.grad(r, c) = scale * (std::exp(logits(r, c) - lse) - Scalar(c == y ? 1 : 0));
    }
    out.loss = total / normalizer;
    return out;
}

// Element-wise sigmoid binary cross-entropy against a 0/1 target matrix.
template <typename Scalar>
LossGrad<Scalar> bce_loss(const MatX<Scalar>& logits, const MatX<Scalar>& targets,
                          std::span<const double> weights, double normalizer) {
    detail::check_loss_inputs(logits, weights, normalizer);
    if (targets.rows() != logits.rows() || targets.cols() != logits.cols())
        throw std::invalid_argument("loss: target matrix shape mismatch");

    LossGrad<Scalar> out;
    out.grad = MatX<Scalar>::Zero(logits.rows(), logits.cols());
    double total = 0.0;
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
        const double w = weights[static_cast<std::size_t>(r)];
        if (w == 0.0) continue;
        const Scalar scale = static_cast<Scalar>(w / normalizer);
        for (Eigen::Index c = 0; c < logits.cols(); ++c) {
            const Scalar z = logits(r, c);
            const Scalar y = targets(r, c);
            if (y != Scalar(0) && y != Scalar(1))
                throw std::invalid_argument("loss: bce targets must be 0 or 1");
            const Scalar softplus =
                std::max(z, Scalar(0)) + std::log1p(std::exp(-std::abs(z)));
            total += w * static_cast<double>(softplus - z * y);
            const Scalar sigmoid = z >= Scalar(0)
                                       ? Scalar(1) / (Scalar(1) + std::exp(-z))
                                       : std::exp(z) / (Scalar(1) + std::exp(z));
            out.grad(r, c) = scale * (sigmoid - y);
        }
    }
    out.loss = total / normalizer;
    return out;
}

struct AdamConfig {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

template <typename Scalar>
struct AdamState {
    SageModel<Scalar> first_moment;
    SageModel<Scalar> second_moment;
    std::int64_t step = 0;
};

template <typename Scalar>
AdamState<Scalar> make_adam_state(const SageModel<Scalar>& model) {
    return AdamState<Scalar>{zeros_like(model), zeros_like(model), 0};
}

// Standard bias-corrected Adam update.
template <typename Scalar>
void adam_step(SageModel<Scalar>& model, const SageGrads<Scalar>& grads, AdamState<Scalar>& state,
               const AdamConfig& cfg) {
    if (!same_shapes(model, grads) || !same_shapes(model, state.first_moment))
        throw std::invalid_argument("adam_step: shape mismatch");
    if (!all_finite(grads)) throw std::invalid_argument("adam_step: non-finite gradient");

    ++state.step;
    const auto b1 = static_cast<Scalar>(cfg.beta1);
    const auto b2 = static_cast<Scalar>(cfg.beta2);
    const auto correction1 =
        static_cast<Scalar>(1.0 - std::pow(cfg.beta1, static_cast<double>(state.step)));
    const auto correction2 =
        static_cast<Scalar>(1.0 - std::pow(cfg.beta2, static_cast<double>(state.step)));
    const auto lr = static_cast<Scalar>(cfg.learning_rate);
    const auto eps = static_cast<Scalar>(cfg.epsilon);

    const auto update_one = [&](MatX<Scalar>& param, const MatX<Scalar>& grad, MatX<Scalar>& m,
                                MatX<Scalar>& v) {
        m = b1 * m + (Scalar(1) - b1) * grad;
        v = (b2 * v.array() + (Scalar(1) - b2) * grad.array().square()).matrix();
        const auto m_hat = m.array() / correction1;
        const auto v_hat = v.array() / correction2;
        param.array() -= lr * m_hat / (v_hat.sqrt() + eps);
    };
    for (std::size_t l = 0; l < model.layers.size(); ++l) {
        update_one(model.layers[l].message, grads.layers[l].message,
                   state.first_moment.layers[l].message, state.second_moment.layers[l].message);
        update_one(model.layers[l].update, grads.layers[l].update,
                   state.first_moment.layers[l].update, state.second_moment.layers[l].update);
    }
    update_one(model.head, grads.head, state.first_moment.head, state.second_moment.head);
}

}  // namespace sagecut
