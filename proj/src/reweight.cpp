#include "sagecut/reweight.hpp"

#include <stdexcept>

namespace sagecut {

std::string to_string(ReweightScheme scheme) {
    switch (scheme) {
        case ReweightScheme::dar: return "dar";
        case ReweightScheme::vanilla_inv: return "vanilla_inv";
        case ReweightScheme::none: return "none";
    }
    return "?";
}

ReweightScheme reweight_scheme_from_string(const std::string& name) {
    if (name == "dar") return ReweightScheme::dar;
    if (name == "vanilla_inv") return ReweightScheme::vanilla_inv;
    if (name == "none") return ReweightScheme::none;
    throw std::invalid_argument("unknown reweight scheme: " + name);
}

NodeWeights dar_weights(const Graph& g, const VertexCutPartition& part) {
    if (part.edge_assignment.size() != g.edges.size())
        throw std::invalid_argument("dar_weights: partition does not match graph");
    NodeWeights w;
    w.scheme = ReweightScheme::dar;
    w.per_part.reserve(part.parts.size());
    for (const PartSubgraph& sub : part.parts) {
        std::vector<double> weights(sub.nodes.size());
        for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
            const NodeId global_deg = g.degree(sub.nodes[j]);
            const NodeId local_deg = sub.local_degrees[j];
            if (global_deg == 0) {
                if (local_deg != 0)
                    throw std::logic_error("dar_weights: local edges on a degree-0 node");
                weights[j] = 1.0;  // round-robin isolated node keeps its supervision
            } else {
                weights[j] = static_cast<double>(local_deg) / static_cast<double>(global_deg);
            }
        }
        w.per_part.push_back(std::move(weights));
    }
    return w;
}

NodeWeights vanilla_inv_weights(const VertexCutPartition& part) {
    NodeWeights w;
    w.scheme = ReweightScheme::vanilla_inv;
    if (part.parts.empty()) return w;
    std::vector<int> rf(part.parts.front().global_to_local.size(), 0);
    for (const PartSubgraph& sub : part.parts)
        for (const NodeId v : sub.nodes) ++rf[static_cast<std::size_t>(v)];
    w.per_part.reserve(part.parts.size());
    for (const PartSubgraph& sub : part.parts) {
        std::vector<double> weights(sub.nodes.size());
        for (std::size_t j = 0; j < sub.nodes.size(); ++j)
            weights[j] = 1.0 / static_cast<double>(rf[static_cast<std::size_t>(sub.nodes[j])]);
        w.per_part.push_back(std::move(weights));
    }
    return w;
}

NodeWeights unit_weights(const VertexCutPartition& part) {
    NodeWeights w;
    w.scheme = ReweightScheme::none;
    w.per_part.reserve(part.parts.size());
    for (const PartSubgraph& sub : part.parts)
        w.per_part.emplace_back(sub.nodes.size(), 1.0);
    return w;
}

NodeWeights compute_weights(ReweightScheme scheme, const Graph& g,
                            const VertexCutPartition& part) {
    switch (scheme) {
        case ReweightScheme::dar: return dar_weights(g, part);
        case ReweightScheme::vanilla_inv: return vanilla_inv_weights(part);
        case ReweightScheme::none: return unit_weights(part);
    }
    throw std::logic_error("compute_weights: bad scheme");
}

}  // namespace sagecut
