#pragma once

#include <string>
#include <vector>

#include "sagecut/partition.hpp"

namespace sagecut {

enum class ReweightScheme { dar, vanilla_inv, none };

std::string to_string(ReweightScheme scheme);
ReweightScheme reweight_scheme_from_string(const std::string& name);

// Per-(part, local node) loss weights. For dar and vanilla_inv the weights
// of one node sum to exactly 1 across parts; for none every replica weighs 1.
struct NodeWeights {
    ReweightScheme scheme = ReweightScheme::none;
    std::vector<std::vector<double>> per_part;  // aligned to local node ids
};

// Degree-aware weights: replica of node j in part i weighs
// local_degree / global_degree. Isolated nodes (round-robin placed) weigh 1.
NodeWeights dar_weights(const Graph& g, const VertexCutPartition& part);

// Every replica of node j weighs 1 / (number of parts containing j).
NodeWeights vanilla_inv_weights(const VertexCutPartition& part);

// All replicas weigh 1 (no reweighting).
NodeWeights unit_weights(const VertexCutPartition& part);

NodeWeights compute_weights(ReweightScheme scheme, const Graph& g,
                            const VertexCutPartition& part);

}  // namespace sagecut
