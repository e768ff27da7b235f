#pragma once

#include <cstdint>
#include <vector>

#include "sagecut/graph.hpp"
#include "sagecut/nn.hpp"
#include "sagecut/partition.hpp"
#include "sagecut/reweight.hpp"

namespace sagecut {

// Residual between the full-graph gradient and the gathered reweighted
// partition gradient at one fixed parameter state, sigmoid/BCE loss over all
// nodes, both sides normalized by the node count.
struct GradEquivReport {
    ReweightScheme scheme = ReweightScheme::none;
    std::vector<double> per_param_error;  // relative Frobenius per matrix
    double aggregate_error = 0.0;         // relative Frobenius over all parameters
    double homophily = 0.0;               // intra-class edge fraction of the test graph
};

GradEquivReport grad_equivalence(const Graph& g, const VertexCutPartition& part,
                                 const SageModel<double>& model, ReweightScheme scheme);

// DAR-weighted total partition loss and, separately, the full-graph loss at
// the same state (BCE, all nodes). With zero message-passing layers the two
// are equal up to summation order.
std::pair<double, double> partition_vs_full_loss(const Graph& g, const VertexCutPartition& part,
                                                 const SageModel<double>& model,
                                                 ReweightScheme scheme);

struct McCheckRow {
    std::int64_t degree = 0;
    double empirical_mean = 0.0;
    double expected = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;
};

// Simulates uniform random assignment of a degree-d node's edges to p parts
// and compares the empirical mean replication against
// p * (1 - (1 - 1/p)^d).
std::vector<McCheckRow> mc_replication_check(int num_parts,
                                             const std::vector<std::int64_t>& degrees,
                                             std::size_t trials, std::uint64_t seed);

struct ConversionAuditRow {
    std::uint64_t seed = 0;
    std::size_t total_halo = 0;
    std::int64_t duplicated_nodes = 0;
    bool pass = false;
};

// For each seed: greedy edge cut, convert to a vertex cut, and check that the
// duplicated-node count is strictly below the halo total (or zero when the
// halo total is zero).
std::vector<ConversionAuditRow> halo_conversion_audit(const Graph& g, int num_parts,
                                                      const std::vector<std::uint64_t>& seeds);

}  // namespace sagecut
