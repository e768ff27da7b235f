#pragma once

#include <cstdint>

#include "sagecut/graph.hpp"

namespace sagecut {

// Stochastic block model with homophily knob p_in/p_out, one-hot class
// centroid features plus Gaussian noise, and a seeded 60/20/20 split.
struct SbmSpec {
    NodeId num_nodes = 0;
    int num_classes = 2;
    double p_in = 0.1;
    double p_out = 0.01;
    int feature_dim = 0;  // 0 -> num_classes
    double feature_noise = 0.1;
    std::uint64_t seed = 0;
};

// Chung-Lu sampling against Pareto expected degrees.
struct PowerLawSpec {
    NodeId num_nodes = 0;
    double exponent = 2.5;  // > 1
    NodeId min_degree = 1;
    std::uint64_t seed = 0;
};

// Same SbmSpec, same graph. The output has no isolated nodes: isolated
// draws are rewired to one random same-class neighbor.
Graph gen_homophilic_sbm(const SbmSpec& spec);

// Same PowerLawSpec, same graph; simple, no isolated nodes.
Graph gen_power_law(const PowerLawSpec& spec);

// Maximum-likelihood tail exponent of a degree sequence, continuous
// approximation with the given lower cutoff.
double fit_power_law_exponent(const std::vector<NodeId>& degrees, NodeId d_min);

}  // namespace sagecut
