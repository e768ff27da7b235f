#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sagecut {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
    NodeId u = 0;
    NodeId v = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

// Light, non-owning view of a symmetric CSR adjacency. Works for the full
// graph and for partition-local subgraphs alike; edge_ids index whatever
// edge space the owner defines (global edge ids for a Graph, local ids for
// a partition subgraph).
struct AdjacencyView {
    NodeId num_nodes = 0;
    std::span<const EdgeId> offsets;    // num_nodes + 1
    std::span<const NodeId> neighbors;  // 2|E|
    std::span<const EdgeId> edge_ids;   // 2|E|, parallel to neighbors

    std::span<const NodeId> neighbors_of(NodeId v) const {
        return neighbors.subspan(static_cast<std::size_t>(offsets[v]),
                                 static_cast<std::size_t>(offsets[v + 1] - offsets[v]));
    }
    std::span<const EdgeId> incident_edges(NodeId v) const {
        return edge_ids.subspan(static_cast<std::size_t>(offsets[v]),
                                static_cast<std::size_t>(offsets[v + 1] - offsets[v]));
    }
    NodeId degree(NodeId v) const { return offsets[v + 1] - offsets[v]; }
    std::size_t num_edges() const { return neighbors.size() / 2; }
};

struct ValidationReport {
    std::int64_t dropped_self_loops = 0;
    std::int64_t merged_duplicate_edges = 0;
    std::vector<NodeId> isolated_nodes;
    std::vector<std::string> warnings;
};

// Immutable undirected simple graph in compressed adjacency form, with
// optional node features, labels and train/val/test masks. Safe for
// concurrent reads once built.
struct Graph {
    NodeId num_nodes = 0;
    std::vector<Edge> edges;  // canonical u < v, sorted, stable edge index

    std::vector<EdgeId> adj_offsets;    // num_nodes + 1
    std::vector<NodeId> adj_neighbors;  // 2|E|
    std::vector<EdgeId> adj_edge_ids;   // 2|E|
    std::vector<NodeId> degrees;        // incident-edge count per node

    Eigen::MatrixXd features;     // num_nodes x d; 0x0 when absent
    std::vector<NodeId> labels;   // multi-class; empty when absent
    Eigen::MatrixXd multilabels;  // num_nodes x C of 0/1; 0x0 when absent
    int num_classes = 0;

    std::vector<std::uint8_t> train_mask, val_mask, test_mask;  // empty or size n

    NodeId degree(NodeId v) const { return degrees[static_cast<std::size_t>(v)]; }
    std::size_t num_edges() const { return edges.size(); }

    bool has_features() const { return features.size() > 0; }
    bool has_labels() const { return !labels.empty() || multilabels.size() > 0; }
    bool is_multilabel() const { return multilabels.size() > 0; }
    bool has_masks() const { return !train_mask.empty(); }

    AdjacencyView adjacency() const {
        return AdjacencyView{num_nodes, adj_offsets, adj_neighbors, adj_edge_ids};
    }
};

// Canonicalizes raw edges (drops self-loops, merges duplicates, sorts),
// builds the CSR adjacency and degree table.
std::pair<Graph, ValidationReport> build_graph(NodeId num_nodes, std::vector<Edge> raw_edges);

// (min degree over nodes with at least one edge, max degree over all nodes).
// Throws if the graph has no edges.
std::pair<NodeId, NodeId> degree_extremes(const Graph& g);

// Fraction of edges whose endpoints share a class label. Requires
// multi-class labels.
double homophily_ratio(const Graph& g);

// One-hot matrix (n x C) from multi-class labels; for multi-label graphs
// returns the label matrix itself.
Eigen::MatrixXd label_targets(const Graph& g);

}  // namespace sagecut
