#pragma once

#include <optional>
#include <string>

#include "sagecut/graph.hpp"

namespace sagecut {

struct LoadOptions {
    // Override the node count (default: 1 + max id seen).
    std::optional<NodeId> num_nodes;
    // Reject ids in [0, n) that never appear in an edge instead of treating
    // them as isolated nodes.
    bool strict = false;
};

// Edge list: UTF-8 text, one edge per line "u v" (whitespace separated,
// 0-based); lines starting with '#' are ignored. Self-loops are dropped and
// duplicate undirected edges merged, both counted in the report.
std::pair<Graph, ValidationReport> load_graph(const std::string& path,
                                              const LoadOptions& options = {});
void save_edge_list(const Graph& g, const std::string& path);

// Feature matrix: CSV (one row per node) or the "CFM1" binary format
// (magic, u64 rows, u64 cols, little-endian, then rows*cols float32
// row-major). The format is sniffed from the file's first four bytes.
Eigen::MatrixXd load_features(const std::string& path, NodeId expected_nodes);
void save_features_csv(const Eigen::MatrixXd& m, const std::string& path);
void save_features_binary(const Eigen::MatrixXd& m, const std::string& path);

// Labels: one line per node; a single integer (multi-class) or a
// comma-separated 0/1 vector (multi-label). Fills labels/multilabels and
// num_classes on the graph.
void load_labels(const std::string& path, Graph& g);
void save_labels(const Graph& g, const std::string& path);

// Masks: text lines "train|val|test <node_id>". Masks must be disjoint and
// reference valid node ids.
void load_masks(const std::string& path, Graph& g);
void save_masks(const Graph& g, const std::string& path);

}  // namespace sagecut
