#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sagecut/graph.hpp"

namespace sagecut {

// Local subgraph of one vertex-cut part: the endpoints of its edge set plus
// any isolated nodes assigned by the round-robin rule, with a local CSR
// whose edge ids index the part's own edge list.
struct PartSubgraph {
    std::vector<NodeId> nodes;            // global ids, ascending
    std::vector<NodeId> global_to_local;  // size num_nodes, -1 where absent
    std::vector<Edge> edges;              // local endpoint ids
    std::vector<EdgeId> edge_global_ids;  // parallel to edges
    std::vector<NodeId> local_degrees;    // incident edges within this part
    std::vector<EdgeId> adj_offsets;
    std::vector<NodeId> adj_neighbors;
    std::vector<EdgeId> adj_edge_ids;  // local edge ids

    NodeId num_local_nodes() const { return static_cast<NodeId>(nodes.size()); }
    AdjacencyView adjacency() const {
        return AdjacencyView{num_local_nodes(), adj_offsets, adj_neighbors, adj_edge_ids};
    }
};

// Disjoint edge assignment into p parts. Every edge lives in exactly one
// part; nodes incident to edges in several parts are duplicated.
struct VertexCutPartition {
    int num_parts = 0;
    std::vector<int> edge_assignment;  // size |E|, values in [0, p)
    std::vector<PartSubgraph> parts;
    std::vector<std::string> warnings;  // e.g. balance overshoot reports
};

// Node assignment into p parts; cross-part edges are cut and tracked along
// with the halo sets they would require.
struct EdgeCutPartition {
    int num_parts = 0;
    std::vector<int> node_assignment;            // size num_nodes
    std::vector<std::vector<EdgeId>> kept_edges;  // per part, global edge ids
    std::vector<EdgeId> cut_edges;                // global edge ids
    std::vector<std::vector<NodeId>> halo_sets;   // per part, foreign endpoints, ascending

    std::size_t total_halo() const {
        std::size_t h = 0;
        for (const auto& s : halo_sets) h += s.size();
        return h;
    }
};

struct ReplicationStats {
    double rf = 0.0;                   // (1/|V|) sum_i |V[i]|
    std::vector<int> per_node_rf;      // parts containing each node
    double edge_balance = 0.0;         // max_i |E[i]| / (|E|/p)
    double node_balance = 0.0;         // max_i |V[i]| / (sum_i |V[i]|/p)
    std::int64_t duplicated_nodes = 0;  // sum_i |V[i]| - |V|
};

// Builds the per-part subgraphs from an edge -> part map. Isolated nodes are
// assigned round-robin (ascending id) to parts, carrying local degree 0.
VertexCutPartition build_vertex_cut(const Graph& g, int num_parts,
                                    std::vector<int> edge_assignment);

// Uniform independent edge assignment.
VertexCutPartition partition_random(const Graph& g, int num_parts, std::uint64_t seed);

// Degree-based hashing: an edge follows its lower-degree endpoint
// (degree ties break to the smaller id) through a seeded integer mix.
VertexCutPartition partition_dbh(const Graph& g, int num_parts, std::uint64_t seed);

// Greedy neighbor-expansion: parts 0..p-2 grow from the lowest-id unassigned
// node, repeatedly absorbing the boundary node with the fewest unassigned
// incident edges, until each holds ceil(|E|/p) edges; the last part takes the
// remainder. Overshoot past balance_slack * ceil(|E|/p) is reported in
// warnings.
VertexCutPartition partition_ne(const Graph& g, int num_parts, std::uint64_t seed,
                                double balance_slack = 1.1);

// Seeded BFS region growing to node counts balanced within the remainder
// distribution.
EdgeCutPartition partition_edge_cut_greedy(const Graph& g, int num_parts, std::uint64_t seed);

// Derives kept/cut edges and halo sets from an explicit node assignment.
EdgeCutPartition edge_cut_from_assignment(const Graph& g, int num_parts,
                                          std::vector<int> node_assignment);

// Converts an edge cut into a vertex cut on the same boundary: kept edges
// stay put, each cut edge joins one endpoint's part and duplicates the other
// endpoint there. All cut edges at one anchor endpoint stay in its own part,
// so at least one halo pair never turns into a duplicate and the result has
// strictly fewer duplicated nodes than total halo entries whenever that
// total is positive.
VertexCutPartition edge_cut_to_vertex_cut(const Graph& g, const EdgeCutPartition& ec,
                                          std::uint64_t seed);

ReplicationStats replication_stats(const VertexCutPartition& part, const Graph& g);

// p * (1 - (1 - 1/p)^d): expected parts touched by a degree-d node under
// uniform random edge assignment.
double expected_rf_random(int num_parts, std::int64_t degree);

// (1 - (1-1/p)^max_d) / (1 - (1-1/p)^min_d); 1.0 for p = 1 (a single part
// replicates nothing). min_d must be >= 1.
double imbalance_lower_bound(int num_parts, std::int64_t max_degree, std::int64_t min_degree);

}  // namespace sagecut
