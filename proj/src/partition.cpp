#include "sagecut/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "sagecut/rng.hpp"

namespace sagecut {

namespace {

void require_parts(int num_parts) {
    if (num_parts < 1) throw std::invalid_argument("num_parts must be >= 1");
}

}  // namespace

VertexCutPartition build_vertex_cut(const Graph& g, int num_parts,
                                    std::vector<int> edge_assignment) {
    require_parts(num_parts);
    if (edge_assignment.size() != g.edges.size())
        throw std::invalid_argument("edge assignment length does not match edge count");
    for (const int part : edge_assignment)
        if (part < 0 || part >= num_parts)
            throw std::invalid_argument("edge assignment references an invalid part");

    VertexCutPartition vc;
    vc.num_parts = num_parts;
    vc.edge_assignment = std::move(edge_assignment);
    vc.parts.resize(static_cast<std::size_t>(num_parts));

    // Membership per part, then round-robin the isolated nodes.
    std::vector<std::vector<std::uint8_t>> member(
        static_cast<std::size_t>(num_parts),
        std::vector<std::uint8_t>(static_cast<std::size_t>(g.num_nodes), 0));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto part = static_cast<std::size_t>(vc.edge_assignment[e]);
        member[part][static_cast<std::size_t>(g.edges[e].u)] = 1;
        member[part][static_cast<std::size_t>(g.edges[e].v)] = 1;
    }
    int next_part = 0;
    for (NodeId v = 0; v < g.num_nodes; ++v)
        if (g.degree(v) == 0) {
            member[static_cast<std::size_t>(next_part)][static_cast<std::size_t>(v)] = 1;
            next_part = (next_part + 1) % num_parts;
        }

    for (int i = 0; i < num_parts; ++i) {
        PartSubgraph& sub = vc.parts[static_cast<std::size_t>(i)];
        sub.global_to_local.assign(static_cast<std::size_t>(g.num_nodes), -1);
        for (NodeId v = 0; v < g.num_nodes; ++v)
            if (member[static_cast<std::size_t>(i)][static_cast<std::size_t>(v)]) {
                sub.global_to_local[static_cast<std::size_t>(v)] = sub.num_local_nodes();
                sub.nodes.push_back(v);
            }
        sub.local_degrees.assign(sub.nodes.size(), 0);
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        PartSubgraph& sub = vc.parts[static_cast<std::size_t>(vc.edge_assignment[e])];
        const NodeId lu = sub.global_to_local[static_cast<std::size_t>(g.edges[e].u)];
        const NodeId lv = sub.global_to_local[static_cast<std::size_t>(g.edges[e].v)];
        sub.edges.push_back(Edge{lu, lv});
        sub.edge_global_ids.push_back(static_cast<EdgeId>(e));
        ++sub.local_degrees[static_cast<std::size_t>(lu)];
        ++sub.local_degrees[static_cast<std::size_t>(lv)];
    }

    for (PartSubgraph& sub : vc.parts) {
        const std::size_t n_local = sub.nodes.size();
        sub.adj_offsets.assign(n_local + 1, 0);
        for (std::size_t v = 0; v < n_local; ++v)
            sub.adj_offsets[v + 1] = sub.adj_offsets[v] + sub.local_degrees[v];
        sub.adj_neighbors.resize(2 * sub.edges.size());
        sub.adj_edge_ids.resize(2 * sub.edges.size());
        std::vector<EdgeId> cursor(sub.adj_offsets.begin(), sub.adj_offsets.end() - 1);
        for (std::size_t e = 0; e < sub.edges.size(); ++e) {
            const Edge& le = sub.edges[e];
            const auto eid = static_cast<EdgeId>(e);
            sub.adj_neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(le.u)])] = le.v;
            sub.adj_edge_ids[static_cast<std::size_t>(cursor[static_cast<std::size_t>(le.u)]++)] = eid;
            sub.adj_neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(le.v)])] = le.u;
            sub.adj_edge_ids[static_cast<std::size_t>(cursor[static_cast<std::size_t>(le.v)]++)] = eid;
        }
    }
    return vc;
}

VertexCutPartition partition_random(const Graph& g, int num_parts, std::uint64_t seed) {
    require_parts(num_parts);
    if (g.edges.empty()) throw std::invalid_argument("partition_random: graph has no edges");
    Rng rng(substream(seed, "partition.random"));
    std::vector<int> assignment(g.edges.size());
    for (auto& part : assignment)
        part = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(num_parts)));
    return build_vertex_cut(g, num_parts, std::move(assignment));
}

VertexCutPartition partition_dbh(const Graph& g, int num_parts, std::uint64_t seed) {
    require_parts(num_parts);
    std::vector<int> assignment(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& edge = g.edges[e];
        const NodeId du = g.degree(edge.u);
        const NodeId dv = g.degree(edge.v);
        const NodeId pick = du != dv ? (du < dv ? edge.u : edge.v) : std::min(edge.u, edge.v);
        assignment[e] = static_cast<int>(mix64(static_cast<std::uint64_t>(pick) ^ seed) %
                                         static_cast<std::uint64_t>(num_parts));
    }
    return build_vertex_cut(g, num_parts, std::move(assignment));
}

VertexCutPartition partition_ne(const Graph& g, int num_parts, std::uint64_t seed,
                                double balance_slack) {
    require_parts(num_parts);
    if (balance_slack < 1.0) throw std::invalid_argument("partition_ne: balance_slack must be >= 1");
    (void)seed;  // growth order is fully fixed by the tie-break rules

    const std::size_t num_edges = g.edges.size();
    const std::size_t target =
        (num_edges + static_cast<std::size_t>(num_parts) - 1) / static_cast<std::size_t>(num_parts);
    std::vector<int> assignment(num_edges, num_parts - 1);
    std::vector<std::uint8_t> edge_done(num_edges, 0);
    std::vector<NodeId> unassigned_deg(g.degrees.begin(), g.degrees.end());
    std::vector<std::string> warnings;
    const AdjacencyView adj = g.adjacency();
    std::size_t edges_left = num_edges;
    NodeId lowest_candidate = 0;

    std::vector<std::uint8_t> in_boundary(static_cast<std::size_t>(g.num_nodes), 0);
    std::vector<NodeId> boundary;

    for (int part = 0; part + 1 < num_parts && edges_left > 0; ++part) {
        boundary.clear();
        std::fill(in_boundary.begin(), in_boundary.end(), 0);
        std::size_t filled = 0;
        while (filled < target && edges_left > 0) {
            NodeId pick = -1;
            // Boundary node with the fewest unassigned incident edges; the
            // scan keeps selection deterministic under the (score, id) order.
            NodeId best_score = std::numeric_limits<NodeId>::max();
            std::size_t keep = 0;
            for (std::size_t b = 0; b < boundary.size(); ++b) {
                const NodeId v = boundary[b];
                if (unassigned_deg[static_cast<std::size_t>(v)] == 0) {
                    in_boundary[static_cast<std::size_t>(v)] = 0;
                    continue;  // exhausted, drop from boundary
                }
                boundary[keep++] = v;
                const NodeId score = unassigned_deg[static_cast<std::size_t>(v)];
                if (score < best_score || (score == best_score && v < pick)) {
                    best_score = score;
                    pick = v;
                }
            }
            boundary.resize(keep);
            if (pick < 0) {
                while (lowest_candidate < g.num_nodes &&
                       unassigned_deg[static_cast<std::size_t>(lowest_candidate)] == 0)
                    ++lowest_candidate;
                if (lowest_candidate >= g.num_nodes) break;
                pick = lowest_candidate;
            } else {
                in_boundary[static_cast<std::size_t>(pick)] = 0;
                boundary.erase(std::find(boundary.begin(), boundary.end(), pick));
            }

            const auto pick_edges = adj.incident_edges(pick);
            const auto pick_neighbors = adj.neighbors_of(pick);
            for (std::size_t k = 0; k < pick_edges.size(); ++k) {
                const auto eid = static_cast<std::size_t>(pick_edges[k]);
                if (edge_done[eid]) continue;
                edge_done[eid] = 1;
                assignment[eid] = part;
                ++filled;
                --edges_left;
                const NodeId other = pick_neighbors[k];
                --unassigned_deg[static_cast<std::size_t>(pick)];
                --unassigned_deg[static_cast<std::size_t>(other)];
                if (!in_boundary[static_cast<std::size_t>(other)] &&
                    unassigned_deg[static_cast<std::size_t>(other)] > 0) {
                    in_boundary[static_cast<std::size_t>(other)] = 1;
                    boundary.push_back(other);
                }
            }
        }
        const auto slack_limit =
            static_cast<std::size_t>(balance_slack * static_cast<double>(target));
        if (filled > slack_limit)
            warnings.push_back("part " + std::to_string(part) + " overshoot: " +
                               std::to_string(filled) + " edges > slack limit " +
                               std::to_string(slack_limit));
    }

    VertexCutPartition vc = build_vertex_cut(g, num_parts, std::move(assignment));
    vc.warnings = std::move(warnings);
    return vc;
}

EdgeCutPartition edge_cut_from_assignment(const Graph& g, int num_parts,
                                          std::vector<int> node_assignment) {
    require_parts(num_parts);
    if (node_assignment.size() != static_cast<std::size_t>(g.num_nodes))
        throw std::invalid_argument("node assignment length does not match node count");
    for (const int part : node_assignment)
        if (part < 0 || part >= num_parts)
            throw std::invalid_argument("node assignment references an invalid part");

    EdgeCutPartition ec;
    ec.num_parts = num_parts;
    ec.node_assignment = std::move(node_assignment);
    ec.kept_edges.resize(static_cast<std::size_t>(num_parts));
    ec.halo_sets.resize(static_cast<std::size_t>(num_parts));
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const int pu = ec.node_assignment[static_cast<std::size_t>(g.edges[e].u)];
        const int pv = ec.node_assignment[static_cast<std::size_t>(g.edges[e].v)];
        if (pu == pv) {
            ec.kept_edges[static_cast<std::size_t>(pu)].push_back(static_cast<EdgeId>(e));
        } else {
            ec.cut_edges.push_back(static_cast<EdgeId>(e));
            ec.halo_sets[static_cast<std::size_t>(pv)].push_back(g.edges[e].u);
            ec.halo_sets[static_cast<std::size_t>(pu)].push_back(g.edges[e].v);
        }
    }
    for (auto& halo : ec.halo_sets) {
        std::sort(halo.begin(), halo.end());
        halo.erase(std::unique(halo.begin(), halo.end()), halo.end());
    }
    return ec;
}

EdgeCutPartition partition_edge_cut_greedy(const Graph& g, int num_parts, std::uint64_t seed) {
    require_parts(num_parts);
    const auto n = static_cast<std::size_t>(g.num_nodes);
    Rng rng(substream(seed, "partition.edge_cut"));
    std::vector<int> assignment(n, -1);
    const AdjacencyView adj = g.adjacency();

    const std::size_t base = n / static_cast<std::size_t>(num_parts);
    const std::size_t remainder = n % static_cast<std::size_t>(num_parts);
    std::size_t assigned = 0;
    for (int part = 0; part < num_parts && assigned < n; ++part) {
        const std::size_t region_target =
            base + (static_cast<std::size_t>(part) < remainder ? 1 : 0);
        std::size_t region_size = 0;
        std::queue<NodeId> frontier;
        while (region_size < region_target && assigned < n) {
            if (frontier.empty()) {
                // Seeded restart on an unvisited node.
                std::vector<NodeId> free_nodes;
                free_nodes.reserve(n - assigned);
                for (NodeId v = 0; v < g.num_nodes; ++v)
                    if (assignment[static_cast<std::size_t>(v)] < 0) free_nodes.push_back(v);
                const NodeId start =
                    free_nodes[static_cast<std::size_t>(rng.next_below(free_nodes.size()))];
                assignment[static_cast<std::size_t>(start)] = part;
                ++region_size;
                ++assigned;
                frontier.push(start);
                continue;
            }
            const NodeId v = frontier.front();
            frontier.pop();
            for (const NodeId u : adj.neighbors_of(v)) {
                if (region_size >= region_target) break;
                if (assignment[static_cast<std::size_t>(u)] >= 0) continue;
                assignment[static_cast<std::size_t>(u)] = part;
                ++region_size;
                ++assigned;
                frontier.push(u);
            }
        }
    }
    return edge_cut_from_assignment(g, num_parts, std::move(assignment));
}

VertexCutPartition edge_cut_to_vertex_cut(const Graph& g, const EdgeCutPartition& ec,
                                          std::uint64_t seed) {
    if (ec.node_assignment.size() != static_cast<std::size_t>(g.num_nodes))
        throw std::invalid_argument("edge cut does not match graph");
    std::vector<int> assignment(g.edges.size(), -1);
    for (int part = 0; part < ec.num_parts; ++part)
        for (const EdgeId e : ec.kept_edges[static_cast<std::size_t>(part)])
            assignment[static_cast<std::size_t>(e)] = part;

    NodeId anchor = -1;
    if (!ec.cut_edges.empty()) {
        const Edge& first = g.edges[static_cast<std::size_t>(
            *std::min_element(ec.cut_edges.begin(), ec.cut_edges.end()))];
        anchor = std::min(first.u, first.v);
    }

    Rng rng(substream(seed, "partition.ec2vc"));
    for (const EdgeId e : ec.cut_edges) {
        const Edge& edge = g.edges[static_cast<std::size_t>(e)];
        NodeId keep_side;
        if (edge.u == anchor || edge.v == anchor)
            keep_side = anchor;  // the anchor's cut edges stay home: no copy of it is ever made
        else
            keep_side = rng.next_bool() ? edge.u : edge.v;
        assignment[static_cast<std::size_t>(e)] =
            ec.node_assignment[static_cast<std::size_t>(keep_side)];
    }
    return build_vertex_cut(g, ec.num_parts, std::move(assignment));
}

ReplicationStats replication_stats(const VertexCutPartition& part, const Graph& g) {
    if (part.edge_assignment.size() != g.edges.size())
        throw std::invalid_argument("replication_stats: partition does not match graph");
    for (const PartSubgraph& sub : part.parts)
        if (sub.global_to_local.size() != static_cast<std::size_t>(g.num_nodes))
            throw std::invalid_argument("replication_stats: partition does not match graph");

    ReplicationStats stats;
    stats.per_node_rf.assign(static_cast<std::size_t>(g.num_nodes), 0);
    std::size_t total_part_nodes = 0;
    std::size_t max_part_nodes = 0;
    std::size_t max_part_edges = 0;
    for (const PartSubgraph& sub : part.parts) {
        total_part_nodes += sub.nodes.size();
        max_part_nodes = std::max(max_part_nodes, sub.nodes.size());
        max_part_edges = std::max(max_part_edges, sub.edges.size());
        for (const NodeId v : sub.nodes) ++stats.per_node_rf[static_cast<std::size_t>(v)];
    }
    const double n = static_cast<double>(g.num_nodes);
    const double p = static_cast<double>(part.num_parts);
    stats.rf = static_cast<double>(total_part_nodes) / n;
    stats.duplicated_nodes =
        static_cast<std::int64_t>(total_part_nodes) - static_cast<std::int64_t>(g.num_nodes);
    stats.edge_balance = g.edges.empty()
                             ? 0.0
                             : static_cast<double>(max_part_edges) /
                                   (static_cast<double>(g.edges.size()) / p);
    stats.node_balance = total_part_nodes == 0
                             ? 0.0
                             : static_cast<double>(max_part_nodes) /
                                   (static_cast<double>(total_part_nodes) / p);
    return stats;
}

double expected_rf_random(int num_parts, std::int64_t degree) {
    if (num_parts < 1) throw std::invalid_argument("expected_rf_random: num_parts must be >= 1");
    if (degree < 0) throw std::invalid_argument("expected_rf_random: degree must be >= 0");
    const double p = static_cast<double>(num_parts);
    return p * (1.0 - std::pow(1.0 - 1.0 / p, static_cast<double>(degree)));
}

double imbalance_lower_bound(int num_parts, std::int64_t max_degree, std::int64_t min_degree) {
    require_parts(num_parts);
    if (min_degree < 1)
        throw std::invalid_argument("imbalance_lower_bound: min_degree must be >= 1");
    if (max_degree < min_degree)
        throw std::invalid_argument("imbalance_lower_bound: max_degree < min_degree");
    if (num_parts == 1) return 1.0;
    const double p = static_cast<double>(num_parts);
    const double numer = 1.0 - std::pow(1.0 - 1.0 / p, static_cast<double>(max_degree));
    const double denom = 1.0 - std::pow(1.0 - 1.0 / p, static_cast<double>(min_degree));
    return numer / denom;
}

}  // namespace sagecut
