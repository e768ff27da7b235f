#include "sagecut/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace sagecut {

std::pair<Graph, ValidationReport> build_graph(NodeId num_nodes, std::vector<Edge> raw_edges) {
    if (num_nodes < 0) throw std::invalid_argument("build_graph: negative node count");
    ValidationReport report;

    std::vector<Edge> edges;
    edges.reserve(raw_edges.size());
    for (Edge e : raw_edges) {
        if (e.u < 0 || e.v < 0 || e.u >= num_nodes || e.v >= num_nodes)
            throw std::invalid_argument("build_graph: edge endpoint out of range");
        if (e.u == e.v) {
            ++report.dropped_self_loops;
            continue;
        }
        if (e.u > e.v) std::swap(e.u, e.v);
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    const auto last = std::unique(edges.begin(), edges.end());
    report.merged_duplicate_edges =
        static_cast<std::int64_t>(std::distance(last, edges.end()));
    edges.erase(last, edges.end());

    Graph g;
    g.num_nodes = num_nodes;
    g.edges = std::move(edges);
    g.degrees.assign(static_cast<std::size_t>(num_nodes), 0);
    for (const Edge& e : g.edges) {
        ++g.degrees[static_cast<std::size_t>(e.u)];
        ++g.degrees[static_cast<std::size_t>(e.v)];
    }

    g.adj_offsets.assign(static_cast<std::size_t>(num_nodes) + 1, 0);
    for (NodeId v = 0; v < num_nodes; ++v)
        g.adj_offsets[static_cast<std::size_t>(v) + 1] =
            g.adj_offsets[static_cast<std::size_t>(v)] + g.degrees[static_cast<std::size_t>(v)];
    g.adj_neighbors.resize(2 * g.edges.size());
    g.adj_edge_ids.resize(2 * g.edges.size());
    std::vector<EdgeId> cursor(g.adj_offsets.begin(), g.adj_offsets.end() - 1);
    for (std::size_t idx = 0; idx < g.edges.size(); ++idx) {
        const Edge& e = g.edges[idx];
        const auto eid = static_cast<EdgeId>(idx);
        g.adj_neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)])] = e.v;
        g.adj_edge_ids[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)]++)] = eid;
        g.adj_neighbors[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.v)])] = e.u;
        g.adj_edge_ids[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.v)]++)] = eid;
    }

    for (NodeId v = 0; v < num_nodes; ++v)
        if (g.degrees[static_cast<std::size_t>(v)] == 0) report.isolated_nodes.push_back(v);
    if (!report.isolated_nodes.empty())
        report.warnings.push_back(std::to_string(report.isolated_nodes.size()) +
                                  " isolated node(s)");

    return {std::move(g), std::move(report)};
}

std::pair<NodeId, NodeId> degree_extremes(const Graph& g) {
    if (g.edges.empty()) throw std::invalid_argument("degree_extremes: graph has no edges");
    NodeId min_d = 0, max_d = 0;
    bool seen = false;
    for (NodeId v = 0; v < g.num_nodes; ++v) {
        const NodeId d = g.degree(v);
        max_d = std::max(max_d, d);
        if (d >= 1) {
            min_d = seen ? std::min(min_d, d) : d;
            seen = true;
        }
    }
    return {min_d, max_d};
}

double homophily_ratio(const Graph& g) {
    if (g.labels.empty()) throw std::invalid_argument("homophily_ratio: graph has no class labels");
    if (g.edges.empty()) throw std::invalid_argument("homophily_ratio: graph has no edges");
    std::size_t intra = 0;
    for (const Edge& e : g.edges)
        if (g.labels[static_cast<std::size_t>(e.u)] == g.labels[static_cast<std::size_t>(e.v)])
            ++intra;
    return static_cast<double>(intra) / static_cast<double>(g.edges.size());
}

Eigen::MatrixXd label_targets(const Graph& g) {
    if (g.is_multilabel()) return g.multilabels;
    if (g.labels.empty()) throw std::invalid_argument("label_targets: graph has no labels");
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(g.num_nodes, g.num_classes);
    for (NodeId v = 0; v < g.num_nodes; ++v)
        t(v, g.labels[static_cast<std::size_t>(v)]) = 1.0;
    return t;
}

}  // namespace sagecut
