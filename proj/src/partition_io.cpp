#include "sagecut/partition_io.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace sagecut {

using nlohmann::json;

void save_partition(const VertexCutPartition& part, const std::string& path,
                    const NodeWeights* weights) {
    json doc;
    doc["num_parts"] = part.num_parts;
    doc["edge_assignment"] = part.edge_assignment;
    json parts = json::array();
    for (std::size_t i = 0; i < part.parts.size(); ++i) {
        json entry{{"nodes", part.parts[i].nodes}};
        if (weights) entry["weights"] = weights->per_part[i];
        parts.push_back(std::move(entry));
    }
    doc["parts"] = std::move(parts);
    if (weights) doc["weight_scheme"] = to_string(weights->scheme);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << doc.dump(2) << '\n';
}

VertexCutPartition load_partition(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open partition file: " + path);
    json doc;
    in >> doc;

    const int num_parts = doc.at("num_parts").get<int>();
    auto assignment = doc.at("edge_assignment").get<std::vector<int>>();
    if (assignment.size() != g.edges.size())
        throw std::runtime_error(path + ": partition was built for " +
                                 std::to_string(assignment.size()) + " edges, graph has " +
                                 std::to_string(g.edges.size()));

    VertexCutPartition part = build_vertex_cut(g, num_parts, std::move(assignment));

    const json& stored_parts = doc.at("parts");
    if (stored_parts.size() != part.parts.size())
        throw std::runtime_error(path + ": part count mismatch");
    for (std::size_t i = 0; i < part.parts.size(); ++i) {
        const auto stored_nodes = stored_parts[i].at("nodes").get<std::vector<NodeId>>();
        if (stored_nodes != part.parts[i].nodes)
            throw std::runtime_error(path + ": stored node sets do not match this graph");
    }
    return part;
}

void save_edge_cut(const EdgeCutPartition& ec, const std::string& path) {
    json doc;
    doc["num_parts"] = ec.num_parts;
    doc["node_assignment"] = ec.node_assignment;
    doc["cut_edges"] = ec.cut_edges;
    doc["halo_sets"] = ec.halo_sets;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace sagecut
