#pragma once

#include <string>

#include "sagecut/partition.hpp"
#include "sagecut/reweight.hpp"

namespace sagecut {

// Partition file: JSON with num_parts, the per-edge part id array, and the
// per-part global node id arrays. Round-trips losslessly against the graph
// it was built from; loading against a different graph fails. Loss weights
// can be embedded for inspection; the loader ignores them.
void save_partition(const VertexCutPartition& part, const std::string& path,
                    const NodeWeights* weights = nullptr);
VertexCutPartition load_partition(const std::string& path, const Graph& g);

// Edge-cut partitions are saved for inspection (node assignment, cut edges,
// halo sets).
void save_edge_cut(const EdgeCutPartition& ec, const std::string& path);

}  // namespace sagecut
