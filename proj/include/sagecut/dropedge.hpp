#pragma once

#include <cstdint>
#include <vector>

#include "sagecut/rng.hpp"

namespace sagecut {

// K precomputed edge-keep masks over one partition's local edges. Every mask
// keeps exactly ceil((1 - ratio) * num_edges) edges, so the per-iteration
// cost of applying one is fixed and selection is just an index draw.
struct DropEdgeMaskSet {
    int num_masks = 0;
    double ratio = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::uint8_t>> masks;
};

// Masks are sampled without replacement to the exact keep count and are
// deterministic in (seed, mask index).
DropEdgeMaskSet precompute_masks(std::size_t num_edges, int num_masks, double ratio,
                                 std::uint64_t seed);

// Uniform index in [0, K), driven by the caller's stream.
int select_mask(const DropEdgeMaskSet& set, Rng& rng);

}  // namespace sagecut
