#include "sagecut/dropedge.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sagecut {

DropEdgeMaskSet precompute_masks(std::size_t num_edges, int num_masks, double ratio,
                                 std::uint64_t seed) {
    if (num_masks < 1) throw std::invalid_argument("precompute_masks: need at least one mask");
    if (ratio < 0.0 || ratio >= 1.0)
        throw std::invalid_argument("precompute_masks: ratio must lie in [0, 1)");

    const auto keep = static_cast<std::size_t>(
        std::ceil((1.0 - ratio) * static_cast<double>(num_edges)));

    DropEdgeMaskSet set;
    set.num_masks = num_masks;
    set.ratio = ratio;
    set.seed = seed;
    set.masks.reserve(static_cast<std::size_t>(num_masks));
    std::vector<std::uint32_t> order(num_edges);
    for (int k = 0; k < num_masks; ++k) {
        std::iota(order.begin(), order.end(), 0u);
        Rng rng(substream(seed, "dropedge.mask", static_cast<std::uint64_t>(k)));
        rng.shuffle(order);
        std::vector<std::uint8_t> mask(num_edges, 0);
        for (std::size_t i = 0; i < keep; ++i) mask[order[i]] = 1;
        set.masks.push_back(std::move(mask));
    }
    return set;
}

int select_mask(const DropEdgeMaskSet& set, Rng& rng) {
    return static_cast<int>(rng.next_below(static_cast<std::uint64_t>(set.num_masks)));
}

}  // namespace sagecut
