#include "dynmatch/fully_dynamic.hpp"

namespace dynmatch {

std::vector<ContractedGraph> vertex_sparsify(const DynamicGraph& g,
                                             int target_size, int copies,
                                             std::uint64_t seed) {
    if (copies < 1) throw std::invalid_argument("copies must be >= 1");
    std::vector<ContractedGraph> out;
    out.reserve(copies);
    Rng rng(seed);
    for (int i = 0; i < copies; ++i) out.emplace_back(g, target_size, rng.fork());
    return out;
}

}  // namespace dynmatch
