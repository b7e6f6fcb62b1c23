#ifndef DYNMATCH_EXACT_HPP
#define DYNMATCH_EXACT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/matching.hpp"
#include "dynmatch/rational.hpp"

namespace dynmatch {

struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Materialized bipartite adjacency used by the exact algorithms.  Left and
// right keep their original vertex ids; adj is indexed by position in left.
struct BipAdj {
    int n = 0;  // base vertex count (for Matching construction)
    std::vector<VertexId> left, right;
    std::vector<std::vector<int>> adj;  // left pos -> right positions

    static BipAdj from_graph(const DynamicGraph& g, const Sides& sides);

    template <typename View>
    static BipAdj from_view(const View& view) {
        BipAdj b;
        b.n = view.base().vertex_count();
        b.left = view.side_a();
        b.right = view.side_b();
        std::vector<int> rpos(b.n, -1);
        for (std::size_t j = 0; j < b.right.size(); ++j) rpos[b.right[j]] = static_cast<int>(j);
        b.adj.resize(b.left.size());
        for (std::size_t i = 0; i < b.left.size(); ++i) {
            for (VertexId u : view.base().neighbors(b.left[i]))
                if (view.has_edge(b.left[i], u)) b.adj[i].push_back(rpos[u]);
            std::sort(b.adj[i].begin(), b.adj[i].end());
        }
        return b;
    }
};

// Maximum matching in a bipartite graph via Hopcroft-Karp.  With phase_cap
// > 0 the search stops after that many phases, which yields a
// (1 - 1/(phase_cap+1))-approximate matching.
Matching hopcroft_karp(const BipAdj& b, long long phase_cap = 0);

Matching max_matching_bipartite(const DynamicGraph& g, const Sides& sides,
                                long long phase_cap = 0);

template <typename View>
Matching max_matching_bipartite_view(const View& view, long long phase_cap = 0) {
    return hopcroft_karp(BipAdj::from_view(view), phase_cap);
}

// Exact mu(G) for general graphs: augmenting paths with blossom
// contraction.
int max_matching_general(const DynamicGraph& g);

// Independent route for small n (<= ~24): bitmask DP over vertex subsets.
int max_matching_exhaustive(const DynamicGraph& g);

// Expectation over all m! edge orders of the greedy maximal matching size.
// Refuses m > 9.
Rational expected_gmm_exact(const std::vector<Edge>& edges);
Rational expected_gmm_exact(const DynamicGraph& g);

struct MonteCarloEstimate {
    double mean = 0;
    double stderr_ = 0;
    long trials = 0;
};

MonteCarloEstimate expected_gmm_montecarlo(const std::vector<Edge>& edges,
                                           long trials, std::uint64_t seed);

// Greedy maximal matching size for one uniformly random edge order.
int gmm_size_once(const std::vector<Edge>& edges, std::uint64_t seed);

struct HallWitness {
    std::vector<VertexId> witness;       // real vertices of A (left side)
    int pad_in_witness = 0;              // isolated pad vertices counted in A
    std::vector<VertexId> neighborhood;  // N(A), always real
    int n_pad = 0;                       // common padded side size
    long long deficiency = 0;            // |A| - |N(A)| = n_pad - mu

    std::size_t witness_size() const { return witness.size() + pad_in_witness; }
};

// Deficiency witness on the left side of a bipartite graph, derived from
// the vertex cover of a maximum matching.  Sides are padded internally with
// isolated vertices to equal size.
HallWitness hall_witness(const BipAdj& b);
HallWitness hall_witness(const DynamicGraph& g, const Sides& sides);

}  // namespace dynmatch

#endif
