#ifndef DYNMATCH_TESTS_HELPERS_HPP
#define DYNMATCH_TESTS_HELPERS_HPP

#include <algorithm>
#include <numeric>
#include <vector>

#include "dynmatch/dynamic_matching.hpp"
#include "dynmatch/exact.hpp"
#include "dynmatch/graph.hpp"
#include "dynmatch/rng.hpp"

namespace testing_helpers {

using namespace dynmatch;

inline DynamicGraph from_edges(int n, const std::vector<Edge>& es) {
    DynamicGraph g(n);
    for (const auto& [u, v] : es) g.insert_edge(u, v);
    return g;
}

inline InducedView whole(const DynamicGraph& g) {
    std::vector<VertexId> all;
    for (VertexId v = 0; v < g.vertex_count(); ++v) all.push_back(v);
    return InducedView(g, all);
}

inline DynamicGraph random_graph(int n, int m_target, Rng& rng) {
    DynamicGraph g(n);
    for (int t = 0; t < 6 * m_target && g.edge_count() < m_target; ++t) {
        VertexId u = static_cast<VertexId>(rng.index(n));
        VertexId v = static_cast<VertexId>(rng.index(n));
        if (u != v && !g.has_edge(u, v)) g.insert_edge(u, v);
    }
    return g;
}

inline DynamicGraph random_bipartite_graph(int n, int m_target, Rng& rng) {
    DynamicGraph g(n);
    int half = n / 2;
    for (int t = 0; t < 6 * m_target && g.edge_count() < m_target; ++t) {
        VertexId u = static_cast<VertexId>(rng.index(half));
        VertexId v = static_cast<VertexId>(half + rng.index(n - half));
        if (!g.has_edge(u, v)) g.insert_edge(u, v);
    }
    return g;
}

// bipartite graph containing a planted matching of size plant
inline DynamicGraph planted_bipartite_graph(int n, int plant, int extra, Rng& rng) {
    DynamicGraph g(n);
    int half = n / 2;
    for (int i = 0; i < plant && i < half; ++i) g.insert_edge(i, half + i);
    for (int t = 0; t < 6 * extra && g.edge_count() < plant + extra; ++t) {
        VertexId u = static_cast<VertexId>(rng.index(half));
        VertexId v = static_cast<VertexId>(half + rng.index(n - half));
        if (!g.has_edge(u, v)) g.insert_edge(u, v);
    }
    return g;
}

inline MaintainedMatching maximal_matching_of(const DynamicGraph& g) {
    MaintainedMatching mm(g.vertex_count());
    for (const auto& [u, v] : g.edges()) mm.on_insert(g, u, v);
    return mm;
}

// exact mu of an induced view, via materialization
template <typename View>
int mu_of_view(const View& view) {
    DynamicGraph g(view.base().vertex_count());
    for (const auto& [u, v] : view.materialize_edges()) g.insert_edge(u, v);
    return max_matching_general(g);
}

// Pr over all m! edge orders that v is matched by the greedy matching.
inline double prob_matched_exact(const std::vector<Edge>& edges, VertexId v) {
    const int m = static_cast<int>(edges.size());
    if (m == 0) return 0.0;
    if (m > 8) throw std::invalid_argument("too many edges for enumeration");
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    int mx = 0;
    for (const auto& e : edges) mx = std::max({mx, e.first, e.second});
    std::vector<char> used(mx + 1, 0);
    long hits = 0, total = 0;
    do {
        std::fill(used.begin(), used.end(), 0);
        for (int idx : order) {
            auto [a, b] = edges[idx];
            if (!used[a] && !used[b]) used[a] = used[b] = 1;
        }
        if (v <= mx && used[v]) ++hits;
        ++total;
    } while (std::next_permutation(order.begin(), order.end()));
    return static_cast<double>(hits) / static_cast<double>(total);
}

// all subsets of a small edge list
inline std::vector<std::vector<Edge>> all_subsets(const std::vector<Edge>& edges) {
    std::vector<std::vector<Edge>> out;
    const int m = static_cast<int>(edges.size());
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<Edge> sub;
        for (int i = 0; i < m; ++i)
            if (mask & (1 << i)) sub.push_back(edges[i]);
        out.push_back(std::move(sub));
    }
    return out;
}

struct MeanAccumulator {
    double sum = 0, sumsq = 0;
    long n = 0;
    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++n;
    }
    double mean() const { return n ? sum / n : 0.0; }
    double stderr_() const {
        if (n < 2) return 0.0;
        double var = (sumsq - sum * sum / n) / (n - 1);
        return std::sqrt(std::max(0.0, var) / n);
    }
};

}  // namespace testing_helpers

#endif
