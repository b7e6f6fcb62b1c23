#ifndef DYNMATCH_MATCHING_HPP
#define DYNMATCH_MATCHING_HPP

#include <stdexcept>
#include <vector>

#include "dynmatch/graph.hpp"

namespace dynmatch {

// Vertex-disjoint edge set with a per-vertex partner index.
class Matching {
public:
    Matching() = default;
    explicit Matching(int n) : mate_(n, kNoVertex) {}

    int vertex_count() const { return static_cast<int>(mate_.size()); }
    int size() const { return size_; }

    bool matched(VertexId v) const { return mate_.at(v) != kNoVertex; }
    VertexId mate(VertexId v) const { return mate_.at(v); }

    bool has(VertexId u, VertexId v) const { return mate_.at(u) == v; }

    void add(VertexId u, VertexId v) {
        if (u == v) throw std::invalid_argument("matching self-loop");
        if (matched(u) || matched(v))
            throw std::invalid_argument("endpoint already matched");
        mate_[u] = v;
        mate_[v] = u;
        ++size_;
    }

    void remove(VertexId u, VertexId v) {
        if (mate_.at(u) != v) throw std::invalid_argument("edge not in matching");
        mate_[u] = kNoVertex;
        mate_[v] = kNoVertex;
        --size_;
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(size_);
        for (VertexId v = 0; v < vertex_count(); ++v)
            if (mate_[v] != kNoVertex && v < mate_[v]) out.emplace_back(v, mate_[v]);
        return out;
    }

    std::vector<VertexId> matched_vertices() const {
        std::vector<VertexId> out;
        for (VertexId v = 0; v < vertex_count(); ++v)
            if (mate_[v] != kNoVertex) out.push_back(v);
        return out;
    }

    std::vector<VertexId> unmatched_vertices() const {
        std::vector<VertexId> out;
        for (VertexId v = 0; v < vertex_count(); ++v)
            if (mate_[v] == kNoVertex) out.push_back(v);
        return out;
    }

    // Both directions consistent and size matches the edge list.
    bool audit() const {
        int cnt = 0;
        for (VertexId v = 0; v < vertex_count(); ++v) {
            VertexId u = mate_[v];
            if (u == kNoVertex) continue;
            if (u < 0 || u >= vertex_count() || u == v || mate_[u] != v) return false;
            ++cnt;
        }
        return cnt == 2 * size_;
    }

private:
    std::vector<VertexId> mate_;
    int size_ = 0;
};

}  // namespace dynmatch

#endif
