#ifndef DYNMATCH_DYNAMIC_MATCHING_HPP
#define DYNMATCH_DYNAMIC_MATCHING_HPP

#include "dynmatch/graph.hpp"
#include "dynmatch/matching.hpp"

namespace dynmatch {

// Maximal matching maintained under edge updates with O(degree) work per
// event.  Rematch scans pick the lowest-index free neighbor.  The
// no-rematch mode is a test fixture that leaves the matching non-maximal
// after deletions.
class MaintainedMatching {
public:
    explicit MaintainedMatching(int n, bool no_rematch = false)
        : m_(n), no_rematch_(no_rematch) {}

    const Matching& matching() const { return m_; }
    int size() const { return m_.size(); }
    bool matched(VertexId v) const { return m_.matched(v); }
    bool has(VertexId u, VertexId v) const { return m_.has(u, v); }
    VertexId mate(VertexId v) const { return m_.mate(v); }

    std::vector<VertexId> unmatched_vertices() const {
        return m_.unmatched_vertices();
    }

    // Call after the edge has been inserted into g.
    void on_insert(const DynamicGraph& g, VertexId u, VertexId v) {
        (void)g;
        if (!m_.matched(u) && !m_.matched(v)) m_.add(u, v);
    }

    // Call after the edge has been deleted from g.
    void on_delete(const DynamicGraph& g, VertexId u, VertexId v) {
        if (!m_.has(u, v)) return;
        m_.remove(u, v);
        if (no_rematch_) return;
        rematch(g, u);
        rematch(g, v);
    }

    // No graph edge has both endpoints unmatched.
    bool audit_maximality(const DynamicGraph& g) const {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (m_.matched(v)) continue;
            for (VertexId u : g.neighbors(v))
                if (!m_.matched(u)) return false;
        }
        return true;
    }

    // All matching edges still present in g and partner index coherent.
    bool audit_consistent(const DynamicGraph& g) const {
        if (!m_.audit()) return false;
        for (const auto& [u, v] : m_.edges())
            if (!g.has_edge(u, v)) return false;
        return true;
    }

    // Restores maximality globally (used when leaving no-rematch mode).
    void remaximize(const DynamicGraph& g) {
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (!m_.matched(v)) rematch(g, v);
    }

private:
    void rematch(const DynamicGraph& g, VertexId v) {
        if (m_.matched(v)) return;
        VertexId best = kNoVertex;
        for (VertexId u : g.neighbors(v))
            if (!m_.matched(u) && (best == kNoVertex || u < best)) best = u;
        if (best != kNoVertex) m_.add(v, best);
    }

    Matching m_;
    bool no_rematch_;
};

}  // namespace dynmatch

#endif
