#ifndef DYNMATCH_GRAPH_HPP
#define DYNMATCH_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dynmatch {

using VertexId = int;
inline constexpr VertexId kNoVertex = -1;

using Edge = std::pair<VertexId, VertexId>;

inline std::uint64_t edge_key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

struct UpdateEvent {
    enum Kind { Insert, Delete };
    Kind kind;
    VertexId u, v;
};

// Simple undirected graph on a fixed vertex set [0, n).  Expected-O(1)
// membership and edge removal, per-vertex neighbor iteration.
class DynamicGraph {
public:
    explicit DynamicGraph(int n) : adj_(n), pos_(n) {
        if (n < 0) throw std::invalid_argument("vertex count must be >= 0");
    }

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    long long edge_count() const { return m_; }

    bool insert_edge(VertexId u, VertexId v) {
        check_pair(u, v);
        if (pos_[u].count(v)) return false;
        pos_[u].emplace(v, adj_[u].size());
        adj_[u].push_back(v);
        pos_[v].emplace(u, adj_[v].size());
        adj_[v].push_back(u);
        ++m_;
        return true;
    }

    bool delete_edge(VertexId u, VertexId v) {
        check_pair(u, v);
        auto it = pos_[u].find(v);
        if (it == pos_[u].end()) return false;
        unlink(u, v);
        unlink(v, u);
        --m_;
        return true;
    }

    bool has_edge(VertexId u, VertexId v) const {
        check_pair(u, v);
        return pos_[u].count(v) != 0;
    }

    int degree(VertexId v) const {
        check_vertex(v);
        return static_cast<int>(adj_[v].size());
    }

    const std::vector<VertexId>& neighbors(VertexId v) const {
        check_vertex(v);
        return adj_[v];
    }

    bool apply(const UpdateEvent& ev) {
        return ev.kind == UpdateEvent::Insert ? insert_edge(ev.u, ev.v)
                                              : delete_edge(ev.u, ev.v);
    }

    // Edges as (u, v) with u < v, sorted.
    std::vector<Edge> edges() const;

    // Full consistency audit: adjacency lists, position maps and degrees
    // agree and are symmetric.
    bool audit_consistent() const;

private:
    void check_vertex(VertexId v) const {
        if (v < 0 || v >= vertex_count())
            throw std::invalid_argument("vertex out of range");
    }
    void check_pair(VertexId u, VertexId v) const {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("self-loops not allowed");
    }
    void unlink(VertexId u, VertexId v) {
        auto it = pos_[u].find(v);
        std::size_t i = it->second;
        VertexId last = adj_[u].back();
        adj_[u][i] = last;
        pos_[u][last] = i;
        adj_[u].pop_back();
        pos_[u].erase(it);
    }

    std::vector<std::vector<VertexId>> adj_;
    std::vector<std::unordered_map<VertexId, std::size_t>> pos_;
    long long m_ = 0;
};

struct Sides {
    std::vector<VertexId> left, right;
};

// Splits [0, n) into [0, n/2) and [n/2, n).
Sides contiguous_sides(int n);

// Read-only bipartite slice of a base graph between two disjoint vertex
// sets.  No edges are materialized; membership is base membership plus the
// side filter.  The base must not be mutated while the view is queried.
template <typename Base>
class BipartiteView {
public:
    BipartiteView(const Base& base, std::vector<VertexId> side_a,
                  std::vector<VertexId> side_b)
        : base_(&base),
          side_a_(std::move(side_a)),
          side_b_(std::move(side_b)),
          side_of_(base.vertex_count(), 0) {
        for (VertexId v : side_a_) mark(v, 1);
        for (VertexId v : side_b_) mark(v, 2);
        vertices_ = side_a_;
        vertices_.insert(vertices_.end(), side_b_.begin(), side_b_.end());
    }

    bool has_edge(VertexId u, VertexId v) const {
        int su = side_of_[u], sv = side_of_[v];
        if (su == 0 || sv == 0 || su == sv) return false;
        return base_->has_edge(u, v);
    }

    bool in_view(VertexId v) const { return side_of_[v] != 0; }
    int side_of(VertexId v) const { return side_of_[v]; }

    const std::vector<VertexId>& vertices() const { return vertices_; }
    const std::vector<VertexId>& side_a() const { return side_a_; }
    const std::vector<VertexId>& side_b() const { return side_b_; }

    // Candidate partners of v for membership probes: the opposite side.
    const std::vector<VertexId>& candidates(VertexId v) const {
        return side_of_[v] == 1 ? side_b_ : side_a_;
    }

    const Base& base() const { return *base_; }

    std::vector<Edge> materialize_edges() const {
        std::vector<Edge> out;
        for (VertexId v : side_a_)
            for (VertexId u : base_->neighbors(v))
                if (side_of_[u] == 2) out.emplace_back(v, u);
        return out;
    }

private:
    void mark(VertexId v, std::uint8_t side) {
        if (v < 0 || v >= static_cast<VertexId>(side_of_.size()))
            throw std::invalid_argument("view vertex out of range");
        if (side_of_[v] != 0 && side_of_[v] != side)
            throw std::invalid_argument("view sides overlap");
        side_of_[v] = side;
    }

    const Base* base_;
    std::vector<VertexId> side_a_, side_b_;
    std::vector<std::uint8_t> side_of_;
    std::vector<VertexId> vertices_;
};

using InducedBipartiteView = BipartiteView<DynamicGraph>;

// Induced subgraph view on a vertex subset (not necessarily bipartite).
class InducedView {
public:
    InducedView(const DynamicGraph& base, std::vector<VertexId> members)
        : base_(&base),
          members_(std::move(members)),
          in_(base.vertex_count(), 0) {
        for (VertexId v : members_) {
            if (v < 0 || v >= base.vertex_count())
                throw std::invalid_argument("view vertex out of range");
            in_[v] = 1;
        }
    }

    bool has_edge(VertexId u, VertexId v) const {
        if (u == v || !in_[u] || !in_[v]) return false;
        return base_->has_edge(u, v);
    }

    bool in_view(VertexId v) const { return in_[v] != 0; }
    const std::vector<VertexId>& vertices() const { return members_; }
    const std::vector<VertexId>& candidates(VertexId) const { return members_; }
    const DynamicGraph& base() const { return *base_; }

    std::vector<Edge> materialize_edges() const {
        std::vector<Edge> out;
        for (VertexId v : members_)
            for (VertexId u : base_->neighbors(v))
                if (v < u && in_[u]) out.emplace_back(v, u);
        return out;
    }

private:
    const DynamicGraph* base_;
    std::vector<VertexId> members_;
    std::vector<std::uint8_t> in_;
};

InducedBipartiteView induced_view(const DynamicGraph& g,
                                  std::vector<VertexId> side_a,
                                  std::vector<VertexId> side_b);

// Update streams as text: header "n <count>", then "+ u v" / "- u v" lines.
struct UpdateStream {
    int n = 0;
    std::vector<UpdateEvent> events;

    void save(std::ostream& os) const;
    static UpdateStream load(std::istream& is);

    // Replays onto a fresh graph; throws on no-op inserts/deletes.
    DynamicGraph replay_strict() const;
};

}  // namespace dynmatch

#endif
