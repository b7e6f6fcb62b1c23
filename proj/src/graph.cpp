#include "dynmatch/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace dynmatch {

std::vector<Edge> DynamicGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (VertexId v = 0; v < vertex_count(); ++v)
        for (VertexId u : adj_[v])
            if (v < u) out.emplace_back(v, u);
    std::sort(out.begin(), out.end());
    return out;
}

bool DynamicGraph::audit_consistent() const {
    long long seen = 0;
    for (VertexId v = 0; v < vertex_count(); ++v) {
        if (adj_[v].size() != pos_[v].size()) return false;
        for (std::size_t i = 0; i < adj_[v].size(); ++i) {
            VertexId u = adj_[v][i];
            auto it = pos_[v].find(u);
            if (it == pos_[v].end() || it->second != i) return false;
            if (u == v) return false;
            if (!pos_[u].count(v)) return false;  // symmetry
        }
        seen += static_cast<long long>(adj_[v].size());
    }
    return seen == 2 * m_;
}

Sides contiguous_sides(int n) {
    Sides s;
    for (VertexId v = 0; v < n / 2; ++v) s.left.push_back(v);
    for (VertexId v = n / 2; v < n; ++v) s.right.push_back(v);
    return s;
}

InducedBipartiteView induced_view(const DynamicGraph& g,
                                  std::vector<VertexId> side_a,
                                  std::vector<VertexId> side_b) {
    return InducedBipartiteView(g, std::move(side_a), std::move(side_b));
}

void UpdateStream::save(std::ostream& os) const {
    os << "n " << n << "\n";
    for (const auto& ev : events)
        os << (ev.kind == UpdateEvent::Insert ? '+' : '-') << ' ' << ev.u
           << ' ' << ev.v << "\n";
}

UpdateStream UpdateStream::load(std::istream& is) {
    UpdateStream s;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (!have_header) {
            if (tok != "n") throw std::invalid_argument("missing stream header");
            ls >> s.n;
            have_header = true;
            continue;
        }
        UpdateEvent ev;
        if (tok == "+")
            ev.kind = UpdateEvent::Insert;
        else if (tok == "-")
            ev.kind = UpdateEvent::Delete;
        else
            throw std::invalid_argument("bad event line: " + line);
        if (!(ls >> ev.u >> ev.v))
            throw std::invalid_argument("bad event line: " + line);
        s.events.push_back(ev);
    }
    if (!have_header) throw std::invalid_argument("empty stream");
    return s;
}

DynamicGraph UpdateStream::replay_strict() const {
    DynamicGraph g(n);
    for (const auto& ev : events)
        if (!g.apply(ev))
            throw std::invalid_argument("stream event was a no-op");
    return g;
}

}  // namespace dynmatch
