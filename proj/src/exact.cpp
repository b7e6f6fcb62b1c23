#include "dynmatch/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "dynmatch/rng.hpp"

namespace dynmatch {

BipAdj BipAdj::from_graph(const DynamicGraph& g, const Sides& sides) {
    BipAdj b;
    b.n = g.vertex_count();
    b.left = sides.left;
    b.right = sides.right;
    std::vector<int> side(b.n, 0), rpos(b.n, -1);
    for (VertexId v : b.left) side[v] = 1;
    for (std::size_t j = 0; j < b.right.size(); ++j) {
        side[b.right[j]] = 2;
        rpos[b.right[j]] = static_cast<int>(j);
    }
    b.adj.resize(b.left.size());
    for (std::size_t i = 0; i < b.left.size(); ++i) {
        VertexId v = b.left[i];
        for (VertexId u : g.neighbors(v)) {
            if (side[u] != 2)
                throw std::invalid_argument("edge violates declared bipartition");
            b.adj[i].push_back(rpos[u]);
        }
        std::sort(b.adj[i].begin(), b.adj[i].end());
    }
    // right-side edges must all lead back into left
    for (VertexId v : b.right)
        for (VertexId u : g.neighbors(v))
            if (side[u] != 1)
                throw std::invalid_argument("edge violates declared bipartition");
    return b;
}

namespace {

struct HkState {
    const BipAdj* b;
    std::vector<int> mate_l, mate_r;  // positions, -1 free
    std::vector<int> dist;

    bool bfs() {
        std::queue<int> q;
        bool found = false;
        dist.assign(b->left.size(), -1);
        for (std::size_t i = 0; i < b->left.size(); ++i)
            if (mate_l[i] < 0) {
                dist[i] = 0;
                q.push(static_cast<int>(i));
            }
        while (!q.empty()) {
            int i = q.front();
            q.pop();
            for (int j : b->adj[i]) {
                int i2 = mate_r[j];
                if (i2 < 0)
                    found = true;
                else if (dist[i2] < 0) {
                    dist[i2] = dist[i] + 1;
                    q.push(i2);
                }
            }
        }
        return found;
    }

    bool dfs(int i) {
        for (int j : b->adj[i]) {
            int i2 = mate_r[j];
            if (i2 < 0 || (dist[i2] == dist[i] + 1 && dfs(i2))) {
                mate_l[i] = j;
                mate_r[j] = i;
                return true;
            }
        }
        dist[i] = -1;
        return false;
    }
};

}  // namespace

Matching hopcroft_karp(const BipAdj& b, long long phase_cap) {
    HkState st;
    st.b = &b;
    st.mate_l.assign(b.left.size(), -1);
    st.mate_r.assign(b.right.size(), -1);
    long long phases = 0;
    while (st.bfs()) {
        for (std::size_t i = 0; i < b.left.size(); ++i)
            if (st.mate_l[i] < 0) st.dfs(static_cast<int>(i));
        ++phases;
        if (phase_cap > 0 && phases >= phase_cap) break;
    }
    Matching m(b.n);
    for (std::size_t i = 0; i < b.left.size(); ++i)
        if (st.mate_l[i] >= 0) m.add(b.left[i], b.right[st.mate_l[i]]);
    return m;
}

Matching max_matching_bipartite(const DynamicGraph& g, const Sides& sides,
                                long long phase_cap) {
    return hopcroft_karp(BipAdj::from_graph(g, sides), phase_cap);
}

namespace {

// Blossom contraction matcher, array-based.
class Blossom {
public:
    explicit Blossom(const DynamicGraph& g) : g_(&g), n_(g.vertex_count()) {
        match_.assign(n_, -1);
        p_.assign(n_, -1);
        base_.assign(n_, 0);
    }

    int run() {
        int res = 0;
        for (VertexId v = 0; v < n_; ++v)
            if (match_[v] < 0 && try_augment(v)) ++res;
        return res;
    }

private:
    VertexId lca(VertexId a, VertexId b) {
        std::vector<char> used(n_, 0);
        for (;;) {
            a = base_[a];
            used[a] = 1;
            if (match_[a] < 0) break;
            a = p_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (used[b]) return b;
            b = p_[match_[b]];
        }
    }

    void mark_path(std::vector<char>& blossom, VertexId v, VertexId b, VertexId child) {
        while (base_[v] != b) {
            blossom[base_[v]] = 1;
            blossom[base_[match_[v]]] = 1;
            p_[v] = child;
            child = match_[v];
            v = p_[match_[v]];
        }
    }

    bool try_augment(VertexId root) {
        std::vector<char> used(n_, 0);
        std::fill(p_.begin(), p_.end(), -1);
        for (VertexId v = 0; v < n_; ++v) base_[v] = v;
        used[root] = 1;
        std::queue<VertexId> q;
        q.push(root);
        std::vector<VertexId> order;  // deterministic neighbor scan
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            order = g_->neighbors(v);
            std::sort(order.begin(), order.end());
            for (VertexId to : order) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] >= 0 && p_[match_[to]] >= 0)) {
                    VertexId cur = lca(v, to);
                    std::vector<char> blossom(n_, 0);
                    mark_path(blossom, v, cur, to);
                    mark_path(blossom, to, cur, v);
                    for (VertexId u = 0; u < n_; ++u)
                        if (blossom[base_[u]]) {
                            base_[u] = cur;
                            if (!used[u]) {
                                used[u] = 1;
                                q.push(u);
                            }
                        }
                } else if (p_[to] < 0) {
                    p_[to] = v;
                    if (match_[to] < 0) {
                        augment(to);
                        return true;
                    }
                    used[match_[to]] = 1;
                    q.push(match_[to]);
                }
            }
        }
        return false;
    }

    void augment(VertexId v) {
        while (v >= 0) {
            VertexId pv = p_[v], ppv = match_[pv];
            match_[v] = pv;
            match_[pv] = v;
            v = ppv;
        }
    }

    const DynamicGraph* g_;
    int n_;
    std::vector<VertexId> match_, p_, base_;
};

}  // namespace

int max_matching_general(const DynamicGraph& g) { return Blossom(g).run(); }

namespace {

int exhaustive_rec(std::uint32_t mask, const std::vector<std::uint32_t>& nbr,
                   std::unordered_map<std::uint32_t, int>& memo) {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int v = __builtin_ctz(mask);
    std::uint32_t rest = mask & ~(1u << v);
    int best = exhaustive_rec(rest, nbr, memo);  // leave v unmatched
    std::uint32_t cand = nbr[v] & rest;
    while (cand) {
        int u = __builtin_ctz(cand);
        cand &= cand - 1;
        best = std::max(best, 1 + exhaustive_rec(rest & ~(1u << u), nbr, memo));
    }
    memo.emplace(mask, best);
    return best;
}

}  // namespace

int max_matching_exhaustive(const DynamicGraph& g) {
    int n = g.vertex_count();
    if (n > 24) throw std::invalid_argument("exhaustive matcher limited to n <= 24");
    std::vector<std::uint32_t> nbr(n, 0);
    for (VertexId v = 0; v < n; ++v)
        for (VertexId u : g.neighbors(v)) nbr[v] |= (1u << u);
    std::unordered_map<std::uint32_t, int> memo;
    std::uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
    return exhaustive_rec(full, nbr, memo);
}

namespace {

int greedy_size(const std::vector<Edge>& edges, const std::vector<int>& order,
                std::vector<char>& used, int n_hint) {
    (void)n_hint;
    std::fill(used.begin(), used.end(), 0);
    int size = 0;
    for (int idx : order) {
        VertexId u = edges[idx].first, v = edges[idx].second;
        if (!used[u] && !used[v]) {
            used[u] = used[v] = 1;
            ++size;
        }
    }
    return size;
}

int max_vertex(const std::vector<Edge>& edges) {
    int mx = -1;
    for (const auto& e : edges) mx = std::max({mx, e.first, e.second});
    return mx;
}

}  // namespace

Rational expected_gmm_exact(const std::vector<Edge>& edges) {
    const int m = static_cast<int>(edges.size());
    if (m > 9) throw std::invalid_argument("expected_gmm_exact limited to m <= 9");
    if (m == 0) return Rational(0, 1);
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::vector<char> used(max_vertex(edges) + 1, 0);
    std::int64_t sum = 0, count = 0;
    do {
        sum += greedy_size(edges, order, used, 0);
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    return Rational(sum, count);
}

Rational expected_gmm_exact(const DynamicGraph& g) {
    return expected_gmm_exact(g.edges());
}

MonteCarloEstimate expected_gmm_montecarlo(const std::vector<Edge>& edges,
                                           long trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    MonteCarloEstimate out;
    out.trials = trials;
    if (edges.empty()) return out;
    Rng rng(seed);
    const int m = static_cast<int>(edges.size());
    std::vector<int> order(m);
    std::vector<char> used(max_vertex(edges) + 1, 0);
    double sum = 0, sumsq = 0;
    for (long t = 0; t < trials; ++t) {
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(order);
        double x = greedy_size(edges, order, used, 0);
        sum += x;
        sumsq += x * x;
    }
    out.mean = sum / trials;
    if (trials > 1) {
        double var = (sumsq - sum * sum / trials) / (trials - 1);
        out.stderr_ = std::sqrt(std::max(0.0, var) / trials);
    }
    return out;
}

int gmm_size_once(const std::vector<Edge>& edges, std::uint64_t seed) {
    if (edges.empty()) return 0;
    Rng rng(seed);
    const int m = static_cast<int>(edges.size());
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<char> used(max_vertex(edges) + 1, 0);
    return greedy_size(edges, order, used, 0);
}

HallWitness hall_witness(const BipAdj& b) {
    const int nl = static_cast<int>(b.left.size());
    const int nr = static_cast<int>(b.right.size());
    const int n_pad = std::max(nl, nr);

    Matching m = hopcroft_karp(b);
    std::vector<int> mate_l(nl, -1), mate_r(nr, -1);
    std::vector<int> rpos(b.n, -1);
    for (int j = 0; j < nr; ++j) rpos[b.right[j]] = j;
    for (int i = 0; i < nl; ++i) {
        VertexId w = m.mate(b.left[i]);
        if (w != kNoVertex) {
            mate_l[i] = rpos[w];
            mate_r[rpos[w]] = i;
        }
    }

    // Alternating reachability from free left vertices: left -> right over
    // non-matching edges, right -> left over matching edges.
    std::vector<char> zl(nl, 0), zr(nr, 0);
    std::queue<int> q;
    for (int i = 0; i < nl; ++i)
        if (mate_l[i] < 0) {
            zl[i] = 1;
            q.push(i);
        }
    while (!q.empty()) {
        int i = q.front();
        q.pop();
        for (int j : b.adj[i]) {
            if (zr[j]) continue;
            zr[j] = 1;
            int i2 = mate_r[j];
            if (i2 >= 0 && !zl[i2]) {
                zl[i2] = 1;
                q.push(i2);
            }
        }
    }

    HallWitness w;
    w.n_pad = n_pad;
    for (int i = 0; i < nl; ++i)
        if (zl[i]) w.witness.push_back(b.left[i]);
    for (int j = 0; j < nr; ++j)
        if (zr[j]) w.neighborhood.push_back(b.right[j]);
    // isolated pad vertices on the left are free, hence in the witness
    w.pad_in_witness = n_pad - nl;
    w.deficiency = static_cast<long long>(w.witness_size()) -
                   static_cast<long long>(w.neighborhood.size());
    return w;
}

HallWitness hall_witness(const DynamicGraph& g, const Sides& sides) {
    return hall_witness(BipAdj::from_graph(g, sides));
}

}  // namespace dynmatch
