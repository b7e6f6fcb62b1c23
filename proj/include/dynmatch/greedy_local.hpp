#ifndef DYNMATCH_GREEDY_LOCAL_HPP
#define DYNMATCH_GREEDY_LOCAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/rng.hpp"

namespace dynmatch {

// Lazy i.i.d. edge ranks realizing a uniform edge permutation.  Hash-based,
// so a rank is fixed by (seed, edge) alone and repeated access is
// consistent.  Exact ties are broken by edge key.
class RankOracle {
public:
    explicit RankOracle(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t rank_bits(VertexId u, VertexId v) const {
        return splitmix64(seed_ ^ splitmix64(edge_key(u, v)));
    }

    double rank(VertexId u, VertexId v) const {
        return static_cast<double>(rank_bits(u, v) >> 11) * 0x1.0p-53;
    }

    // strict total order over edges
    bool before(VertexId u1, VertexId v1, VertexId u2, VertexId v2) const {
        std::uint64_t a = rank_bits(u1, v1), b = rank_bits(u2, v2);
        if (a != b) return a < b;
        return edge_key(u1, v1) < edge_key(u2, v2);
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

struct budget_exhausted : std::runtime_error {
    budget_exhausted() : std::runtime_error("probe budget exhausted") {}
};

// One local simulation of the randomized greedy maximal matching under a
// fixed rank oracle.  Memoizes edge decisions and per-vertex incident-edge
// scans; counts every membership probe.
class LocalGreedyState {
public:
    explicit LocalGreedyState(std::uint64_t seed) : ranks_(seed) {}

    const RankOracle& ranks() const { return ranks_; }

    std::uint64_t queries() const { return queries_; }
    void reset_budget(std::uint64_t budget) {
        budget_start_ = queries_;
        budget_ = budget;
    }

    // true iff the edge is in GMM(view, pi): every incident edge of lower
    // rank is out.  Explores competitors in increasing rank.
    template <typename View>
    bool edge_in_gmm(const View& view, VertexId u, VertexId v) {
        std::uint64_t key = edge_key(u, v);
        auto it = decided_.find(key);
        if (it != decided_.end()) return it->second != 0;

        std::vector<const IncidentEdge*> lower;
        collect_lower(view, u, v, lower);
        std::sort(lower.begin(), lower.end(),
                  [](const IncidentEdge* a, const IncidentEdge* b) {
                      if (a->bits != b->bits) return a->bits < b->bits;
                      return a->key < b->key;
                  });
        bool in = true;
        for (const IncidentEdge* f : lower) {
            if (edge_in_gmm(view, f->a, f->b)) {
                in = false;
                break;
            }
        }
        decided_[key] = in ? 1 : 0;
        return in;
    }

    // true iff some incident edge of v is in the GMM; scans v's row in rank
    // order.
    template <typename View>
    bool vertex_match_status(const View& view, VertexId v) {
        const Row& row = scan_row(view, v);
        for (const IncidentEdge& e : row.edges)
            if (edge_in_gmm(view, e.a, e.b)) return true;
        return false;
    }

private:
    struct IncidentEdge {
        std::uint64_t bits;
        std::uint64_t key;
        VertexId a, b;
    };
    struct Row {
        std::vector<IncidentEdge> edges;  // rank-ascending
    };

    void charge(std::uint64_t c) {
        queries_ += c;
        if (budget_ && queries_ - budget_start_ > budget_) throw budget_exhausted{};
    }

    template <typename View>
    const Row& scan_row(const View& view, VertexId v) {
        auto it = rows_.find(v);
        if (it != rows_.end()) return it->second;
        Row row;
        const auto& cand = view.candidates(v);
        charge(cand.size());
        for (VertexId c : cand) {
            if (c == v) continue;
            if (view.has_edge(v, c))
                row.edges.push_back(
                    {ranks_.rank_bits(v, c), edge_key(v, c), v, c});
        }
        std::sort(row.edges.begin(), row.edges.end(),
                  [](const IncidentEdge& a, const IncidentEdge& b) {
                      if (a.bits != b.bits) return a.bits < b.bits;
                      return a.key < b.key;
                  });
        return rows_.emplace(v, std::move(row)).first->second;
    }

    template <typename View>
    void collect_lower(const View& view, VertexId u, VertexId v,
                       std::vector<const IncidentEdge*>& out) {
        std::uint64_t bits = ranks_.rank_bits(u, v);
        std::uint64_t key = edge_key(u, v);
        for (VertexId x : {u, v}) {
            const Row& row = scan_row(view, x);
            for (const IncidentEdge& e : row.edges) {
                if (e.bits > bits || (e.bits == bits && e.key >= key)) break;
                if (e.key != key) out.push_back(&e);
            }
        }
    }

    RankOracle ranks_;
    std::unordered_map<std::uint64_t, std::int8_t> decided_;
    std::unordered_map<VertexId, Row> rows_;
    std::uint64_t queries_ = 0;
    std::uint64_t budget_ = 0;  // 0 = unlimited, relative to budget_start_
    std::uint64_t budget_start_ = 0;
};

struct SizeEstimate {
    double value = 0;      // one-sided estimate, margin already subtracted
    double raw = 0;        // pre-margin estimate of |GMM|
    double margin = 0;
    double epsilon = 0;
    long samples = 0;      // sampled vertices (or swept vertices)
    long failures = 0;     // budget-exhausted samples, folded downward
    std::uint64_t queries = 0;
    bool swept = false;    // all view vertices evaluated under one pi
};

struct EstimatorConfig {
    double sample_c = 48.0;      // s = ceil(sample_c * ln(n) / eps^2)
    double budget_factor = 50.0; // probe budget per sampled vertex
};

// One-sided estimate of E_pi |GMM(view, pi)|.  Samples
// s = ceil(c ln n / eps^2) view vertices under one shared rank oracle and
// returns max(0, n_view * matched_fraction / 2 - (eps/2) n_view).  When s
// reaches the view size the sampler just evaluates every vertex, which
// makes the raw value the exact |GMM| for that pi.
template <typename View>
SizeEstimate estimate_gmm_size(const View& view, double eps, std::uint64_t seed,
                               const EstimatorConfig& cfg = {}) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must be in (0,1)");
    SizeEstimate out;
    out.epsilon = eps;
    const auto& verts = view.vertices();
    const double n_view = static_cast<double>(verts.size());
    if (verts.empty()) return out;

    double s_real = cfg.sample_c * std::log(std::max<double>(2.0, n_view)) / (eps * eps);
    long s = s_real > 1e18 ? std::numeric_limits<long>::max()
                           : static_cast<long>(std::ceil(s_real));

    LocalGreedyState state(seed);
    std::uint64_t per_vertex_budget = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(
               std::min<double>(1e18, cfg.budget_factor * n_view / eps)));

    long matched = 0;
    if (s >= static_cast<long>(verts.size())) {
        out.swept = true;
        out.samples = static_cast<long>(verts.size());
        for (VertexId v : verts) {
            state.reset_budget(per_vertex_budget);
            try {
                if (state.vertex_match_status(view, v)) ++matched;
            } catch (const budget_exhausted&) {
                ++out.failures;
            }
        }
        out.raw = static_cast<double>(matched) / 2.0;
    } else {
        Rng rng(splitmix64(seed ^ 0x5eedULL));
        out.samples = s;
        for (long i = 0; i < s; ++i) {
            VertexId v = verts[rng.index(verts.size())];
            state.reset_budget(per_vertex_budget);
            try {
                if (state.vertex_match_status(view, v)) ++matched;
            } catch (const budget_exhausted&) {
                ++out.failures;
            }
        }
        double frac = static_cast<double>(matched) / static_cast<double>(s);
        out.raw = n_view * frac / 2.0;
    }
    out.margin = eps * n_view / 2.0;
    out.value = std::max(0.0, out.raw - out.margin);
    out.queries = state.queries();
    return out;
}

struct MatchStatusSample {
    VertexId v = kNoVertex;
    bool matched = false;
    bool failed = false;
    std::uint64_t queries = 0;
};

// Match status of one vertex under a fresh rank oracle, with the probe
// budget scaled to n^2/(eps |K|).
template <typename View>
MatchStatusSample match_status_of(const View& view, VertexId v, double eps,
                                  std::size_t k_size, std::uint64_t seed,
                                  const EstimatorConfig& cfg = {}) {
    if (k_size == 0) throw std::invalid_argument("K must be nonempty");
    MatchStatusSample out;
    out.v = v;
    LocalGreedyState state(seed);
    double n_view = static_cast<double>(view.vertices().size());
    std::uint64_t budget = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::min<double>(
               1e18, cfg.budget_factor * n_view * n_view /
                         (eps * static_cast<double>(k_size)))));
    state.reset_budget(budget);
    try {
        out.matched = state.vertex_match_status(view, v);
    } catch (const budget_exhausted&) {
        out.failed = true;
    }
    out.queries = state.queries();
    return out;
}

// Samples v uniformly from K and reports its GMM match status.
template <typename View>
MatchStatusSample match_status_random_vertex(const View& view,
                                             const std::vector<VertexId>& k_set,
                                             double eps, std::uint64_t seed,
                                             const EstimatorConfig& cfg = {}) {
    if (k_set.empty()) throw std::invalid_argument("K must be nonempty");
    Rng rng(splitmix64(seed ^ 0x6b5eULL));
    VertexId v = k_set[rng.index(k_set.size())];
    return match_status_of(view, v, eps, k_set.size(), rng.fork(), cfg);
}

}  // namespace dynmatch

#endif
