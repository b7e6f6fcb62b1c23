#include "dynmatch/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>

#include "dynmatch/dynamic_matching.hpp"
#include "dynmatch/exact.hpp"
#include "dynmatch/rng.hpp"
#include "json.hpp"

namespace dynmatch {

namespace {

// uniform absent pair, rejection-sampled
bool draw_absent_edge(const DynamicGraph& g, Rng& rng, VertexId& u, VertexId& v,
                      const Sides* sides) {
    const int n = g.vertex_count();
    for (int tries = 0; tries < 64 * std::max(1, n); ++tries) {
        if (sides) {
            u = sides->left[rng.index(sides->left.size())];
            v = sides->right[rng.index(sides->right.size())];
        } else {
            u = static_cast<VertexId>(rng.index(n));
            v = static_cast<VertexId>(rng.index(n));
            if (u == v) continue;
        }
        if (!g.has_edge(u, v)) return true;
    }
    return false;
}

UpdateStream gen_er_sliding(const GenParams& p, std::uint64_t seed, bool bipartite) {
    UpdateStream s;
    s.n = p.n;
    Rng rng(seed);
    DynamicGraph g(p.n);
    Sides sides = contiguous_sides(p.n);
    std::vector<Edge> fifo;
    std::size_t head = 0;
    for (int i = 0; i < p.length; ++i) {
        bool live_full = static_cast<long long>(fifo.size() - head) >= p.window;
        if (live_full && head < fifo.size()) {
            auto [u, v] = fifo[head++];
            g.delete_edge(u, v);
            s.events.push_back({UpdateEvent::Delete, u, v});
        } else {
            VertexId u, v;
            if (!draw_absent_edge(g, rng, u, v, bipartite ? &sides : nullptr)) break;
            g.insert_edge(u, v);
            fifo.emplace_back(u, v);
            s.events.push_back({UpdateEvent::Insert, u, v});
        }
    }
    return s;
}

UpdateStream gen_tight_reveal(const GenParams& p, std::uint64_t seed) {
    TightInstance inst = gen_tight_instance(p.k, p.beta);
    UpdateStream s;
    s.n = inst.g.vertex_count();
    auto edges = inst.g.edges();
    Rng rng(seed);
    rng.shuffle(edges);
    for (const auto& [u, v] : edges) s.events.push_back({UpdateEvent::Insert, u, v});
    return s;
}

// Deletes a uniformly random edge of the maintained maximal matching (a
// deterministic function of the surrogate's public state), mixed with
// random insertions that keep the graph near the live-edge target.
UpdateStream gen_adaptive_deleter(const GenParams& p, std::uint64_t seed) {
    UpdateStream s;
    s.n = p.n;
    Rng rng(seed);
    DynamicGraph g(p.n);
    MaintainedMatching mm(p.n);
    Sides sides = contiguous_sides(p.n);
    const Sides* side_ptr = p.bipartite ? &sides : nullptr;
    for (int i = 0; i < p.length; ++i) {
        bool can_delete = mm.size() > 0;
        bool warm = g.edge_count() >= p.window;
        if (can_delete && warm && rng.bernoulli(p.delete_ratio)) {
            auto edges = mm.matching().edges();
            auto [u, v] = edges[rng.index(edges.size())];
            g.delete_edge(u, v);
            mm.on_delete(g, u, v);
            s.events.push_back({UpdateEvent::Delete, u, v});
        } else {
            VertexId u, v;
            if (!draw_absent_edge(g, rng, u, v, side_ptr)) break;
            g.insert_edge(u, v);
            mm.on_insert(g, u, v);
            s.events.push_back({UpdateEvent::Insert, u, v});
        }
    }
    return s;
}

}  // namespace

UpdateStream gen_stream(const std::string& kind, const GenParams& params,
                        std::uint64_t seed) {
    if (kind == "er_sliding_window")
        return gen_er_sliding(params, seed, params.bipartite);
    if (kind == "bipartite_random") return gen_er_sliding(params, seed, true);
    if (kind == "tight_edcs_reveal") return gen_tight_reveal(params, seed);
    if (kind == "adaptive_matched_deleter") return gen_adaptive_deleter(params, seed);
    if (kind == "scripted") {
        std::istringstream is(params.script);
        return UpdateStream::load(is);
    }
    throw std::invalid_argument("unknown stream kind: " + kind);
}

std::string CheckpointRow::csv_header() {
    return "trial,event_index,m,mu_exact,value,ratio,work";
}

std::string CheckpointRow::csv() const {
    std::ostringstream os;
    os << trial << ',' << event_index << ',' << m << ',';
    if (mu_exact)
        os << *mu_exact;
    else
        os << "NA";
    os << ',' << value << ',' << ratio << ',' << work;
    return os.str();
}

std::string RunSummary::csv() const {
    std::ostringstream os;
    os << CheckpointRow::csv_header() << "\n";
    for (const auto& r : rows) os << r.csv() << "\n";
    return os.str();
}

void RunSummary::recompute_aggregates() {
    min_ratio = 0;
    mean_ratio = 0;
    upper_violations = lower_violations = 0;
    double sum = 0;
    long long cnt = 0;
    bool first = true;
    for (const auto& r : rows) {
        if (!r.mu_exact || *r.mu_exact == 0) continue;
        double ratio = r.value / static_cast<double>(*r.mu_exact);
        if (first || ratio < min_ratio) min_ratio = ratio;
        first = false;
        sum += ratio;
        ++cnt;
        if (r.value > static_cast<double>(*r.mu_exact) + 1e-9) ++upper_violations;
        if (ratio_threshold > 0 && ratio < ratio_threshold) ++lower_violations;
    }
    if (cnt) mean_ratio = sum / cnt;
}

std::string RunSummary::to_json() const {
    nlohmann::json j;
    j["min_ratio"] = min_ratio;
    j["mean_ratio"] = mean_ratio;
    j["upper_violations"] = upper_violations;
    j["lower_violations"] = lower_violations;
    j["ratio_threshold"] = ratio_threshold;
    j["total_queries"] = total_queries;
    j["checkpoints"] = rows.size();
    nlohmann::json rws = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["trial"] = r.trial;
        row["event_index"] = r.event_index;
        row["m"] = r.m;
        if (r.mu_exact)
            row["mu_exact"] = *r.mu_exact;
        else
            row["mu_exact"] = nullptr;
        row["value"] = r.value;
        row["ratio"] = r.ratio;
        row["work"] = r.work;
        rws.push_back(row);
    }
    j["rows"] = rws;
    j["timing"] = {{"wall_ms", wall_ms}};  // non-deterministic, kept separate
    return j.dump(2);
}

namespace {

struct PipelineState {
    DynamicGraph g;
    Sides sides;
    MaintainedMatching mm;
    std::optional<Edcs> edcs;

    PipelineState(int n, const ExperimentConfig& cfg)
        : g(n), sides(contiguous_sides(n)), mm(n) {
        if (cfg.algorithm == "twothirds")
            edcs.emplace(n, cfg.beta, 1.0 / cfg.beta);
    }

    void apply(const UpdateEvent& ev) {
        bool changed = g.apply(ev);
        if (!changed) return;
        if (ev.kind == UpdateEvent::Insert)
            mm.on_insert(g, ev.u, ev.v);
        else
            mm.on_delete(g, ev.u, ev.v);
        if (edcs) edcs->apply_update(g, ev);
    }
};

bool algorithm_is_bipartite(const std::string& alg) {
    return alg == "bipartite_oblivious" || alg == "bipartite_adaptive" ||
           alg == "twothirds";
}

EstimateReport run_query(const PipelineState& st, const ExperimentConfig& cfg,
                         std::uint64_t seed) {
    if (cfg.algorithm == "bipartite_oblivious")
        return query_bipartite_oblivious(st.g, st.sides, st.mm, cfg.epsilon, seed,
                                         cfg.est);
    if (cfg.algorithm == "bipartite_adaptive")
        return query_bipartite_adaptive(st.g, st.sides, st.mm, cfg.epsilon, seed,
                                        cfg.est);
    if (cfg.algorithm == "twothirds") {
        TwoThirdsParams p;
        p.delta = cfg.delta;
        p.eps = cfg.delta / 100.0;
        p.est = cfg.est;
        return query_twothirds(st.g, st.sides, *st.edcs, p, seed);
    }
    if (cfg.algorithm == "general")
        return query_general(st.g, st.mm, cfg.epsilon, seed, cfg.est);
    throw std::invalid_argument("unknown algorithm: " + cfg.algorithm);
}

std::optional<long long> exact_mu(const PipelineState& st,
                                  const ExperimentConfig& cfg) {
    if (algorithm_is_bipartite(cfg.algorithm))
        return max_matching_bipartite(st.g, st.sides).size();
    if (st.g.vertex_count() <= cfg.exact_general_max_n)
        return max_matching_general(st.g);
    return std::nullopt;
}

}  // namespace

namespace {

void run_one_trial(const ExperimentConfig& cfg, int trial, RunSummary& sum) {
    std::uint64_t trial_seed = splitmix64(cfg.seed + 0x9e37ULL * trial);
    UpdateStream stream = gen_stream(cfg.generator, cfg.gen, trial_seed);
    PipelineState st(stream.n, cfg);

    Rng seeds(splitmix64(trial_seed ^ 0xbe9cULL));
    std::optional<AmplifiedEstimator> amp;
    if (cfg.lazy) {
        std::vector<LazyEstimator> insts;
        for (int i = 0; i < std::max(1, cfg.amplify); ++i) {
            auto child = std::make_shared<Rng>(seeds.fork());
            auto refresh = [&st, &cfg, child]() {
                EstimateReport rep = run_query(st, cfg, child->fork());
                return RefreshResult{rep.value, rep.queries};
            };
            insts.emplace_back(refresh, cfg.lazy_mode, cfg.epsilon,
                               st.g.vertex_count(), cfg.spreading);
        }
        amp.emplace(std::move(insts), cfg.combine);
    }
    std::vector<ContractedGraph> copies;
    if (cfg.sparsify_target > 0)
        copies = vertex_sparsify(st.g, cfg.sparsify_target,
                                 std::max(1, cfg.sparsify_copies), seeds.fork());

    long long idx = 0;
    for (const auto& ev : stream.events) {
        st.apply(ev);
        if (amp) amp->on_update();
        for (auto& c : copies) c.apply(ev);
        ++idx;
        if (idx % cfg.checkpoint_interval == 0 ||
            idx == static_cast<long long>(stream.events.size())) {
            CheckpointRow row;
            row.trial = trial;
            row.event_index = idx;
            row.m = st.g.edge_count();
            row.mu_exact = exact_mu(st, cfg);
            if (!copies.empty()) {
                // preservation of the matching size across contracted copies
                long long best = 0;
                for (const auto& c : copies)
                    best = std::max<long long>(best,
                                               max_matching_general(c.graph()));
                row.value = static_cast<double>(best);
            } else if (amp) {
                row.value = amp->value();
                row.work = amp->per_update_work();
            } else {
                EstimateReport rep = run_query(st, cfg, seeds.fork());
                row.value = rep.value;
                row.work = rep.queries;
                sum.total_queries += rep.queries;
            }
            if (row.mu_exact && *row.mu_exact > 0)
                row.ratio = row.value / static_cast<double>(*row.mu_exact);
            sum.rows.push_back(row);
        }
    }
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& cfg) {
    auto wall0 = std::chrono::steady_clock::now();
    RunSummary sum;
    sum.ratio_threshold = cfg.ratio_threshold;
    for (int trial = 0; trial < std::max(1, cfg.trials); ++trial)
        run_one_trial(cfg, trial, sum);
    sum.recompute_aggregates();
    sum.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - wall0)
                      .count();
    return sum;
}

TightnessReport verify_lemma44(int k, int beta, double delta, double eps) {
    TightInstance inst = gen_tight_instance(k, beta, eps);
    return analyze_tightness(inst.g, inst.sides, inst.h, delta);
}

std::string audit_stream(const UpdateStream& s, std::optional<int> beta,
                         double eps, bool& ok) {
    std::ostringstream os;
    ok = true;
    DynamicGraph g(s.n);
    MaintainedMatching mm(s.n);
    std::optional<Edcs> edcs;
    if (beta) edcs.emplace(s.n, *beta, eps);

    long long idx = 0, graph_bad = 0, maximal_bad = 0, edcs_bad = 0, noop = 0;
    for (const auto& ev : s.events) {
        ++idx;
        bool changed = g.apply(ev);
        if (!changed) {
            ++noop;
            continue;
        }
        if (ev.kind == UpdateEvent::Insert)
            mm.on_insert(g, ev.u, ev.v);
        else
            mm.on_delete(g, ev.u, ev.v);
        if (edcs) edcs->apply_update(g, ev);

        if (!g.audit_consistent()) ++graph_bad;
        if (!mm.audit_maximality(g) || !mm.audit_consistent(g)) ++maximal_bad;
        if (edcs && !edcs->audit(g)) ++edcs_bad;
    }
    ok = graph_bad == 0 && maximal_bad == 0 && edcs_bad == 0 && noop == 0;
    os << "events=" << idx << " noop=" << noop << " graph_violations=" << graph_bad
       << " maximality_violations=" << maximal_bad;
    if (edcs) os << " edcs_violations=" << edcs_bad;
    os << " result=" << (ok ? "ok" : "FAIL") << "\n";
    return os.str();
}

}  // namespace dynmatch
