#include "dynmatch/edcs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "json.hpp"

namespace dynmatch {

Edcs::Edcs(int n, int beta, double eps) : beta_(beta), eps_(eps), adj_(n), pos_(n) {
    if (beta < 2) throw std::invalid_argument("beta must be >= 2");
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must be in (0,1)");
    beta_minus_ = static_cast<int>(std::ceil((1.0 - eps) * beta - 1e-12));
    if (beta_minus_ < 1) beta_minus_ = 1;
}

std::vector<Edge> Edcs::edges() const {
    std::vector<Edge> out;
    for (VertexId v = 0; v < vertex_count(); ++v)
        for (VertexId u : adj_[v])
            if (v < u) out.emplace_back(v, u);
    std::sort(out.begin(), out.end());
    return out;
}

void Edcs::add_h(VertexId u, VertexId v) {
    pos_[u].emplace(v, adj_[u].size());
    adj_[u].push_back(v);
    pos_[v].emplace(u, adj_[v].size());
    adj_[v].push_back(u);
    ++m_;
}

void Edcs::remove_h(VertexId u, VertexId v) {
    for (VertexId x : {u, v}) {
        VertexId y = (x == u) ? v : u;
        auto it = pos_[x].find(y);
        std::size_t i = it->second;
        VertexId last = adj_[x].back();
        adj_[x][i] = last;
        pos_[x][last] = i;
        adj_[x].pop_back();
        pos_[x].erase(it);
    }
    --m_;
}

long long Edcs::apply_update(const DynamicGraph& g, const UpdateEvent& ev) {
    if (!maintainable())
        throw std::invalid_argument(
            "EDCS maintenance requires eps >= 1/beta (beta_minus < beta)");
    std::vector<VertexId> dirty{ev.u, ev.v};
    long long steps = 0;
    if (ev.kind == UpdateEvent::Insert) {
        if (has_edge(ev.u, ev.v)) return 0;  // an earlier fix-up pulled it in
        if (degree_h(ev.u) + degree_h(ev.v) < beta_minus_) {
            add_h(ev.u, ev.v);
            ++steps;
        } else {
            return 0;  // the new edge already satisfies the lower condition
        }
    } else {
        if (!has_edge(ev.u, ev.v)) return 0;
        remove_h(ev.u, ev.v);
        ++steps;
    }
    return steps + fix_from(g, std::move(dirty));
}

long long Edcs::fix_from(const DynamicGraph& g, std::vector<VertexId> dirty) {
    const long long cap =
        10LL * beta_ * beta_ * std::max(1, vertex_count());
    long long steps = 0;
    std::deque<VertexId> q(dirty.begin(), dirty.end());
    std::vector<std::uint8_t> queued(vertex_count(), 0);
    for (VertexId v : dirty) queued[v] = 1;

    auto push = [&](VertexId v) {
        if (!queued[v]) {
            queued[v] = 1;
            q.push_back(v);
        }
    };

    while (!q.empty()) {
        VertexId x = q.front();
        q.pop_front();
        queued[x] = 0;

        // upper condition at x
        bool changed = true;
        while (changed) {
            changed = false;
            for (VertexId y : adj_[x]) {
                if (degree_h(x) + degree_h(y) > beta_) {
                    remove_h(x, y);
                    ++steps;
                    if (steps > cap) throw std::runtime_error("edcs fix-up exceeded step cap");
                    push(x);
                    push(y);
                    changed = true;
                    break;
                }
            }
        }
        // lower condition on x's non-H graph edges
        for (VertexId y : g.neighbors(x)) {
            if (!has_edge(x, y) && degree_h(x) + degree_h(y) < beta_minus_) {
                add_h(x, y);
                ++steps;
                if (steps > cap) throw std::runtime_error("edcs fix-up exceeded step cap");
                push(x);
                push(y);
            }
        }
    }
    return steps;
}

void Edcs::rebuild(const DynamicGraph& g) {
    for (auto& a : adj_) a.clear();
    for (auto& p : pos_) p.clear();
    m_ = 0;
    for (const auto& [u, v] : g.edges())
        apply_update(g, UpdateEvent{UpdateEvent::Insert, u, v});
}

void Edcs::install_edges(const std::vector<Edge>& h_edges) {
    for (auto& a : adj_) a.clear();
    for (auto& p : pos_) p.clear();
    m_ = 0;
    for (const auto& [u, v] : h_edges) add_h(u, v);
}

bool Edcs::audit(const DynamicGraph& g) const {
    for (VertexId v = 0; v < vertex_count(); ++v) {
        if (adj_[v].size() != pos_[v].size()) return false;
        for (VertexId u : adj_[v]) {
            if (!g.has_edge(u, v)) return false;  // H must be a subgraph
            if (degree_h(u) + degree_h(v) > beta_) return false;
        }
    }
    for (const auto& [u, v] : g.edges())
        if (!has_edge(u, v) && degree_h(u) + degree_h(v) < beta_minus_) return false;
    return true;
}

MidLowClassification classify(const Edcs& e) {
    MidLowClassification c;
    int n = e.vertex_count();
    c.is_mid.assign(n, 0);
    c.is_low.assign(n, 0);
    const long long beta = e.beta();
    for (VertexId v = 0; v < n; ++v) {
        long long d10 = 10LL * e.degree_h(v);
        if (d10 >= 4 * beta && d10 <= 6 * beta) {
            c.is_mid[v] = 1;
            c.v_mid.push_back(v);
        } else if (d10 <= 2 * beta) {
            c.is_low[v] = 1;
            c.v_low.push_back(v);
        }
    }
    return c;
}

BipartiteView<Edcs> extract_Hprime(const Edcs& e, const MidLowClassification& cls) {
    return BipartiteView<Edcs>(e, cls.v_low, cls.v_mid);
}

Matching approx_matching_of_H(const Edcs& e, const Sides& sides, double eps) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps must be in (0,1)");
    std::vector<int> side(e.vertex_count(), 0), rpos(e.vertex_count(), -1);
    for (VertexId v : sides.left) side[v] = 1;
    for (std::size_t j = 0; j < sides.right.size(); ++j) {
        side[sides.right[j]] = 2;
        rpos[sides.right[j]] = static_cast<int>(j);
    }
    BipAdj b;
    b.n = e.vertex_count();
    b.left = sides.left;
    b.right = sides.right;
    b.adj.resize(b.left.size());
    for (std::size_t i = 0; i < b.left.size(); ++i) {
        for (VertexId u : e.neighbors(b.left[i])) {
            if (side[u] != 2) throw unsupported_error("H is not bipartite for the given sides");
            b.adj[i].push_back(rpos[u]);
        }
        std::sort(b.adj[i].begin(), b.adj[i].end());
    }
    for (VertexId v : sides.right)
        for (VertexId u : e.neighbors(v))
            if (side[u] != 1)
                throw unsupported_error("H is not bipartite for the given sides");
    long long cap = static_cast<long long>(std::min(1e18, std::ceil(1.0 / eps)));
    return hopcroft_karp(b, cap);
}

namespace {

CheckResult check_ge(double observed, double bound, bool vacuous = false) {
    CheckResult r;
    r.bound = bound;
    r.observed = observed;
    r.vacuous = vacuous;
    r.pass = vacuous || observed >= bound - 1e-9;
    return r;
}

CheckResult check_le(double observed, double bound, bool vacuous = false) {
    CheckResult r;
    r.bound = bound;
    r.observed = observed;
    r.vacuous = vacuous;
    r.pass = vacuous || observed <= bound + 1e-9;
    return r;
}

}  // namespace

bool TightnessReport::all_pass() const {
    if (!p1.pass || !p2.pass || !p3.pass) return false;
    for (const auto& [id, c] : claim_checks)
        if (!c.pass) return false;
    return true;
}

TightnessReport analyze_tightness(const DynamicGraph& g, const Sides& sides,
                                  const Edcs& e, double delta) {
    if (!(e.eps() < 1.0 / 120.0))
        throw std::invalid_argument("eps must be < 1/120");
    if (!(delta > 2 * e.eps() && delta < 1.0 / 60.0))
        throw std::invalid_argument("delta must be in (2 eps, 1/60)");

    TightnessReport rep;
    rep.delta = delta;
    rep.beta = e.beta();
    rep.eps = e.eps();
    rep.alpha = 3.0 * std::sqrt(delta);

    const int n = g.vertex_count();
    std::vector<int> side(n, 0);
    for (VertexId v : sides.left) side[v] = 1;
    for (VertexId v : sides.right) side[v] = 2;

    // exact matchings; M* is the deterministic Hopcroft-Karp matching of G
    BipAdj bg = BipAdj::from_graph(g, sides);
    Matching m_star = hopcroft_karp(bg);
    rep.mu_g = m_star.size();

    BipAdj bh;
    bh.n = n;
    bh.left = sides.left;
    bh.right = sides.right;
    {
        std::vector<int> rpos(n, -1);
        for (std::size_t j = 0; j < bh.right.size(); ++j) rpos[bh.right[j]] = static_cast<int>(j);
        bh.adj.resize(bh.left.size());
        for (std::size_t i = 0; i < bh.left.size(); ++i) {
            for (VertexId u : e.neighbors(bh.left[i])) {
                if (side[u] != 2) throw unsupported_error("EDCS not bipartite for the sides");
                bh.adj[i].push_back(rpos[u]);
            }
            std::sort(bh.adj[i].begin(), bh.adj[i].end());
        }
        for (VertexId v : bh.right)
            for (VertexId u : e.neighbors(v))
                if (side[u] != 1)
                    throw unsupported_error("EDCS not bipartite for the sides");
    }
    rep.mu_h = hopcroft_karp(bh).size();
    rep.witness = hall_witness(bh);

    // A on the left; B = N_H(A); complements over the real sides
    std::vector<std::uint8_t> in_a(n, 0), in_b(n, 0);
    for (VertexId v : rep.witness.witness) in_a[v] = 1;
    for (VertexId v : rep.witness.neighborhood) in_b[v] = 1;

    std::vector<std::uint8_t> in_s(n, 0), in_t(n, 0), in_w(n, 0);
    for (const auto& [u, v] : m_star.edges()) {
        VertexId l = side[u] == 1 ? u : v;
        VertexId r = side[u] == 1 ? v : u;
        if (in_a[l] && !in_b[r]) in_s[l] = in_s[r] = 1;  // M*-edge A -> B-bar
    }
    for (VertexId v : sides.left) {
        if (in_s[v]) rep.set_s.push_back(v);
        else if (in_a[v]) { in_w[v] = 1; rep.set_w.push_back(v); }
        else { in_t[v] = 1; rep.set_t.push_back(v); }
    }
    for (VertexId v : sides.right) {
        if (in_s[v]) rep.set_s.push_back(v);
        else if (in_b[v]) { in_t[v] = 1; rep.set_t.push_back(v); }
        else { in_w[v] = 1; rep.set_w.push_back(v); }
    }

    // degree aggregates over H
    for (VertexId v : rep.set_s) rep.m_s += e.degree_h(v);
    std::vector<long long> d_s_of(n, 0);
    for (VertexId t : rep.set_t) {
        long long ds = 0;
        for (VertexId u : e.neighbors(t)) {
            if (in_s[u]) ++ds;
            else if (in_w[u]) ++rep.m_w;
        }
        d_s_of[t] = ds;
    }
    const double s_size = static_cast<double>(rep.set_s.size());
    const double t_size = static_cast<double>(rep.set_t.size());
    rep.dbar_S = s_size > 0 ? static_cast<double>(rep.m_s) / s_size : 0.0;
    rep.dbarS_T = t_size > 0 ? static_cast<double>(rep.m_s) / t_size : 0.0;
    rep.dbarW_T = t_size > 0 ? static_cast<double>(rep.m_w) / t_size : 0.0;

    for (VertexId t : rep.set_t)
        if (static_cast<double>(e.degree_h(t)) > (1.0 + rep.alpha) * static_cast<double>(d_s_of[t]))
            rep.t_hat.push_back(t);

    // alpha-weighted degree-variance ratio
    if (rep.m_s > 0) {
        double var_s = 0;
        for (VertexId v : rep.set_s) {
            double d = e.degree_h(v) - rep.dbar_S;
            var_s += d * d;
        }
        double var_t = 0;
        for (VertexId t : rep.set_t) {
            double d = static_cast<double>(d_s_of[t]) - rep.dbarS_T;
            var_t += d * d;
        }
        double that_term = 0.25 * static_cast<double>(rep.t_hat.size()) * rep.alpha *
                           rep.dbarS_T * rep.dbarS_T;
        rep.gamma = (var_s + 0.5 * var_t + that_term) /
                    (static_cast<double>(rep.m_s) * rep.beta);
    }

    const double mu_g = static_cast<double>(rep.mu_g);
    rep.premise_holds =
        static_cast<double>(rep.mu_h) < (2.0 / 3.0 + delta) * mu_g;
    const bool vac = !rep.premise_holds;

    // classification-dependent quantities
    MidLowClassification cls = classify(e);
    rep.v_mid_size = static_cast<long long>(cls.v_mid.size());
    rep.v_low_size = static_cast<long long>(cls.v_low.size());
    BipartiteView<Edcs> hprime = extract_Hprime(e, cls);
    Matching m_hprime = max_matching_bipartite_view(hprime);
    rep.mu_hprime = m_hprime.size();

    long long s_not_mid = 0, t_not_mid = 0, w_not_low = 0;
    for (VertexId v : rep.set_s)
        if (!cls.is_mid[v]) ++s_not_mid;
    for (VertexId v : rep.set_t)
        if (!cls.is_mid[v]) ++t_not_mid;
    for (VertexId v : rep.set_w)
        if (!cls.is_low[v]) ++w_not_low;

    // P1: mu(H') vs (2/3 - 120 sqrt(delta)) mu(G)
    rep.p1 = check_ge(static_cast<double>(rep.mu_hprime),
                      (2.0 / 3.0 - 120.0 * std::sqrt(delta)) * mu_g, vac);

    // P2: with M = M_H', mu(G[V_mid \ V(M)]) vs (1/3 - 800 delta) mu(G)
    {
        std::vector<VertexId> f_left, f_right;
        for (VertexId v : cls.v_mid)
            if (!m_hprime.matched(v))
                (side[v] == 1 ? f_left : f_right).push_back(v);
        InducedBipartiteView f(g, f_left, f_right);
        long long mu_f = max_matching_bipartite_view(f).size();
        rep.p2 = check_ge(static_cast<double>(mu_f),
                          (1.0 / 3.0 - 800.0 * delta) * mu_g, vac);
    }

    // P3: |V_mid| < 8 mu(G)
    rep.p3.bound = 8.0 * mu_g;
    rep.p3.observed = static_cast<double>(rep.v_mid_size);
    rep.p3.vacuous = vac;
    rep.p3.pass = vac || rep.p3.observed < rep.p3.bound;

    auto& cc = rep.claim_checks;
    // unconditional: gamma >= 0 and the averaged degree-sum bound
    cc["variance_ratio_nonneg"] = check_ge(rep.gamma, 0.0);
    if (rep.m_s > 0)
        cc["degree_variance_bound"] = check_le(rep.dbarS_T, (1.0 - rep.gamma) * rep.beta - rep.dbar_S);
    cc["mu_h_equals_t"] = CheckResult{static_cast<double>(rep.set_t.size()),
                            static_cast<double>(rep.mu_h),
                            rep.mu_h == static_cast<long long>(rep.set_t.size()), false};
    cc["s_covers_gap"] = check_ge(s_size, 2.0 * (mu_g - static_cast<double>(rep.mu_h)), vac);
    cc["avg_deg_s_lower"] = check_ge(rep.dbar_S, (1.0 - rep.eps) * rep.beta / 2.0, vac);
    cc["avg_deg_s_upper"] = check_le(rep.dbar_S, (1.0 + 3.0 * delta) * rep.beta / 2.0, vac);
    cc["avg_deg_s_t_lower"] = check_ge(rep.dbarS_T, (1.0 - 6.0 * delta) * rep.beta / 2.0, vac);
    cc["avg_deg_s_t_upper"] = check_le(rep.dbarS_T, (1.0 + rep.eps) * rep.beta / 2.0, vac);
    cc["s_size_lower"] = check_ge(s_size, (2.0 / 3.0 - 2.0 * delta) * mu_g, vac);
    cc["s_size_upper"] = check_le(s_size, (2.0 / 3.0 + 3.0 * delta) * mu_g, vac);
    cc["gamma_small"] = check_le(rep.gamma, 2.0 * delta, vac);
    cc["s_outside_mid"] = check_le(static_cast<double>(s_not_mid), 199.0 * delta * mu_g, vac);
    cc["t_outside_mid"] = check_le(static_cast<double>(t_not_mid), 600.0 * delta * mu_g, vac);
    cc["w_outside_low"] = check_le(static_cast<double>(w_not_low),
                          33.0 * std::sqrt(delta) * mu_g, vac);
    return rep;
}

namespace {

nlohmann::json check_to_json(const CheckResult& c) {
    return {{"bound", c.bound},
            {"observed", c.observed},
            {"pass", c.pass},
            {"vacuous", c.vacuous}};
}

}  // namespace

std::string TightnessReport::to_json() const {
    nlohmann::json j;
    j["delta"] = delta;
    j["beta"] = beta;
    j["eps"] = eps;
    j["mu_g"] = mu_g;
    j["mu_h"] = mu_h;
    j["mu_hprime"] = mu_hprime;
    j["premise_holds"] = premise_holds;
    j["witness"] = {{"size", witness.witness_size()},
                    {"pad_in_witness", witness.pad_in_witness},
                    {"neighborhood_size", witness.neighborhood.size()},
                    {"n_pad", witness.n_pad},
                    {"deficiency", witness.deficiency}};
    j["s_size"] = set_s.size();
    j["t_size"] = set_t.size();
    j["w_size"] = set_w.size();
    j["m_s"] = m_s;
    j["m_w"] = m_w;
    j["dbar_S"] = dbar_S;
    j["dbarS_T"] = dbarS_T;
    j["dbarW_T"] = dbarW_T;
    j["gamma"] = gamma;
    j["alpha"] = alpha;
    j["t_hat_size"] = t_hat.size();
    j["v_mid_size"] = v_mid_size;
    j["v_low_size"] = v_low_size;
    j["p1"] = check_to_json(p1);
    j["p2"] = check_to_json(p2);
    j["p3"] = check_to_json(p3);
    nlohmann::json claims;
    for (const auto& [id, c] : claim_checks) claims[id] = check_to_json(c);
    j["claims"] = claims;
    j["all_pass"] = all_pass();
    return j.dump(2);
}

std::string TightnessReport::to_table() const {
    std::ostringstream os;
    auto line = [&os](const std::string& name, const CheckResult& c) {
        os << "  " << name << ": observed=" << c.observed << " bound=" << c.bound
           << (c.vacuous ? " [vacuous]" : (c.pass ? " [pass]" : " [FAIL]")) << "\n";
    };
    os << "tightness report (beta=" << beta << ", eps=" << eps
       << ", delta=" << delta << ")\n";
    os << "  mu(G)=" << mu_g << " mu(H)=" << mu_h << " mu(H')=" << mu_hprime
       << " ratio=" << (mu_g ? static_cast<double>(mu_h) / mu_g : 0.0) << "\n";
    os << "  premise mu(H) < (2/3+delta) mu(G): "
       << (premise_holds ? "holds" : "does not hold") << "\n";
    os << "  |S|=" << set_s.size() << " |T|=" << set_t.size() << " |W|="
       << set_w.size() << " m_S=" << m_s << " m_W=" << m_w << "\n";
    os << "  dbar(S)=" << dbar_S << " dbar_S(T)=" << dbarS_T << " dbar_W(T)="
       << dbarW_T << " gamma=" << gamma << " |T^|=" << t_hat.size() << "\n";
    os << "  |V_mid|=" << v_mid_size << " |V_low|=" << v_low_size << "\n";
    line("P1", p1);
    line("P2", p2);
    line("P3", p3);
    for (const auto& [id, c] : claim_checks) line(id, c);
    os << "  all_pass=" << (all_pass() ? "true" : "false") << "\n";
    return os.str();
}

TightInstance gen_tight_instance(int k, int beta, double eps) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (beta < 4 || beta % 2 != 0)
        throw std::invalid_argument("beta must be even and >= 4");
    const int h = beta / 2;
    // in-degree from the dashed endpoints leaves room for one fringe edge
    const int t_side = std::max(h, (k * h + (h - 2)) / (h - 1));

    // per-side layout: [a | t | w...]; right block mirrors the left block
    std::vector<int> d_s(t_side, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < h; ++j) ++d_s[(i * h + j) % t_side];

    int fringe = 0;
    for (int x = 0; x < t_side; ++x) fringe += h - d_s[x];
    const int side_n = k + t_side + fringe;
    const int n = 2 * side_n;

    auto a_l = [&](int i) { return i; };
    auto t_l = [&](int x) { return k + x; };
    auto w_l = [&](int j) { return k + t_side + j; };
    auto a_r = [&](int i) { return side_n + i; };
    auto t_r = [&](int x) { return side_n + k + x; };
    auto w_r = [&](int j) { return side_n + k + t_side + j; };

    TightInstance inst{DynamicGraph(n), Sides{}, Edcs(n, beta, eps), k, {}, 0, 0};
    for (int v = 0; v < side_n; ++v) inst.sides.left.push_back(v);
    for (int v = side_n; v < n; ++v) inst.sides.right.push_back(v);

    std::vector<Edge> h_edges;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < h; ++j) {
            h_edges.emplace_back(a_l(i), t_r((i * h + j) % t_side));
            h_edges.emplace_back(t_l((i * h + j) % t_side), a_r(i));
        }
    int wl = 0, wr = 0;
    for (int x = 0; x < t_side; ++x) {
        for (int c = 0; c < h - d_s[x]; ++c) {
            h_edges.emplace_back(w_l(wl++), t_r(x));
            h_edges.emplace_back(t_l(x), w_r(wr++));
        }
    }
    for (const auto& [u, v] : h_edges) inst.g.insert_edge(u, v);
    for (int i = 0; i < k; ++i) {
        inst.g.insert_edge(a_l(i), a_r(i));  // the dashed matching
        inst.dashed.emplace_back(a_l(i), a_r(i));
    }
    inst.h.install_edges(h_edges);
    inst.expected_mu_h = 2LL * t_side;
    inst.expected_mu_g = k + 2LL * t_side;
    if (!inst.h.audit(inst.g))
        throw std::runtime_error("generated tight instance failed the EDCS audit");
    return inst;
}

}  // namespace dynmatch
