#include "dynmatch/estimators.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "dynmatch/rng.hpp"
#include "json.hpp"

namespace dynmatch {

namespace {

using Clock = std::chrono::steady_clock;

long long elapsed_us(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0)
        .count();
}

void require_bipartite(const DynamicGraph& g, const Sides& sides) {
    std::vector<int> side(g.vertex_count(), 0);
    for (VertexId v : sides.left) side[v] = 1;
    for (VertexId v : sides.right) side[v] = 2;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (VertexId u : g.neighbors(v))
            if (side[v] == 0 || side[u] == side[v])
                throw unsupported_error("graph is not bipartite for the given sides");
}

std::vector<Edge> sample_subset(const std::vector<Edge>& edges, double p, Rng& rng) {
    std::vector<Edge> out;
    for (const auto& e : edges)
        if (rng.bernoulli(p)) out.push_back(e);
    return out;
}

}  // namespace

std::string EstimateReport::csv_header() {
    return "algorithm,n,m,mu_exact,value,base,subsample,raw_g,ell,queries,micros";
}

std::string EstimateReport::csv_row(int n, long long m, double mu_exact) const {
    std::ostringstream os;
    os << algorithm << ',' << n << ',' << m << ',' << mu_exact << ',' << value
       << ',' << base_matching_size << ',' << subsample_size << ',' << raw_g
       << ',' << ell << ',' << queries << ',' << micros;
    return os.str();
}

std::string EstimateReport::to_json(int n, long long m, double mu_exact) const {
    nlohmann::json j;
    j["algorithm"] = algorithm;
    j["n"] = n;
    j["m"] = m;
    j["mu_exact"] = mu_exact;
    j["value"] = value;
    j["base"] = base_matching_size;
    j["subsample"] = subsample_size;
    j["raw_g"] = raw_g;
    j["ell"] = ell;
    j["margin_total"] = margin_total;
    j["short_circuit"] = short_circuit;
    j["queries"] = queries;
    j["micros"] = micros;
    return j.dump();
}

Bipartition random_bipartition(const DynamicGraph& g, const Matching& m,
                               std::uint64_t seed) {
    Rng rng(seed);
    Bipartition b;
    b.side_of.assign(g.vertex_count(), 0);
    for (const auto& [u, v] : m.edges()) {
        b.side_of[u] = 1;
        b.side_of[v] = 2;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (b.side_of[v] == 0) b.side_of[v] = rng.bernoulli(0.5) ? 1 : 2;
        (b.side_of[v] == 1 ? b.left : b.right).push_back(v);
    }
    return b;
}

namespace detail {

EstimateReport query_bipartite_with_subsample(
    const DynamicGraph& g, const Sides& sides, const MaintainedMatching& mm,
    const std::vector<Edge>& m_prime, double eps, std::uint64_t seed,
    const EstimatorConfig& cfg) {
    (void)sides;
    auto t0 = Clock::now();
    EstimateReport rep;
    rep.base_matching_size = mm.size();
    rep.subsample_size = static_cast<int>(m_prime.size());

    std::vector<VertexId> v_prime;
    for (const auto& [u, v] : m_prime) {
        v_prime.push_back(u);
        v_prime.push_back(v);
    }
    std::vector<VertexId> u_set = mm.unmatched_vertices();

    InducedBipartiteView h(g, v_prime, u_set);
    SizeEstimate est = estimate_gmm_size(h, eps, seed, cfg);
    rep.raw_g = est.value;
    rep.margin_total = est.margin;
    rep.queries = est.queries;
    double value = rep.base_matching_size +
                   std::max(0.0, est.value - static_cast<double>(m_prime.size()));
    rep.value = std::min(value, g.vertex_count() / 2.0);
    rep.micros = elapsed_us(t0);
    return rep;
}

EstimateReport query_general_with(const DynamicGraph& g,
                                  const MaintainedMatching& mm,
                                  const Bipartition& bip,
                                  const std::vector<Edge>& m_prime, double eps,
                                  std::uint64_t seed, const EstimatorConfig& cfg) {
    auto t0 = Clock::now();
    const int n = g.vertex_count();
    EstimateReport rep;
    rep.algorithm = "general";
    rep.base_matching_size = mm.size();
    rep.subsample_size = static_cast<int>(m_prime.size());

    Rng rng(splitmix64(seed ^ 0x9eULL));

    if (static_cast<double>(m_prime.size()) <= eps * n) {
        rep.short_circuit = true;
        rep.value = rep.base_matching_size;
        rep.micros = elapsed_us(t0);
        return rep;
    }

    // vertex classes of the bipartition
    std::vector<VertexId> vp_l, vp_r, u_l, u_r;
    std::vector<std::uint8_t> in_vprime(n, 0);
    for (const auto& [u, v] : m_prime) in_vprime[u] = in_vprime[v] = 1;
    for (VertexId v = 0; v < n; ++v) {
        bool left = bip.side_of[v] == 1;
        if (in_vprime[v])
            (left ? vp_l : vp_r).push_back(v);
        else if (!mm.matched(v))
            (left ? u_l : u_r).push_back(v);
    }

    // H_R between V'_R and U_L, H_L between V'_L and U_R; vertex disjoint
    InducedBipartiteView h_r(g, vp_r, u_l);
    InducedBipartiteView h_l(g, vp_l, u_r);

    const double eps_prime = eps * eps / 2.0;
    const long k_samples = static_cast<long>(
        std::ceil(48.0 * std::log(std::max(2, n)) / (eps * eps)));
    long x_sum = 0;
    std::uint64_t probe_count = 0;
    for (long i = 0; i < k_samples; ++i) {
        const auto& [u, v] = m_prime[rng.index(m_prime.size())];
        VertexId lv = bip.side_of[u] == 1 ? u : v;
        VertexId rv = bip.side_of[u] == 1 ? v : u;
        auto s_r = match_status_of(h_r, rv, eps_prime, vp_r.size(), rng.fork(), cfg);
        auto s_l = match_status_of(h_l, lv, eps_prime, vp_l.size(), rng.fork(), cfg);
        probe_count += s_r.queries + s_l.queries;
        if (!s_r.failed && !s_l.failed && s_r.matched && s_l.matched) ++x_sum;
    }
    double q_term = static_cast<double>(x_sum) * m_prime.size() / k_samples;
    rep.raw_g = q_term;

    // greedy estimate on the vertices M leaves unmatched
    InducedView g_u(g, mm.unmatched_vertices());
    SizeEstimate lest = estimate_gmm_size(g_u, eps, rng.fork(), cfg);
    rep.ell = lest.value;
    probe_count += lest.queries;

    rep.margin_total = 0.5 * eps * n + lest.margin;
    double value = rep.base_matching_size + std::max(lest.value, q_term) -
                   0.5 * eps * n;
    value = std::max(value, static_cast<double>(rep.base_matching_size));
    rep.value = std::min(value, n / 2.0);
    rep.queries = probe_count;
    rep.micros = elapsed_us(t0);
    return rep;
}

}  // namespace detail

EstimateReport query_bipartite_oblivious(const DynamicGraph& g, const Sides& sides,
                                         const MaintainedMatching& mm, double eps,
                                         std::uint64_t seed,
                                         const EstimatorConfig& cfg) {
    require_bipartite(g, sides);
    Rng rng(seed);
    auto m_prime = sample_subset(mm.matching().edges(), kPOblivious, rng);
    EstimateReport rep = detail::query_bipartite_with_subsample(
        g, sides, mm, m_prime, eps, rng.fork(), cfg);
    rep.algorithm = "bipartite_oblivious";
    return rep;
}

EstimateReport query_bipartite_adaptive(const DynamicGraph& g, const Sides& sides,
                                        const MaintainedMatching& mm, double eps,
                                        std::uint64_t seed,
                                        const EstimatorConfig& cfg) {
    require_bipartite(g, sides);
    auto t0 = Clock::now();
    Rng rng(seed);
    auto m_prime = sample_subset(mm.matching().edges(), kPAdaptive, rng);
    EstimateReport rep = detail::query_bipartite_with_subsample(
        g, sides, mm, m_prime, eps, rng.fork(), cfg);
    rep.algorithm = "bipartite_adaptive";

    // direct branch: |M| plus a greedy estimate among the unmatched
    // vertices, which is at least half of the length-one augmenting paths
    std::vector<std::uint8_t> in_left(g.vertex_count(), 0);
    for (VertexId v : sides.left) in_left[v] = 1;
    std::vector<VertexId> u_left, u_right;
    for (VertexId v : mm.unmatched_vertices())
        (in_left[v] ? u_left : u_right).push_back(v);
    InducedBipartiteView g_u(g, u_left, u_right);
    SizeEstimate uest = estimate_gmm_size(g_u, eps, rng.fork(), cfg);
    rep.ell = uest.value;
    rep.queries += uest.queries;

    double branch2 = mm.size() + uest.value;
    if (branch2 > rep.value) {
        rep.value = std::min(branch2, g.vertex_count() / 2.0);
        rep.margin_total = uest.margin;
    }
    rep.micros = elapsed_us(t0);
    return rep;
}

EstimateReport query_twothirds(const DynamicGraph& g, const Sides& sides,
                               const Edcs& e, const TwoThirdsParams& params,
                               std::uint64_t seed) {
    require_bipartite(g, sides);
    if (!(params.eps > 0 && params.eps <= params.delta / 100.0))
        throw std::invalid_argument("eps must be in (0, delta/100]");
    auto t0 = Clock::now();
    const int n = g.vertex_count();
    EstimateReport rep;
    rep.algorithm = "twothirds";

    Matching m_h = approx_matching_of_H(e, sides, params.eps);
    rep.base_matching_size = m_h.size();

    MidLowClassification cls = classify(e);
    BipartiteView<Edcs> hprime = extract_Hprime(e, cls);
    Matching m_hp = max_matching_bipartite_view(
        hprime, static_cast<long long>(std::min(1e18, std::ceil(1.0 / params.eps))));
    rep.subsample_size = m_hp.size();

    // F = G[V_mid \ V(M_H')], split by the graph sides
    std::vector<std::uint8_t> in_left(n, 0);
    for (VertexId v : sides.left) in_left[v] = 1;
    std::vector<VertexId> f_left, f_right;
    for (VertexId v : cls.v_mid)
        if (!m_hp.matched(v)) (in_left[v] ? f_left : f_right).push_back(v);
    InducedBipartiteView f(g, f_left, f_right);

    // absolute additive budget eps * |V_mid|
    double g_tilde = 0, margin = 0;
    std::uint64_t queries = 0;
    if (!f.vertices().empty() && !cls.v_mid.empty()) {
        double eps_view = params.eps * static_cast<double>(cls.v_mid.size()) /
                          static_cast<double>(f.vertices().size());
        eps_view = std::min(0.999, eps_view);
        SizeEstimate est = estimate_gmm_size(f, eps_view, seed, params.est);
        g_tilde = est.value;
        margin = est.margin;
        queries = est.queries;
    }
    rep.raw_g = g_tilde;
    rep.margin_total = margin;
    rep.queries = queries;

    double value = std::max(static_cast<double>(m_h.size()),
                            static_cast<double>(m_hp.size()) + g_tilde);
    rep.value = std::min(value, n / 2.0);
    rep.micros = elapsed_us(t0);
    return rep;
}

EstimateReport query_general(const DynamicGraph& g, const MaintainedMatching& mm,
                             double eps, std::uint64_t seed,
                             const EstimatorConfig& cfg) {
    Rng rng(seed);
    Bipartition bip = random_bipartition(g, mm.matching(), rng.fork());
    auto m_prime = sample_subset(mm.matching().edges(), kPGeneral, rng);
    return detail::query_general_with(g, mm, bip, m_prime, eps, rng.fork(), cfg);
}

}  // namespace dynmatch
