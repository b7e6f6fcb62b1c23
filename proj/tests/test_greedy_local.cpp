#include <cmath>

#include "doctest.h"
#include "dynmatch/exact.hpp"
#include "dynmatch/greedy_local.hpp"
#include "dynmatch/matching.hpp"
#include "dynmatch/rng.hpp"

using namespace dynmatch;

namespace {

DynamicGraph from_edges(int n, const std::vector<Edge>& es) {
    DynamicGraph g(n);
    for (const auto& [u, v] : es) g.insert_edge(u, v);
    return g;
}

InducedView whole(const DynamicGraph& g) {
    std::vector<VertexId> all;
    for (VertexId v = 0; v < g.vertex_count(); ++v) all.push_back(v);
    return InducedView(g, all);
}

DynamicGraph random_graph(int n, int m_target, Rng& rng) {
    DynamicGraph g(n);
    for (int t = 0; t < 4 * m_target && g.edge_count() < m_target; ++t) {
        VertexId u = static_cast<VertexId>(rng.index(n));
        VertexId v = static_cast<VertexId>(rng.index(n));
        if (u != v && !g.has_edge(u, v)) g.insert_edge(u, v);
    }
    return g;
}

}  // namespace

TEST_SUITE("greedy_local") {

TEST_CASE("rank oracle is stable and order-free") {
    RankOracle r(42);
    CHECK(r.rank(3, 7) == r.rank(7, 3));
    CHECK(r.rank_bits(3, 7) == r.rank_bits(3, 7));
    RankOracle r2(43);
    CHECK(r.rank_bits(3, 7) != r2.rank_bits(3, 7));
    CHECK(r.rank(3, 7) >= 0.0);
    CHECK(r.rank(3, 7) < 1.0);
}

TEST_CASE("edge_in_gmm basics") {
    SUBCASE("lone edge always selected") {
        auto g = from_edges(2, {{0, 1}});
        auto view = whole(g);
        for (std::uint64_t seed = 0; seed < 16; ++seed) {
            LocalGreedyState st(seed);
            CHECK(st.edge_in_gmm(view, 0, 1));
        }
    }
    SUBCASE("two-edge path picks exactly the lower-rank edge") {
        auto g = from_edges(3, {{0, 1}, {1, 2}});
        auto view = whole(g);
        for (std::uint64_t seed = 0; seed < 32; ++seed) {
            LocalGreedyState st(seed);
            bool a = st.edge_in_gmm(view, 0, 1);
            bool b = st.edge_in_gmm(view, 1, 2);
            CHECK(a != b);
            bool a_first = st.ranks().before(0, 1, 1, 2);
            CHECK(a == a_first);
            CHECK(st.vertex_match_status(view, 1));  // shared vertex always matched
        }
    }
    SUBCASE("disjoint edges are independent") {
        auto g = from_edges(4, {{0, 1}, {2, 3}});
        auto view = whole(g);
        for (std::uint64_t seed = 0; seed < 16; ++seed) {
            LocalGreedyState st(seed);
            CHECK(st.edge_in_gmm(view, 0, 1));
            CHECK(st.edge_in_gmm(view, 2, 3));
        }
    }
}

TEST_CASE("vertex status basics") {
    auto g = from_edges(5, {{0, 1}, {0, 2}, {0, 3}});
    auto view = whole(g);
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        LocalGreedyState st(seed);
        CHECK_FALSE(st.vertex_match_status(view, 4));  // isolated
        CHECK(st.vertex_match_status(view, 0));        // star center
    }
}

TEST_CASE("path endpoint matched with frequency 1/2") {
    auto g = from_edges(3, {{0, 1}, {1, 2}});
    auto view = whole(g);
    int hits = 0;
    const int reps = 4000;
    for (int i = 0; i < reps; ++i) {
        LocalGreedyState st(1000 + i);
        if (st.vertex_match_status(view, 0)) ++hits;
    }
    double freq = static_cast<double>(hits) / reps;
    CHECK(freq == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("fixed seed induces a maximal matching of the view") {
    Rng rng(51);
    for (int rep = 0; rep < 25; ++rep) {
        int n = 6 + static_cast<int>(rng.index(25));  // up to 30
        auto g = random_graph(n, 2 * n, rng);
        auto view = whole(g);
        LocalGreedyState st(rng.fork());
        Matching m(n);
        for (const auto& [u, v] : g.edges())
            if (st.edge_in_gmm(view, u, v)) m.add(u, v);  // throws if not disjoint
        REQUIRE(m.audit());
        // maximality: every edge has a matched endpoint
        for (const auto& [u, v] : g.edges())
            CHECK((m.matched(u) || m.matched(v)));
        // match status agrees with the explicit matching
        for (VertexId v = 0; v < n; ++v)
            CHECK(st.vertex_match_status(view, v) == m.matched(v));
    }
}

TEST_CASE("oracle mean over seeds equals the exact expectation (m <= 8)") {
    Rng rng(57);
    for (int inst = 0; inst < 4; ++inst) {
        int n = 5 + static_cast<int>(rng.index(4));
        auto g = random_graph(n, 4 + static_cast<int>(rng.index(5)), rng);
        if (g.edge_count() > 8 || g.edge_count() == 0) continue;
        double exact = expected_gmm_exact(g).to_double();
        auto view = whole(g);
        auto edges = g.edges();
        const long reps = 100000;
        double sum = 0, sumsq = 0;
        for (long i = 0; i < reps; ++i) {
            LocalGreedyState st(splitmix64(0xabcd + i));
            int size = 0;
            for (const auto& [u, v] : edges)
                if (st.edge_in_gmm(view, u, v)) ++size;
            sum += size;
            sumsq += static_cast<double>(size) * size;
        }
        double mean = sum / reps;
        double var = (sumsq - sum * sum / reps) / (reps - 1);
        double se = std::sqrt(std::max(0.0, var) / reps);
        CHECK(std::abs(mean - exact) <= 4 * se + 1e-9);
    }
}

TEST_CASE("estimate_gmm_size basics") {
    SUBCASE("empty view") {
        DynamicGraph g(4);
        InducedView v(g, {});
        auto est = estimate_gmm_size(v, 0.1, 1);
        CHECK(est.value == 0.0);
    }
    SUBCASE("perfect matching on n=100 at eps=.1") {
        DynamicGraph g(100);
        for (VertexId i = 0; i < 50; ++i) g.insert_edge(2 * i, 2 * i + 1);
        auto view = whole(g);
        auto est = estimate_gmm_size(view, 0.1, 9);
        // raw is exactly 50 for every rank order; margin is 5
        CHECK(est.raw == doctest::Approx(50.0));
        CHECK(est.value >= 45.0 - 1e-9);
        CHECK(est.value <= 50.0 + 1e-9);
    }
    SUBCASE("bad eps rejected") {
        DynamicGraph g(2);
        g.insert_edge(0, 1);
        auto view = whole(g);
        CHECK_THROWS_AS(estimate_gmm_size(view, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(estimate_gmm_size(view, 1.0, 1), std::invalid_argument);
    }
}

TEST_CASE("estimator raw mean tracks the exact expectation on a path") {
    auto g = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    auto view = whole(g);
    double sum = 0;
    const int reps = 3000;
    for (int i = 0; i < reps; ++i)
        sum += estimate_gmm_size(view, 0.3, 100 + i).raw;
    CHECK(sum / reps == doctest::Approx(5.0 / 3.0).epsilon(0.03));
}

TEST_CASE("estimator one-sided violations stay within 5% each side") {
    Rng rng(61);
    int over = 0, under = 0, total = 0;
    for (int inst = 0; inst < 6; ++inst) {
        int n = inst == 5 ? 300 : 20 + static_cast<int>(rng.index(40));
        auto g = random_graph(n, 2 * n, rng);
        double expect =
            expected_gmm_montecarlo(g.edges(), 40000, rng.fork()).mean;
        auto view = whole(g);
        const double eps = 0.15;
        for (int r = 0; r < 40; ++r) {
            auto est = estimate_gmm_size(view, eps, rng.fork());
            ++total;
            if (est.value > expect + 1e-9) ++over;
            if (est.value < expect - eps * n - 1e-9) ++under;
        }
    }
    CHECK(total >= 200);
    CHECK(over <= total / 20);
    CHECK(under <= total / 20);
}

TEST_CASE("query count grows about linearly in n ln n / eps^2 when sampling") {
    // sampling regime: small sample constant so s < n
    EstimatorConfig cfg;
    cfg.sample_c = 1.0;
    Rng rng(67);
    std::vector<double> normalized;
    for (int n : {300, 500, 800}) {
        auto g = random_graph(n, 3 * n, rng);
        auto view = whole(g);
        for (double eps : {0.3, 0.2}) {
            std::uint64_t q = 0;
            const int reps = 3;
            for (int r = 0; r < reps; ++r)
                q += estimate_gmm_size(view, eps, rng.fork(), cfg).queries;
            double probes = static_cast<double>(q) / reps;
            normalized.push_back(probes /
                                 (n * std::log(n) / (eps * eps)));
        }
    }
    double lo = normalized[0], hi = normalized[0];
    for (double x : normalized) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    CHECK(hi / lo <= 3.0);  // soft regression, factor-3 slack
}

TEST_CASE("match status sampling surface") {
    SUBCASE("isolated vertex in K") {
        DynamicGraph g(3);
        auto view = whole(g);
        auto s = match_status_random_vertex(view, {2}, 0.1, 5);
        CHECK(s.v == 2);
        CHECK_FALSE(s.matched);
        CHECK_FALSE(s.failed);
    }
    SUBCASE("empty K rejected") {
        DynamicGraph g(2);
        auto view = whole(g);
        CHECK_THROWS_AS(match_status_random_vertex(view, {}, 0.1, 5),
                        std::invalid_argument);
    }
    SUBCASE("perfect matching graph: every sampled vertex matched") {
        DynamicGraph g(20);
        for (VertexId i = 0; i < 10; ++i) g.insert_edge(2 * i, 2 * i + 1);
        auto view = whole(g);
        std::vector<VertexId> k;
        for (VertexId v = 0; v < 20; ++v) k.push_back(v);
        for (int r = 0; r < 50; ++r) {
            auto s = match_status_random_vertex(view, k, 0.1, 100 + r);
            if (!s.failed) CHECK(s.matched);
        }
    }
    SUBCASE("path endpoint frequency 1/2") {
        auto g = from_edges(3, {{0, 1}, {1, 2}});
        auto view = whole(g);
        int hits = 0;
        const int reps = 4000;
        for (int r = 0; r < reps; ++r)
            if (match_status_random_vertex(view, {0}, 0.2, 900 + r).matched)
                ++hits;
        CHECK(static_cast<double>(hits) / reps ==
              doctest::Approx(0.5).epsilon(0.06));
    }
}

TEST_CASE("tiny probe budget reports failures instead of looping") {
    DynamicGraph g(200);
    for (VertexId v = 1; v < 200; ++v) g.insert_edge(0, v);
    auto view = whole(g);
    EstimatorConfig cfg;
    cfg.budget_factor = 0.001;  // forces budget exhaustion on the row scan
    auto est = estimate_gmm_size(view, 0.5, 3, cfg);
    CHECK(est.failures > 0);
    CHECK(est.value >= 0.0);
}

}  // TEST_SUITE
