#include <sstream>

#include "doctest.h"
#include "dynmatch/bench.hpp"
#include "helpers.hpp"

using namespace dynmatch;
using namespace testing_helpers;

TEST_SUITE("bench") {

TEST_CASE("scripted stream round trip") {
    GenParams p;
    p.script = "n 3\n+ 0 1\n- 0 1\n";
    UpdateStream s = gen_stream("scripted", p, 1);
    CHECK(s.n == 3);
    REQUIRE(s.events.size() == 2);
    DynamicGraph g = s.replay_strict();
    CHECK(g.edge_count() == 0);
}

TEST_CASE("unknown generator kind rejected") {
    CHECK_THROWS_AS(gen_stream("nope", GenParams{}, 1), std::invalid_argument);
}

TEST_CASE("sliding-window stream replays cleanly and stays near the target") {
    GenParams p;
    p.n = 100;
    p.window = 300;
    p.length = 1000;
    UpdateStream s = gen_stream("er_sliding_window", p, 5);
    DynamicGraph g = s.replay_strict();  // throws on delete-of-absent etc.
    CHECK(g.edge_count() <= p.window);
    CHECK(s.events.size() == 1000);
}

TEST_CASE("bipartite stream respects the contiguous sides") {
    GenParams p;
    p.n = 60;
    p.window = 150;
    p.length = 500;
    UpdateStream s = gen_stream("bipartite_random", p, 9);
    for (const auto& ev : s.events) {
        CHECK(ev.u < 30);
        CHECK(ev.v >= 30);
    }
    s.replay_strict();
}

TEST_CASE("adaptive deleter targets matched edges and is replay-deterministic") {
    GenParams p;
    p.n = 80;
    p.window = 160;
    p.length = 1500;
    UpdateStream a = gen_stream("adaptive_matched_deleter", p, 21);
    UpdateStream b = gen_stream("adaptive_matched_deleter", p, 21);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].kind == b.events[i].kind);
        CHECK(a.events[i].u == b.events[i].u);
        CHECK(a.events[i].v == b.events[i].v);
    }
    // deletes hit edges of the maintained surrogate matching
    DynamicGraph g(p.n);
    MaintainedMatching mm(p.n);
    int deletes = 0;
    for (const auto& ev : a.events) {
        if (ev.kind == UpdateEvent::Delete) {
            ++deletes;
            CHECK(mm.matching().has(ev.u, ev.v));
            g.delete_edge(ev.u, ev.v);
            mm.on_delete(g, ev.u, ev.v);
        } else {
            g.insert_edge(ev.u, ev.v);
            mm.on_insert(g, ev.u, ev.v);
        }
    }
    CHECK(deletes > 100);
}

TEST_CASE("tight reveal inserts the whole instance") {
    GenParams p;
    p.k = 3;
    p.beta = 8;
    UpdateStream s = gen_stream("tight_edcs_reveal", p, 2);
    DynamicGraph g = s.replay_strict();
    CHECK(g.edge_count() == static_cast<long long>(s.events.size()));
}

TEST_CASE("trivial scripted experiment yields one final checkpoint") {
    ExperimentConfig cfg;
    cfg.generator = "scripted";
    cfg.gen.script = "n 8\n+ 0 4\n- 0 4\n";
    cfg.checkpoint_interval = 100;
    cfg.algorithm = "bipartite_oblivious";
    RunSummary sum = run_experiment(cfg);
    REQUIRE(sum.rows.size() == 1);
    CHECK(sum.rows[0].value == 0.0);
    CHECK(sum.rows[0].event_index == 2);
}

TEST_CASE("same config and seed produce byte-identical rows") {
    ExperimentConfig cfg;
    cfg.generator = "bipartite_random";
    cfg.gen.n = 60;
    cfg.gen.window = 120;
    cfg.gen.length = 600;
    cfg.checkpoint_interval = 100;
    cfg.epsilon = 0.1;
    cfg.seed = 77;
    std::string a = run_experiment(cfg).csv();
    std::string b = run_experiment(cfg).csv();
    CHECK(a == b);
    cfg.seed = 78;
    CHECK(run_experiment(cfg).csv() != a);
}

TEST_CASE("lazy pipeline runs end to end on a short stream") {
    ExperimentConfig cfg;
    cfg.generator = "bipartite_random";
    cfg.gen.n = 80;
    cfg.gen.window = 200;
    cfg.gen.length = 2000;
    cfg.checkpoint_interval = 200;
    cfg.epsilon = 0.12;
    cfg.lazy = true;
    cfg.amplify = 2;
    cfg.seed = 11;
    RunSummary sum = run_experiment(cfg);
    REQUIRE(sum.rows.size() >= 9);
    for (const auto& r : sum.rows) {
        REQUIRE(r.mu_exact.has_value());
        CHECK(r.value <= static_cast<double>(*r.mu_exact) + 1e-9);
    }
    CHECK(sum.mean_ratio > 0.3);
}

TEST_CASE("multiple trials stack rows with independent streams") {
    ExperimentConfig cfg;
    cfg.generator = "bipartite_random";
    cfg.gen.n = 40;
    cfg.gen.window = 80;
    cfg.gen.length = 200;
    cfg.checkpoint_interval = 100;
    cfg.trials = 3;
    cfg.ratio_threshold = 0.4;
    RunSummary sum = run_experiment(cfg);
    CHECK(sum.rows.size() == 6);
    CHECK(sum.rows.front().trial == 0);
    CHECK(sum.rows.back().trial == 2);
    CHECK(sum.ratio_threshold == doctest::Approx(0.4));
}

TEST_CASE("sparsify mode reports contraction preservation") {
    ExperimentConfig cfg;
    cfg.generator = "er_sliding_window";
    cfg.gen.n = 60;
    cfg.gen.window = 120;
    cfg.gen.length = 400;
    cfg.checkpoint_interval = 200;
    cfg.algorithm = "general";
    cfg.sparsify_target = 1200;  // collisions unlikely at this size
    cfg.sparsify_copies = 3;
    RunSummary sum = run_experiment(cfg);
    for (const auto& r : sum.rows) {
        REQUIRE(r.mu_exact.has_value());
        CHECK(r.value <= static_cast<double>(*r.mu_exact) + 1e-9);
        CHECK(r.value >= 0.8 * static_cast<double>(*r.mu_exact));
    }
}

TEST_CASE("aggregates recompute from rows") {
    ExperimentConfig cfg;
    cfg.generator = "bipartite_random";
    cfg.gen.n = 40;
    cfg.gen.window = 80;
    cfg.gen.length = 300;
    cfg.checkpoint_interval = 100;
    RunSummary sum = run_experiment(cfg);
    double mean = sum.mean_ratio;
    sum.mean_ratio = -1;
    sum.recompute_aggregates();
    CHECK(sum.mean_ratio == doctest::Approx(mean));
    std::string j = sum.to_json();
    CHECK(j.find("\"rows\"") != std::string::npos);
    CHECK(j.find("\"timing\"") != std::string::npos);
}

TEST_CASE("verify_lemma44 wrapper") {
    TightnessReport rep = verify_lemma44(20, 42, 0.015, 0.005);
    CHECK(rep.premise_holds);
    CHECK(rep.all_pass());
}

TEST_CASE("audit_stream flags a broken stream") {
    UpdateStream ok;
    ok.n = 6;
    ok.events = {{UpdateEvent::Insert, 0, 1}, {UpdateEvent::Insert, 1, 2}};
    bool ok_flag = false;
    audit_stream(ok, std::optional<int>(8), 0.125, ok_flag);
    CHECK(ok_flag);

    UpdateStream bad = ok;
    bad.events.push_back({UpdateEvent::Delete, 3, 4});  // delete of absent
    bool bad_flag = true;
    std::string rep = audit_stream(bad, std::nullopt, 0.125, bad_flag);
    CHECK_FALSE(bad_flag);
    CHECK(rep.find("FAIL") != std::string::npos);
}

}  // TEST_SUITE
