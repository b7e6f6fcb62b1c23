#ifndef DYNMATCH_BENCH_HPP
#define DYNMATCH_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynmatch/edcs.hpp"
#include "dynmatch/estimators.hpp"
#include "dynmatch/fully_dynamic.hpp"
#include "dynmatch/graph.hpp"

namespace dynmatch {

struct GenParams {
    int n = 100;
    int length = 1000;
    int window = 300;     // live-edge target for sliding-window kinds
    int k = 5;            // tight-instance units
    int beta = 16;
    double delete_ratio = 0.5;  // adaptive deleter mix once warm
    bool bipartite = false;     // adaptive deleter: respect contiguous sides
    std::string script;         // scripted kind: raw stream text
};

// Kinds: er_sliding_window, bipartite_random, tight_edcs_reveal,
// adaptive_matched_deleter, scripted.
UpdateStream gen_stream(const std::string& kind, const GenParams& params,
                        std::uint64_t seed);

struct ExperimentConfig {
    std::string generator = "er_sliding_window";
    std::string algorithm = "bipartite_oblivious";  // or adaptive/twothirds/general
    GenParams gen;
    int checkpoint_interval = 100;
    int trials = 1;
    std::uint64_t seed = 1;
    double epsilon = 0.1;
    int beta = 16;
    double delta = kDeltaTight;
    bool lazy = false;              // fully dynamic pipeline vs query-at-checkpoint
    LazyMode lazy_mode = LazyMode::Multiplicative;
    bool spreading = false;
    int amplify = 1;
    Combine combine = Combine::Mean;
    int sparsify_target = 0;        // > 0: report contraction preservation instead
    int sparsify_copies = 1;
    double ratio_threshold = 0;     // rows below it count as lower violations
    int exact_general_max_n = 400;  // skip blossom checkpoints above this
    EstimatorConfig est;
};

struct CheckpointRow {
    int trial = 0;
    long long event_index = 0;
    long long m = 0;
    std::optional<long long> mu_exact;
    double value = 0;
    double ratio = 0;  // value / mu_exact when available
    std::uint64_t work = 0;

    static std::string csv_header();
    std::string csv() const;
};

struct RunSummary {
    std::vector<CheckpointRow> rows;
    double min_ratio = 0, mean_ratio = 0;
    long long upper_violations = 0;  // value > mu
    long long lower_violations = 0;  // configurable threshold, see runner
    double ratio_threshold = 0;
    std::uint64_t total_queries = 0;
    long long wall_ms = 0;  // excluded from deterministic output

    std::string csv() const;           // deterministic rows
    std::string to_json() const;       // aggregates + rows (+ timing field)
    void recompute_aggregates();
};

RunSummary run_experiment(const ExperimentConfig& cfg);

// Generates a tight instance and runs the structural analyzer on it
// (the verify-lemma44 subcommand).
TightnessReport verify_lemma44(int k, int beta, double delta, double eps = 1e-3);

// Replays a stream checking graph/EDCS/matching invariants after every
// event; returns a human-readable report and sets ok.
std::string audit_stream(const UpdateStream& s, std::optional<int> beta,
                         double eps, bool& ok);

}  // namespace dynmatch

#endif
