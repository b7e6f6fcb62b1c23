#ifndef DYNMATCH_ESTIMATORS_HPP
#define DYNMATCH_ESTIMATORS_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dynmatch/dynamic_matching.hpp"
#include "dynmatch/edcs.hpp"
#include "dynmatch/exact.hpp"
#include "dynmatch/graph.hpp"
#include "dynmatch/greedy_local.hpp"
#include "dynmatch/matching.hpp"

namespace dynmatch {

inline const double kPOblivious = std::sqrt(2.0) - 1.0;  // ~0.4142
inline constexpr double kPAdaptive = 0.3;
inline constexpr double kPGeneral = 0.03;
inline constexpr double kDeltaZero = 1.8e-6;
inline constexpr double kDeltaTight = 1.9e-6;

struct EstimateReport {
    double value = 0;
    int base_matching_size = 0;   // |M| or |M_H|
    int subsample_size = 0;       // |M'|
    double raw_g = 0;             // sub-estimator value (g-tilde or Q)
    double ell = 0;               // unmatched-side estimate, when applicable
    double margin_total = 0;      // total one-sided slack subtracted
    bool short_circuit = false;
    std::uint64_t queries = 0;
    long long micros = 0;
    std::string algorithm;

    static std::string csv_header();
    std::string csv_row(int n, long long m, double mu_exact) const;
    std::string to_json(int n, long long m, double mu_exact) const;
};

struct Bipartition {
    std::vector<VertexId> left, right;
    std::vector<std::uint8_t> side_of;  // 1 = left, 2 = right
};

// Each matching edge split across the sides, all other vertices assigned by
// independent fair coins.
Bipartition random_bipartition(const DynamicGraph& g, const Matching& m,
                               std::uint64_t seed);

// The 2-sqrt(2) estimator for bipartite graphs: subsample M' of the
// maintained maximal matching, estimate the greedy matching of
// G[V(M'), unmatched] and return |M| + max{0, g - |M'|}.
EstimateReport query_bipartite_oblivious(const DynamicGraph& g, const Sides& sides,
                                         const MaintainedMatching& mm, double eps,
                                         std::uint64_t seed,
                                         const EstimatorConfig& cfg = {});

// Adaptive-adversary variant: subsample probability .3 plus a direct
// estimate on G[U] that recovers length-one augmenting paths when M is not
// maximal; returns the larger branch.
EstimateReport query_bipartite_adaptive(const DynamicGraph& g, const Sides& sides,
                                        const MaintainedMatching& mm, double eps,
                                        std::uint64_t seed,
                                        const EstimatorConfig& cfg = {});

struct TwoThirdsParams {
    double delta = kDeltaTight;  // scaled-constants mode raises this
    double eps = kDeltaTight / 100.0;
    EstimatorConfig est;
};

// The EDCS-based estimator: max{|M_H|, |M_H'| + g} where H' is the
// mid/low slice of H and g estimates the greedy matching of
// G[V_mid \ V(M_H')].
EstimateReport query_twothirds(const DynamicGraph& g, const Sides& sides,
                               const Edcs& e, const TwoThirdsParams& params,
                               std::uint64_t seed);

// General-graph estimator: random bipartition, M' at p = .03, per-edge
// two-sided match-status samples, and the unmatched-side greedy estimate.
EstimateReport query_general(const DynamicGraph& g, const MaintainedMatching& mm,
                             double eps, std::uint64_t seed,
                             const EstimatorConfig& cfg = {});

namespace detail {

// Deterministic-subsample cores, exposed for tests that condition on M'.
EstimateReport query_bipartite_with_subsample(
    const DynamicGraph& g, const Sides& sides, const MaintainedMatching& mm,
    const std::vector<Edge>& m_prime, double eps, std::uint64_t seed,
    const EstimatorConfig& cfg);

EstimateReport query_general_with(const DynamicGraph& g,
                                  const MaintainedMatching& mm,
                                  const Bipartition& bip,
                                  const std::vector<Edge>& m_prime, double eps,
                                  std::uint64_t seed, const EstimatorConfig& cfg);

}  // namespace detail

}  // namespace dynmatch

#endif
