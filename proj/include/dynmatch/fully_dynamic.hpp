#ifndef DYNMATCH_FULLY_DYNAMIC_HPP
#define DYNMATCH_FULLY_DYNAMIC_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dynmatch/graph.hpp"
#include "dynmatch/rng.hpp"

namespace dynmatch {

struct RefreshResult {
    double value = 0;
    std::uint64_t work = 0;  // query-count work units of the refresh
};

enum class LazyMode {
    AdditiveWindow,   // publish value - 2 eps n, hold for eps n updates
    Multiplicative,   // publish (1-eps) value, hold for eps value updates
};

// Turns a semi-dynamic estimator (queried on demand) into an always-ready
// value.  In spreading mode the refresh is computed from the state at the
// window start and published at the window end, charging work/window units
// per update; otherwise it is computed and published at the window end.
class LazyEstimator {
public:
    LazyEstimator(std::function<RefreshResult()> refresh, LazyMode mode,
                  double eps, int n, bool spreading = false,
                  std::uint64_t step_budget = 0)
        : refresh_(std::move(refresh)),
          mode_(mode),
          eps_(eps),
          n_(n),
          spreading_(spreading),
          step_budget_(step_budget) {
        if (!(eps > 0 && eps < 1)) throw std::invalid_argument("eps in (0,1)");
        start_window();
        if (!spreading_) publish();  // first value available immediately
    }

    double value() const { return published_; }
    int window() const { return window_; }
    std::uint64_t per_update_work() const { return last_per_update_work_; }
    std::uint64_t budget_violations() const { return budget_violations_; }

    // Call once per graph update, after all maintained structures moved.
    double on_update() {
        ++since_;
        last_per_update_work_ = spread_work_per_update_;
        if (step_budget_ && last_per_update_work_ > step_budget_) ++budget_violations_;
        if (since_ >= window_) {
            publish();
            start_window();
        }
        return published_;
    }

private:
    void start_window() {
        since_ = 0;
        if (spreading_) {
            pending_ = refresh_();  // window-start state, published at the end
            window_ = window_for(pending_.value);
            spread_work_per_update_ =
                (pending_.work + static_cast<std::uint64_t>(window_) - 1) /
                static_cast<std::uint64_t>(window_);
        } else {
            window_ = pending_valid_ ? window_for(pending_.value) : 1;
            spread_work_per_update_ = 0;
        }
    }

    void publish() {
        if (!spreading_) {
            pending_ = refresh_();
            pending_valid_ = true;
            window_ = window_for(pending_.value);
        }
        published_ = mode_ == LazyMode::AdditiveWindow
                         ? pending_.value - 2.0 * eps_ * n_
                         : (1.0 - eps_) * pending_.value;
        published_ = std::max(0.0, published_);
    }

    int window_for(double v) const {
        double w = mode_ == LazyMode::AdditiveWindow ? eps_ * n_ : eps_ * v;
        return std::max(1, static_cast<int>(w));
    }

    std::function<RefreshResult()> refresh_;
    LazyMode mode_;
    double eps_;
    int n_;
    bool spreading_;
    std::uint64_t step_budget_;
    RefreshResult pending_{};
    bool pending_valid_ = false;
    double published_ = 0;
    int window_ = 1;
    int since_ = 0;
    std::uint64_t spread_work_per_update_ = 0;
    std::uint64_t last_per_update_work_ = 0;
    std::uint64_t budget_violations_ = 0;
};

enum class Combine { Mean, Median };

// O(log n) independent lazy instances over shared maintained structures,
// combined by mean (default) or median.
class AmplifiedEstimator {
public:
    AmplifiedEstimator(std::vector<LazyEstimator> instances, Combine combine)
        : instances_(std::move(instances)), combine_(combine) {
        if (instances_.empty()) throw std::invalid_argument("need >= 1 instance");
    }

    void on_update() {
        for (auto& inst : instances_) inst.on_update();
    }

    double value() const {
        std::vector<double> vals;
        vals.reserve(instances_.size());
        for (const auto& inst : instances_) vals.push_back(inst.value());
        if (combine_ == Combine::Mean) {
            double s = 0;
            for (double v : vals) s += v;
            return s / vals.size();
        }
        std::sort(vals.begin(), vals.end());
        std::size_t mid = vals.size() / 2;
        return vals.size() % 2 ? vals[mid] : 0.5 * (vals[mid - 1] + vals[mid]);
    }

    std::uint64_t per_update_work() const {
        std::uint64_t w = 0;
        for (const auto& inst : instances_) w += inst.per_update_work();
        return w;
    }

    const std::vector<LazyEstimator>& instances() const { return instances_; }

private:
    std::vector<LazyEstimator> instances_;
    Combine combine_;
};

// One random contraction of the vertex set onto [0, target_size), kept
// consistent under updates by edge-multiplicity counting.
class ContractedGraph {
public:
    ContractedGraph(const DynamicGraph& g, int target_size, std::uint64_t seed)
        : contracted_(target_size), map_(g.vertex_count()) {
        if (target_size < 2) throw std::invalid_argument("target_size must be >= 2");
        Rng rng(seed);
        for (auto& m : map_) m = static_cast<VertexId>(rng.index(target_size));
        for (const auto& [u, v] : g.edges()) on_insert(u, v);
    }

    void on_insert(VertexId u, VertexId v) {
        VertexId cu = map_[u], cv = map_[v];
        if (cu == cv) return;  // self-loop dropped
        if (++mult_[edge_key(cu, cv)] == 1) contracted_.insert_edge(cu, cv);
    }

    void on_delete(VertexId u, VertexId v) {
        VertexId cu = map_[u], cv = map_[v];
        if (cu == cv) return;
        auto it = mult_.find(edge_key(cu, cv));
        if (it == mult_.end() || it->second == 0)
            throw std::logic_error("contracted multiplicity underflow");
        if (--it->second == 0) {
            mult_.erase(it);
            contracted_.delete_edge(cu, cv);
        }
    }

    void apply(const UpdateEvent& ev) {
        ev.kind == UpdateEvent::Insert ? on_insert(ev.u, ev.v)
                                       : on_delete(ev.u, ev.v);
    }

    const DynamicGraph& graph() const { return contracted_; }
    VertexId image(VertexId v) const { return map_[v]; }

private:
    DynamicGraph contracted_;
    std::vector<VertexId> map_;
    std::unordered_map<std::uint64_t, int> mult_;
};

std::vector<ContractedGraph> vertex_sparsify(const DynamicGraph& g,
                                             int target_size, int copies,
                                             std::uint64_t seed);

}  // namespace dynmatch

#endif
