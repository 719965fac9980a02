#pragma once

#include <random>
#include <vector>

#include "olimp/model.hpp"

namespace olimp {

// A hypothesis as the agents see it for one round: labels on Delta(origin)
// only. Everything the agent can reach is covered; nodes outside the
// neighborhood are irrelevant to its move and to the round's prediction.
struct Publication {
    NodeId origin = -1;
    std::vector<NodeId> domain;  // Delta(origin) in adjacency order
    std::vector<LabelId> labels;

    bool covers(NodeId v) const {
        for (NodeId u : domain)
            if (u == v) return true;
        return false;
    }

    LabelId at(NodeId v) const {
        for (size_t i = 0; i < domain.size(); ++i)
            if (domain[i] == v) return labels[i];
        throw ModelError("publication does not cover node " + std::to_string(v));
    }

    // Lets a publication stand in wherever a labeling callable is expected.
    LabelId operator()(NodeId v) const { return at(v); }

    void set(NodeId v, LabelId y) {
        for (size_t i = 0; i < domain.size(); ++i)
            if (domain[i] == v) {
                labels[i] = y;
                return;
            }
        throw ModelError("publication does not cover node " + std::to_string(v));
    }

    static Publication all_bottom(const Instance& inst, NodeId x) {
        Publication p;
        p.origin = x;
        p.domain = inst.graph.neighbors[x];
        p.labels.assign(p.domain.size(), kBottomLabel);
        return p;
    }
};

// labeling is any callable NodeId -> LabelId defined on Delta(x).

// Value gained by moving from x to v under the published labeling, net of the
// move cost. The agent stays unless some move has strictly positive gain.
template <typename L>
double gain(const Instance& inst, L&& labeling, NodeId x, NodeId v) {
    return inst.labels.value(labeling(v)) - inst.labels.value(labeling(x)) -
           inst.graph.cost(x, v);
}

// All gain-maximizing destinations if the best gain is strictly positive,
// otherwise {x}. Sorted by node id. This is the full set of moves a
// best-responding agent might make; tie resolution is a separate concern.
template <typename L>
std::vector<NodeId> best_response_set(const Instance& inst, L&& labeling, NodeId x) {
    const auto& nb = inst.graph.neighbors[x];
    double best = 0.0;
    for (NodeId v : nb)
        if (v != x) best = std::max(best, gain(inst, labeling, x, v));
    if (best <= 0.0) return {x};
    std::vector<NodeId> out;
    for (NodeId v : nb)
        if (v != x && gain(inst, labeling, x, v) == best) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<NodeId> best_response_set(const Instance& inst, const Publication& pub,
                                             NodeId x) {
    return best_response_set(inst, [&pub](NodeId v) { return pub.at(v); }, x);
}

inline std::vector<NodeId> best_response_set(const Instance& inst, const Hypothesis& h,
                                             NodeId x) {
    return best_response_set(inst, [&h](NodeId v) { return h(v); }, x);
}

// Picks one destination from a non-empty best-response set. The adversarial
// policy has no standalone meaning: callers must branch over the whole set
// (game search) or delegate to the adversary (engine).
inline NodeId resolve_tie(const std::vector<NodeId>& set, TiePolicy policy,
                          std::mt19937_64* rng = nullptr) {
    if (set.empty()) throw ModelError("resolve_tie: empty best-response set");
    switch (policy) {
        case TiePolicy::lexicographic_min:
            return set.front();  // sets are sorted
        case TiePolicy::seeded_random: {
            if (!rng) throw ModelError("resolve_tie: seeded_random needs a generator");
            return set[(*rng)() % set.size()];
        }
        case TiePolicy::adversarial:
            throw ModelError("resolve_tie: adversarial ties cannot be resolved standalone");
    }
    throw ModelError("resolve_tie: unknown policy");
}

// Neighbors of x the labeling lifts above bottom: the only candidate
// destinations an agent at a bottom-labeled node would pay attention to.
template <typename L>
std::vector<NodeId> improvement_targets(const Instance& inst, L&& labeling, NodeId x) {
    std::vector<NodeId> out;
    for (NodeId v : inst.graph.neighbors[x])
        if (labeling(v) != kBottomLabel) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<NodeId> improvement_targets(const Instance& inst, const Publication& pub,
                                               NodeId x) {
    return improvement_targets(inst, [&pub](NodeId v) { return pub.at(v); }, x);
}

}  // namespace olimp
