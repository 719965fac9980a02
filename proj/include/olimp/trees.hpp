#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "olimp/dimensions.hpp"
#include "olimp/version_space.hpp"

namespace olimp {

// Explicit shattered tree: the certificate behind a dimension value and the
// script a tree-following adversary replays. Internal nodes present their
// root; each branch fixes one (node, label) constraint. Leaves carry no
// instance (their root field is unused).
struct WitnessTree {
    struct Branch;

    NodeId root = 0;
    std::vector<Branch> branches;  // empty means leaf

    bool leaf() const { return branches.empty(); }
    int min_depth() const;
};

struct WitnessTree::Branch {
    NodeId node = -1;
    LabelId label = -1;
    WitnessTree child;
};

inline int WitnessTree::min_depth() const {
    if (branches.empty()) return 0;
    int d = INT32_MAX;
    for (const auto& b : branches) d = std::min(d, b.child.min_depth());
    return 1 + d;
}

struct TreeSearchLimits {
    long long max_steps = 50'000'000;
};

namespace detail {

// Exhaustive search for a shattered tree of exactly the requested depth.
// Deliberately naive: it enumerates tree shapes branch by branch and tests
// branch realizability by scanning the member list, sharing no code or cache
// with DimensionSolver. Use only at small depths and instance sizes.
class TreeSearch {
public:
    TreeSearch(const Instance& inst, std::vector<HypId> members, DimensionKind kind,
               TreeSearchLimits lim)
        : inst_(inst), members_(std::move(members)), kind_(kind), lim_(lim) {}

    std::optional<WitnessTree> run(int depth) {
        if (depth < 0) throw ModelError("tree search: negative depth");
        return search(depth);
    }

private:
    using Edge = std::pair<NodeId, LabelId>;

    bool disagreement() const { return kind_ == DimensionKind::bandit_improvement; }

    void step() {
        if (++steps_ > lim_.max_steps)
            throw ResourceLimitError("tree search exceeded its step limit");
    }

    bool realizable() {
        step();
        for (HypId h : members_) {
            const Hypothesis& hyp = inst_.hclass.table[h];
            bool ok = true;
            for (const auto& [u, y] : path_)
                if (disagreement() ? hyp(u) == y : hyp(u) != y) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        return false;
    }

    // Alternatives for one structural slot of a node: each alternative is the
    // group of edges it contributes.
    using Slot = std::vector<std::vector<Edge>>;

    std::vector<Slot> slots_for_root(NodeId x) const {
        const int k = inst_.labels.size();
        std::vector<Slot> slots;
        auto pair_slot = [&](NodeId u, LabelId lo) {
            Slot s;
            for (LabelId a = lo; a < k; ++a)
                for (LabelId b = a + 1; b < k; ++b)
                    s.push_back({{u, a}, {u, b}});
            return s;
        };
        switch (kind_) {
            case DimensionKind::littlestone:
                slots.push_back(pair_slot(x, 0));
                break;
            case DimensionKind::binary_improvement: {
                std::vector<Edge> all{{x, 1}};
                for (NodeId v : inst_.graph.neighbors[x]) all.push_back({v, 0});
                slots.push_back({all});
                break;
            }
            case DimensionKind::multiclass_improvement: {
                slots.push_back(pair_slot(x, 0));
                for (NodeId v : inst_.graph.neighbors[x]) {
                    if (v == x) continue;
                    Slot s{{{v, kBottomLabel}}};
                    for (const auto& alt : pair_slot(v, 1)) s.push_back(alt);
                    slots.push_back(s);
                }
                break;
            }
            case DimensionKind::bandit_improvement: {
                std::vector<Edge> all;
                for (LabelId y = 0; y < k; ++y) all.push_back({x, y});
                for (NodeId v : inst_.graph.neighbors[x]) {
                    if (v == x) continue;
                    for (LabelId y = 1; y < k; ++y) all.push_back({v, y});
                }
                slots.push_back({all});
                break;
            }
            case DimensionKind::weighted_improvement: {
                slots.push_back(pair_slot(x, 0));
                for (NodeId v : inst_.graph.neighbors[x]) {
                    if (v == x) continue;
                    Slot s;
                    for (LabelId y = 0; y < k; ++y)
                        if (never_moves_for(inst_, x, v, y)) s.push_back({{v, y}});
                    for (LabelId a = 0; a < k; ++a) {
                        if (never_moves_for(inst_, x, v, a)) continue;
                        for (LabelId b = a + 1; b < k; ++b)
                            if (!never_moves_for(inst_, x, v, b)) s.push_back({{v, a}, {v, b}});
                    }
                    slots.push_back(s);
                }
                break;
            }
        }
        return slots;
    }

    std::optional<WitnessTree> search(int depth) {
        step();
        if (depth == 0) {
            if (!realizable()) return std::nullopt;
            return WitnessTree{};
        }
        // Constraints only accumulate, so an unrealizable prefix is dead.
        if (!path_.empty() && !realizable()) return std::nullopt;
        for (NodeId x = 0; x < inst_.num_nodes(); ++x) {
            WitnessTree t;
            t.root = x;
            if (fill_slots(slots_for_root(x), 0, depth, t)) return t;
        }
        return std::nullopt;
    }

    bool fill_slots(const std::vector<Slot>& slots, size_t i, int depth, WitnessTree& t) {
        if (i == slots.size()) return true;
        for (const auto& alt : slots[i]) {
            size_t mark = t.branches.size();
            bool ok = true;
            for (const Edge& e : alt) {
                path_.push_back(e);
                auto child = search(depth - 1);
                path_.pop_back();
                if (!child) {
                    ok = false;
                    break;
                }
                t.branches.push_back({e.first, e.second, std::move(*child)});
            }
            if (ok && fill_slots(slots, i + 1, depth, t)) return true;
            t.branches.resize(mark);
        }
        return false;
    }

    const Instance& inst_;
    std::vector<HypId> members_;
    DimensionKind kind_;
    TreeSearchLimits lim_;
    std::vector<Edge> path_;
    long long steps_ = 0;
};

}  // namespace detail

// Searches for a shattered tree of exactly `depth`. Returns the first one
// found, or nothing if no such tree exists.
inline std::optional<WitnessTree> find_shattered_tree(const VersionSpace& vs, DimensionKind kind,
                                                      int depth, TreeSearchLimits lim = {}) {
    check_kind_preconditions(vs.instance(), kind);
    detail::TreeSearch s(vs.instance(), vs.members(), kind, lim);
    return s.run(depth);
}

// Dimension by pure enumeration: the largest depth with a shattered tree.
inline int enumerated_dimension(const VersionSpace& vs, DimensionKind kind,
                                TreeSearchLimits lim = {}) {
    if (vs.empty()) return -1;
    int d = 0;
    while (find_shattered_tree(vs, kind, d + 1, lim)) ++d;
    return d;
}

}  // namespace olimp
