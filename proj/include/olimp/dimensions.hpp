#pragma once

#include <array>
#include <cstdlib>
#include <unordered_map>

#include "olimp/version_space.hpp"

namespace olimp {

// Labels that never make the move x -> v worth its cost: even from the bottom
// label the value step up to y does not strictly exceed cost(x, v). An agent
// that moved to v therefore cannot be looking at one of these labels, which
// is exactly what lets an environment use them against moved agents.
inline bool never_moves_for(const Instance& inst, NodeId x, NodeId v, LabelId y) {
    return inst.labels.value(y) - inst.labels.value(kBottomLabel) <= inst.graph.cost(x, v);
}

inline std::vector<LabelId> never_move_labels(const Instance& inst, NodeId x, NodeId v) {
    std::vector<LabelId> out;
    for (LabelId y = 0; y < inst.labels.size(); ++y)
        if (never_moves_for(inst, x, v, y)) out.push_back(y);
    return out;
}

inline size_t memo_limit_from_env() {
    if (const char* s = std::getenv("OLIMP_MEMO_LIMIT")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0) return size_t(v);
    }
    return size_t(50'000'000);
}

// The binary, multiclass and bandit tree families assume every non-bottom
// label lures the agent across any edge, which is only true at zero cost.
// The weighted family prices edges via never-move sets and the littlestone
// family never leaves the presented node, so both accept any cost profile.
inline void check_kind_preconditions(const Instance& inst, DimensionKind kind) {
    switch (kind) {
        case DimensionKind::binary_improvement:
            if (inst.num_labels() != 2)
                throw ModelError("binary-improvement dimension needs exactly two labels");
            [[fallthrough]];
        case DimensionKind::multiclass_improvement:
        case DimensionKind::bandit_improvement:
            if (!inst.graph.unweighted())
                throw ModelError(to_string(kind) +
                                 std::string(" dimension assumes an unweighted graph"));
            break;
        case DimensionKind::littlestone:
        case DimensionKind::weighted_improvement:
            break;
    }
}

// Computes shattered-tree dimensions by the depth recursions, memoized per
// (version-space mask, kind). Conventions: empty space -1, non-empty spaces
// at least 0.
//
// The recursion asks, per candidate root x, whether every required child
// space shatters one level less. A child restriction can equal the current
// space (the constraint holds for every member); such a child is satisfied by
// the depth already established for the current space, so it never recurses.
// All other children are strictly smaller masks, which bounds the recursion.
class DimensionSolver {
public:
    explicit DimensionSolver(const Instance* inst, size_t memo_limit = memo_limit_from_env())
        : inst_(inst), memo_limit_(memo_limit) {}

    const Instance& instance() const { return *inst_; }

    int dimension(DimensionKind kind) { return dimension(VersionSpace(inst_), kind); }

    int dimension(const VersionSpace& vs, DimensionKind kind) {
        if (&vs.instance() != inst_)
            throw ModelError("dimension: version space belongs to another instance");
        check_kind_preconditions(*inst_, kind);
        return dim(vs.mask(), kind);
    }

    size_t memo_entries() const {
        size_t n = 0;
        for (const auto& m : memo_) n += m.size();
        return n;
    }

private:
    using Memo = std::unordered_map<DynBitset, int, DynBitsetHash>;

    int dim(const DynBitset& mask, DimensionKind kind) {
        Memo& memo = memo_[size_t(kind)];
        if (auto it = memo.find(mask); it != memo.end()) return it->second;
        int d = -1;
        if (mask.any()) {
            d = 0;
            while (probe(mask, kind, d)) ++d;
        }
        if (memo_entries() >= memo_limit_)
            throw ResourceLimitError("dimension memo exceeds OLIMP_MEMO_LIMIT");
        memo.emplace(mask, d);
        return d;
    }

    // Does some depth-(d+1) tree of this family shatter `mask`, given that
    // depth d is already known to be shattered?
    bool probe(const DynBitset& mask, DimensionKind kind, int d) {
        const int n = inst_->num_nodes();
        for (NodeId x = 0; x < n; ++x)
            if (root_ok(mask, kind, d, x)) return true;
        return false;
    }

    // Child check: the subtree under an edge labeled (u, y) — equality edge
    // unless `excluded` — must shatter depth d.
    bool child_ok(const DynBitset& mask, DimensionKind kind, int d, NodeId u, LabelId y,
                  bool excluded) {
        DynBitset child = mask;
        if (excluded)
            child.subtract(inst_->label_mask(u, y));
        else
            child &= inst_->label_mask(u, y);
        if (child == mask) return true;  // depth d holds for the current space
        if (child.none()) return false;
        return dim(child, kind) >= d;
    }

    // At least two labels from `allowed` whose equality children shatter d.
    template <typename Allowed>
    bool two_labels_ok(const DynBitset& mask, DimensionKind kind, int d, NodeId u,
                       Allowed&& allowed) {
        int hits = 0;
        for (LabelId y = 0; y < inst_->num_labels(); ++y)
            if (allowed(y) && child_ok(mask, kind, d, u, y, false) && ++hits == 2) return true;
        return false;
    }

    bool root_ok(const DynBitset& mask, DimensionKind kind, int d, NodeId x) {
        const auto& nb = inst_->graph.neighbors[x];
        const int k = inst_->num_labels();
        switch (kind) {
            case DimensionKind::littlestone:
                // Two sibling labels at x; movement plays no role.
                return two_labels_ok(mask, kind, d, x, [](LabelId) { return true; });

            case DimensionKind::binary_improvement: {
                // Edge (x, 1) plus an edge (v, 0) for every reachable v
                // (including x itself).
                if (!child_ok(mask, kind, d, x, 1, false)) return false;
                for (NodeId v : nb)
                    if (!child_ok(mask, kind, d, v, 0, false)) return false;
                return true;
            }

            case DimensionKind::multiclass_improvement: {
                // Two sibling labels at x. A moved-to node either already
                // contradicts the move (bottom label) or carries two sibling
                // non-bottom labels.
                if (!two_labels_ok(mask, kind, d, x, [](LabelId) { return true; }))
                    return false;
                for (NodeId v : nb) {
                    if (v == x) continue;
                    if (child_ok(mask, kind, d, v, kBottomLabel, false)) continue;
                    if (!two_labels_ok(mask, kind, d, v,
                                       [](LabelId y) { return y != kBottomLabel; }))
                        return false;
                }
                return true;
            }

            case DimensionKind::bandit_improvement: {
                // Disagreement shattering: every label at x, every non-bottom
                // label at moved-to nodes.
                for (LabelId y = 0; y < k; ++y)
                    if (!child_ok(mask, kind, d, x, y, true)) return false;
                for (NodeId v : nb) {
                    if (v == x) continue;
                    for (LabelId y = 1; y < k; ++y)
                        if (!child_ok(mask, kind, d, v, y, true)) return false;
                }
                return true;
            }

            case DimensionKind::weighted_improvement: {
                // Like the multiclass family, with "bottom" generalized to
                // the labels the move cost rules out.
                if (!two_labels_ok(mask, kind, d, x, [](LabelId) { return true; }))
                    return false;
                for (NodeId v : nb) {
                    if (v == x) continue;
                    bool ok = false;
                    for (LabelId y = 0; y < k && !ok; ++y)
                        if (never_moves_for(*inst_, x, v, y) &&
                            child_ok(mask, kind, d, v, y, false))
                            ok = true;
                    if (!ok)
                        ok = two_labels_ok(mask, kind, d, v, [&](LabelId y) {
                            return !never_moves_for(*inst_, x, v, y);
                        });
                    if (!ok) return false;
                }
                return true;
            }
        }
        return false;
    }

    const Instance* inst_;
    size_t memo_limit_;
    std::array<Memo, 5> memo_;
};

}  // namespace olimp
