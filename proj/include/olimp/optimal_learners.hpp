#pragma once

#include <algorithm>
#include <memory>

#include "olimp/learner.hpp"

namespace olimp {

// Shared plumbing for the optimal learners: a version space plus the
// dimension it plays against. Every mistake strictly decreases that
// dimension, which is the whole mistake-bound argument.
class VersionSpaceLearner : public OnlineLearner, public VersionSpaceCarrier {
public:
    VersionSpaceLearner(const Instance* inst, std::shared_ptr<DimensionSolver> solver,
                        DimensionKind kind)
        : inst_(inst), solver_(std::move(solver)), kind_(kind), vs_(inst) {
        check_kind_preconditions(*inst, kind);
    }

    int dimension_snapshot() const override { return solver_->dimension(vs_, kind_); }
    bool shrinks_on_mistake() const override { return true; }
    std::string state_key() const override { return mask_state_key(vs_.mask()); }
    const VersionSpace& version_space() const override { return vs_; }
    std::shared_ptr<DimensionSolver> solver() const { return solver_; }
    DimensionKind kind() const { return kind_; }

protected:
    int dim(const VersionSpace& vs) const { return solver_->dimension(vs, kind_); }
    int dim() const { return dim(vs_); }

    std::vector<NodeId> sorted_neighbors(NodeId x) const {
        std::vector<NodeId> nb = inst_->graph.neighbors[x];
        std::sort(nb.begin(), nb.end());
        return nb;
    }

    void require_nonempty() const {
        if (vs_.empty())
            throw NonRealizableError("version space is empty; the run was not realizable");
    }

    void shrink_to(const VersionSpace& next) {
        if (next.empty())
            throw NonRealizableError("feedback is inconsistent with every hypothesis");
        vs_ = next;
    }

    const Instance* inst_;
    std::shared_ptr<DimensionSolver> solver_;
    DimensionKind kind_;
    VersionSpace vs_;
};

// Binary setting. Tentatively predict 1 wherever assuming label 0 would drop
// the dimension; if that would send the agent to several attractive nodes,
// keep only the smallest one so the destination is pinned down. Works with
// the mistake bit alone: in the binary case the true label is the flip.
class OptimalBinaryLearner : public VersionSpaceLearner {
public:
    OptimalBinaryLearner(const Instance* inst, std::shared_ptr<DimensionSolver> solver)
        : VersionSpaceLearner(inst, std::move(solver), DimensionKind::binary_improvement) {}

    std::string name() const override { return "binary-opt"; }

    Publication publish(NodeId x) override {
        require_nonempty();
        const int d = dim();
        Publication pub = Publication::all_bottom(*inst_, x);
        for (NodeId v : pub.domain)
            if (dim(vs_.with_label(v, 0)) < d) pub.set(v, 1);
        if (pub.at(x) != 1) {
            auto up = improvement_targets(*inst_, pub, x);
            if (!up.empty())
                for (size_t i = 1; i < up.size(); ++i) pub.set(up[i], 0);
        }
        last_pub_ = pub;
        return pub;
    }

    void observe(const Feedback& fb) override {
        if (!fb.mistake) return;
        LabelId predicted = last_pub_.at(fb.final_node);
        LabelId truth = fb.true_label ? *fb.true_label : (1 - predicted);
        if (truth == predicted)
            throw InvariantViolationError("mistake flagged but labels agree");
        shrink_to(vs_.with_label(fb.final_node, truth));
    }

    std::unique_ptr<OnlineLearner> clone() const override {
        return std::make_unique<OptimalBinaryLearner>(*this);
    }

private:
    Publication last_pub_;
};

// Shared step for the multiclass and weighted learners; they differ only in
// which dimension they track and in which labels count as movement-proof for
// a given edge.
class SingleTargetLearner : public VersionSpaceLearner {
public:
    using VersionSpaceLearner::VersionSpaceLearner;

    Publication publish(NodeId x) override {
        require_nonempty();
        const int d = dim();
        const int k = inst_->num_labels();
        const auto nb = sorted_neighbors(x);

        // Case A: some reachable node keeps the dimension below d whatever
        // label is revealed there. Parking the top label on it makes the
        // agent end there, and any mistake is progress.
        for (NodeId v : nb) {
            int worst = -1;
            for (LabelId y = 0; y < k; ++y) worst = std::max(worst, dim(vs_.with_label(v, y)));
            if (worst < d) return target(x, v, inst_->labels.top());
        }
        // Case B: the presented node itself has a unique dimension-maximal
        // label; predict it there, bottom elsewhere. The agent stays.
        if (auto y = unique_argmax(x)) return target(x, x, *y);
        // Case C: some other reachable node has a unique maximal label that
        // the agent would actually move for.
        for (NodeId v : nb) {
            if (v == x) continue;
            if (auto y = unique_argmax(v); y && moves_for(x, v, *y)) return target(x, v, *y);
        }
        throw InvariantViolationError("no publishable case at node " + inst_->node_names[x] +
                                      "; the dimension recursion would contradict this");
    }

    void observe(const Feedback& fb) override {
        if (!fb.mistake) return;
        if (!fb.true_label) throw ModelError(name() + " needs full feedback");
        shrink_to(vs_.with_label(fb.final_node, *fb.true_label));
    }

protected:
    // Would an agent standing on a bottom-labeled node pay cost(x, v) to grab
    // label y at v?
    virtual bool moves_for(NodeId x, NodeId v, LabelId y) const = 0;

    Publication target(NodeId x, NodeId v, LabelId y) const {
        Publication pub = Publication::all_bottom(*inst_, x);
        pub.set(v, y);
        return pub;
    }

    std::optional<LabelId> unique_argmax(NodeId v) const {
        int best = -2, count = 0;
        LabelId arg = kBottomLabel;
        for (LabelId y = 0; y < inst_->num_labels(); ++y) {
            int dy = dim(vs_.with_label(v, y));
            if (dy > best) {
                best = dy;
                arg = y;
                count = 1;
            } else if (dy == best) {
                ++count;
            }
        }
        if (count != 1) return std::nullopt;
        return arg;
    }
};

// Multiclass full-feedback setting on costless graphs.
class OptimalMulticlassLearner : public SingleTargetLearner {
public:
    OptimalMulticlassLearner(const Instance* inst, std::shared_ptr<DimensionSolver> solver)
        : SingleTargetLearner(inst, std::move(solver), DimensionKind::multiclass_improvement) {}

    std::string name() const override { return "multiclass-opt"; }

    std::unique_ptr<OnlineLearner> clone() const override {
        return std::make_unique<OptimalMulticlassLearner>(*this);
    }

protected:
    bool moves_for(NodeId, NodeId, LabelId y) const override { return y != kBottomLabel; }
};

// Weighted full-feedback setting. Expects useless edges pruned away, so the
// top label always pays for any surviving move (case A relies on it).
class OptimalWeightedLearner : public SingleTargetLearner {
public:
    OptimalWeightedLearner(const Instance* inst, std::shared_ptr<DimensionSolver> solver)
        : SingleTargetLearner(inst, std::move(solver), DimensionKind::weighted_improvement) {}

    std::string name() const override { return "weighted-opt"; }

    std::unique_ptr<OnlineLearner> clone() const override {
        return std::make_unique<OptimalWeightedLearner>(*this);
    }

protected:
    bool moves_for(NodeId x, NodeId v, LabelId y) const override {
        return !never_moves_for(*inst_, x, v, y);
    }
};

// Bandit setting: only the mistake bit comes back. Publish one label whose
// refutation is guaranteed progress: ruling it out at its node drops the
// disagreement dimension.
class OptimalBanditLearner : public VersionSpaceLearner {
public:
    OptimalBanditLearner(const Instance* inst, std::shared_ptr<DimensionSolver> solver)
        : VersionSpaceLearner(inst, std::move(solver), DimensionKind::bandit_improvement) {}

    std::string name() const override { return "bandit-opt"; }

    Publication publish(NodeId x) override {
        require_nonempty();
        const int d = dim();
        for (NodeId v : sorted_neighbors(x)) {
            LabelId first = (v == x) ? 0 : 1;  // moved-to nodes never show bottom
            int best = INT32_MAX;
            LabelId arg = -1;
            for (LabelId y = first; y < inst_->num_labels(); ++y) {
                int dy = dim(vs_.without_label(v, y));
                if (dy < best) {
                    best = dy;
                    arg = y;
                }
            }
            if (best < d) {
                pending_node_ = v;
                pending_label_ = arg;
                return target(x, v, arg);
            }
        }
        throw InvariantViolationError("no refutable label at node " + inst_->node_names[x] +
                                      "; the dimension recursion would contradict this");
    }

    void observe(const Feedback& fb) override {
        if (!fb.mistake) return;
        if (fb.final_node != pending_node_)
            throw InvariantViolationError("bandit learner: agent ended on an unplanned node");
        shrink_to(vs_.without_label(pending_node_, pending_label_));
    }

    std::unique_ptr<OnlineLearner> clone() const override {
        return std::make_unique<OptimalBanditLearner>(*this);
    }

private:
    Publication target(NodeId x, NodeId v, LabelId y) const {
        Publication pub = Publication::all_bottom(*inst_, x);
        pub.set(v, y);
        return pub;
    }

    NodeId pending_node_ = -1;
    LabelId pending_label_ = -1;
};

}  // namespace olimp
