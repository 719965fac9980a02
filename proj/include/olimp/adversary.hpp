#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "olimp/response.hpp"
#include "olimp/trees.hpp"
#include "olimp/version_space.hpp"

namespace olimp {

// The environment half of a game round: where to send the learner next and
// how to answer once the agent has settled. `consistent` is the engine's
// book of hypotheses still compatible with every answer given so far; staying
// inside it is what keeps a run realizable.
class Adversary {
public:
    virtual ~Adversary() = default;
    virtual std::string name() const = 0;

    // Node to present next, or nullopt to end the run early.
    virtual std::optional<NodeId> next_node(const VersionSpace& consistent) = 0;

    // Answer for a round that ended on final_node with the given prediction.
    // Full-feedback settings must set the label; bandit answers set only the
    // mistake bit.
    virtual EnvAnswer answer(const VersionSpace& consistent, NodeId x, const Publication& pub,
                             NodeId final_node, LabelId predicted) = 0;
};

// Plays a fixed hypothesis: presents nodes from a seeded stream and answers
// truthfully. Runs against it are realizable by construction, which makes it
// the reference environment for learner-vs-learner comparisons.
class FixedHypothesisAdversary : public Adversary {
public:
    FixedHypothesisAdversary(const Instance* inst, HypId target, uint64_t seed)
        : inst_(inst), target_(target), rng_(seed) {
        if (target < 0 || target >= inst->num_hypotheses())
            throw ModelError("fixed-hypothesis adversary: no such hypothesis");
    }

    // Present this exact node sequence instead of random draws, then stop.
    void set_nodes(std::vector<NodeId> nodes) {
        scripted_nodes_ = std::move(nodes);
        next_ = 0;
    }

    std::string name() const override { return "fixed:" + inst_->hclass.names[target_]; }

    std::optional<NodeId> next_node(const VersionSpace&) override {
        if (scripted_nodes_) {
            if (next_ >= scripted_nodes_->size()) return std::nullopt;
            return (*scripted_nodes_)[next_++];
        }
        std::uniform_int_distribution<int> pick(0, inst_->num_nodes() - 1);
        return pick(rng_);
    }

    EnvAnswer answer(const VersionSpace&, NodeId, const Publication&, NodeId final_node,
                     LabelId predicted) override {
        const LabelId truth = inst_->hclass.table[target_](final_node);
        return EnvAnswer{truth != predicted, truth};
    }

    HypId target() const { return target_; }

private:
    const Instance* inst_;
    HypId target_;
    std::mt19937_64 rng_;
    std::optional<std::vector<NodeId>> scripted_nodes_;
    size_t next_ = 0;
};

// Walks a shattered tree, forcing one mistake per level: whatever the agent
// does, some branch of the current tree node refutes the prediction there,
// and following it keeps the run realizable because every root-to-leaf path
// of the tree is. Ends the run when the tree bottoms out.
class TreeAdversary : public Adversary {
public:
    TreeAdversary(const Instance* inst, DimensionKind kind, WitnessTree tree)
        : inst_(inst), kind_(kind), tree_(std::move(tree)), cur_(&tree_) {}

    // Builds the tree for the learner's setting at the class's full dimension.
    static TreeAdversary for_instance(const Instance& inst, DimensionKind kind,
                                      TreeSearchLimits lim = {}) {
        DimensionSolver solver(&inst);
        VersionSpace all(&inst);
        const int d = solver.dimension(all, kind);
        if (d <= 0) return TreeAdversary(&inst, kind, WitnessTree{});
        auto tree = find_shattered_tree(all, kind, d, lim);
        if (!tree)
            throw InvariantViolationError(
                "no shattered tree at the depth the recursion reported");
        return TreeAdversary(&inst, kind, std::move(*tree));
    }

    std::string name() const override { return "tree:" + to_string(kind_); }

    std::optional<NodeId> next_node(const VersionSpace&) override {
        if (cur_->leaf()) return std::nullopt;
        return cur_->root;
    }

    EnvAnswer answer(const VersionSpace&, NodeId x, const Publication& pub, NodeId final_node,
                     LabelId predicted) override {
        const WitnessTree::Branch* pick = select_branch(x, pub, final_node, predicted);
        if (!pick)
            throw InvariantViolationError(
                "tree adversary found no refuting branch; the tree is not shattered");
        cur_ = &pick->child;
        if (kind_ == DimensionKind::bandit_improvement) return EnvAnswer{true, std::nullopt};
        return EnvAnswer{pick->label != predicted, pick->label};
    }

    int forced_mistakes_available() const { return tree_.min_depth(); }

private:
    // A usable branch sits at the agent's final node and disagrees with the
    // prediction there (for bandit trees the branch label IS the prediction:
    // the constraint recorded is "not that label").
    const WitnessTree::Branch* select_branch(NodeId x, const Publication& pub,
                                             NodeId final_node, LabelId predicted) const {
        if (kind_ == DimensionKind::littlestone && final_node != x)
            throw ModelError(
                "littlestone-tree adversary expects a stationary agent; "
                "pair it with learners that publish no improvement targets");
        (void)pub;
        for (const auto& b : cur_->branches) {
            if (b.node != final_node) continue;
            if (kind_ == DimensionKind::bandit_improvement) {
                if (b.label == predicted) return &b;
            } else if (b.label != predicted) {
                return &b;
            }
        }
        return nullptr;
    }

    const Instance* inst_;
    DimensionKind kind_;
    WitnessTree tree_;
    const WitnessTree* cur_;
};

// Seeded fuzzing environment: random nodes, answers drawn from the still-
// consistent hypotheses, with a configurable appetite for forcing mistakes.
class RandomAdversary : public Adversary {
public:
    RandomAdversary(const Instance* inst, Setting setting, uint64_t seed,
                    double mistake_bias = 0.75)
        : inst_(inst), setting_(setting), rng_(seed), bias_(mistake_bias) {}

    std::string name() const override { return "random"; }

    std::optional<NodeId> next_node(const VersionSpace&) override {
        std::uniform_int_distribution<int> pick(0, inst_->num_nodes() - 1);
        return pick(rng_);
    }

    EnvAnswer answer(const VersionSpace& consistent, NodeId, const Publication&,
                     NodeId final_node, LabelId predicted) override {
        std::vector<LabelId> truthful;     // labels some consistent hypothesis has here
        std::vector<LabelId> refuting;     // the subset that differs from the prediction
        for (LabelId y = 0; y < inst_->num_labels(); ++y) {
            if (consistent.with_label(final_node, y).empty()) continue;
            truthful.push_back(y);
            if (y != predicted) refuting.push_back(y);
        }
        if (truthful.empty())
            throw InvariantViolationError("random adversary: consistent set already empty");

        std::uniform_real_distribution<double> coin(0.0, 1.0);
        const bool force = !refuting.empty() && coin(rng_) < bias_;
        const auto& pool = force ? refuting : truthful;
        std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
        const LabelId truth = pool[pick(rng_)];

        if (setting_ == Setting::multiclass_bandit) return EnvAnswer{truth != predicted, {}};
        return EnvAnswer{truth != predicted, truth};
    }

private:
    const Instance* inst_;
    Setting setting_;
    std::mt19937_64 rng_;
    double bias_;
};

// Replays a fixed script, e.g. the optimal line extracted from an exhaustive
// game search or the environment half of a recorded transcript.
class ReplayAdversary : public Adversary {
public:
    struct Step {
        NodeId x = -1;
        EnvAnswer on_answer;
    };

    explicit ReplayAdversary(std::vector<Step> script) : script_(std::move(script)) {}

    std::string name() const override { return "replay"; }

    std::optional<NodeId> next_node(const VersionSpace&) override {
        if (pos_ >= script_.size()) return std::nullopt;
        return script_[pos_].x;
    }

    EnvAnswer answer(const VersionSpace&, NodeId, const Publication&, NodeId,
                     LabelId) override {
        if (pos_ >= script_.size())
            throw InvariantViolationError("replay adversary ran past its script");
        return script_[pos_++].on_answer;
    }

    size_t steps_remaining() const { return script_.size() - pos_; }

private:
    std::vector<Step> script_;
    size_t pos_ = 0;
};

}  // namespace olimp
