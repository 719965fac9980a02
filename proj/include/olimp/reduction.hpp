#pragma once

#include <functional>
#include <memory>
#include <numeric>

#include "olimp/optimal_learners.hpp"

namespace olimp {

struct ReductionOptions {
    // Spawn the guessed label at the presented node instead of the agent's
    // final node. Kept for comparison runs; the default (final node) is the
    // variant whose expert updates provably stay within the wrapped learner's
    // mistake budget.
    bool spawn_at_presented = false;
    size_t max_experts = 200'000;
};

struct ReductionMistakeStats {
    int type = 0;          // 1: stationary all-bottom round, 2: endorsed prediction
    double weight_before = 0.0;
    double weight_after = 0.0;
};

// Runs a full-feedback learner in the bandit setting by maintaining a pool of
// weighted copies ("experts"), each fed one guessed label history. When
// enough pool weight agrees on a non-bottom label somewhere in Delta(x), that
// label is published there; otherwise everything gets the bottom label. On a
// mistake, every expert that endorsed the refuted prediction is replaced by
// its k-1 label guesses at the agent's final node, so at least half of the
// endorsing weight is provably wrong and total weight decays geometrically,
// while the expert fed only true labels survives with predictable weight.
class BanditReductionLearner : public OnlineLearner {
public:
    using Factory = std::function<std::unique_ptr<OnlineLearner>()>;
    using Options = ReductionOptions;
    using MistakeStats = ReductionMistakeStats;

    BanditReductionLearner(const Instance* inst, Factory factory, Options opt = {})
        : inst_(inst), factory_(std::move(factory)), opt_(opt) {
        experts_.push_back({factory_(), 1.0, {}, {}});
    }

    static BanditReductionLearner wrapping_multiclass(
        const Instance* inst, std::shared_ptr<DimensionSolver> solver, Options opt = {}) {
        return BanditReductionLearner(
            inst,
            [inst, solver] { return std::make_unique<OptimalMulticlassLearner>(inst, solver); },
            opt);
    }

    BanditReductionLearner(const BanditReductionLearner& o)
        : inst_(o.inst_), factory_(o.factory_), opt_(o.opt_), history_(o.history_) {
        for (const auto& e : o.experts_)
            experts_.push_back({e.learner->clone(), e.weight, e.pub, e.history});
    }

    std::string name() const override { return "bandit-reduction"; }

    Publication publish(NodeId x) override {
        last_x_ = x;
        for (auto& e : experts_) e.pub = e.learner->publish(x);

        const int k = inst_->num_labels();
        const double threshold = total_weight() / (double(k) * (inst_->graph.max_degree() + 1));

        // Publish at the first node whose heaviest non-bottom vote is heavy
        // enough; everywhere else stays bottom so the agent's destination is
        // pinned down.
        last_pub_ = Publication::all_bottom(*inst_, x);
        std::vector<NodeId> nb = last_pub_.domain;
        std::sort(nb.begin(), nb.end());
        for (NodeId v : nb) {
            LabelId best_y = kBottomLabel;
            double best_w = 0.0;
            for (LabelId y = 1; y < k; ++y) {
                double w = 0.0;
                for (const auto& e : experts_)
                    if (e.pub.at(v) == y) w += e.weight;
                if (w > best_w) {
                    best_w = w;
                    best_y = y;
                }
            }
            if (best_y != kBottomLabel && best_w >= threshold) {
                last_pub_.set(v, best_y);
                return last_pub_;
            }
        }
        return last_pub_;
    }

    void observe(const Feedback& fb) override {
        if (!fb.mistake) return;
        const NodeId v = fb.final_node;
        const LabelId predicted = last_pub_.at(v);
        const int k = inst_->num_labels();
        const double before = total_weight();

        const bool stationary_bottom =
            v == last_x_ && improvement_targets(*inst_, last_pub_, last_x_).empty();

        std::vector<Expert> next;
        for (auto& e : experts_) {
            const bool endorsed =
                stationary_bottom ? improvement_targets(*inst_, e.pub, last_x_).empty()
                                  : e.pub.at(v) == predicted;
            if (!endorsed) {
                next.push_back(std::move(e));
                continue;
            }
            const NodeId spawn_node =
                stationary_bottom ? last_x_ : (opt_.spawn_at_presented ? last_x_ : v);
            const LabelId refuted = stationary_bottom ? kBottomLabel : predicted;
            const double w = e.weight / (2.0 * (k - 1));
            for (LabelId y = 0; y < k; ++y) {
                if (y == refuted) continue;
                auto guess = e.learner->clone();
                try {
                    guess->observe(Feedback{spawn_node, true, y});
                } catch (const NonRealizableError&) {
                    continue;  // guess contradicts every hypothesis; drop it
                }
                auto hist = e.history;
                hist.push_back({spawn_node, y});
                next.push_back({std::move(guess), w, {}, std::move(hist)});
            }
        }
        if (next.empty())
            throw NonRealizableError("expert pool died; the run was not realizable");
        if (next.size() > opt_.max_experts)
            throw ResourceLimitError("expert pool exceeds its configured size cap");
        experts_ = std::move(next);
        history_.push_back({stationary_bottom ? 1 : 2, before, total_weight()});
    }

    std::unique_ptr<OnlineLearner> clone() const override {
        return std::make_unique<BanditReductionLearner>(*this);
    }

    // Dimension of the union of expert version spaces: every hypothesis some
    // expert still entertains. Restrictions only remove hypotheses, so this
    // is nonincreasing (though not strictly per mistake).
    int dimension_snapshot() const override {
        DynBitset u(inst_->num_hypotheses());
        const VersionSpaceLearner* proto = nullptr;
        for (const auto& e : experts_) {
            if (auto* vsl = dynamic_cast<const VersionSpaceLearner*>(e.learner.get())) {
                u |= vsl->version_space().mask();
                proto = vsl;
            }
        }
        if (!proto) return 0;
        return proto->solver()->dimension(VersionSpace(inst_, u), proto->kind());
    }

    double total_weight() const {
        double w = 0.0;
        for (const auto& e : experts_) w += e.weight;
        return w;
    }

    size_t pool_size() const { return experts_.size(); }
    const std::vector<MistakeStats>& mistake_history() const { return history_; }

    // True if some expert's entire guessed-label history agrees with h.
    // On realizable runs this holds for the hidden hypothesis throughout.
    bool has_expert_consistent_with(const Hypothesis& h) const {
        for (const auto& e : experts_) {
            bool ok = true;
            for (const auto& [node, label] : e.history)
                if (h(node) != label) { ok = false; break; }
            if (ok) return true;
        }
        return false;
    }

private:
    struct Expert {
        std::unique_ptr<OnlineLearner> learner;
        double weight;
        Publication pub;  // this round's would-be publication
        std::vector<std::pair<NodeId, LabelId>> history;  // guessed labels fed so far
    };

    const Instance* inst_;
    Factory factory_;
    Options opt_;
    std::vector<Expert> experts_;
    std::vector<MistakeStats> history_;
    NodeId last_x_ = -1;
    Publication last_pub_;
};

}  // namespace olimp
