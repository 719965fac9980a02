#pragma once

#include <memory>
#include <random>
#include <string>

#include "olimp/dimensions.hpp"
#include "olimp/response.hpp"
#include "olimp/version_space.hpp"

namespace olimp {

// A learner for the improvement game: each round it publishes labels on
// Delta(x), then receives feedback for the node the agent ended on. publish()
// is called exactly once per round, observe() exactly once after it.
class OnlineLearner {
public:
    virtual ~OnlineLearner() = default;

    virtual std::string name() const = 0;
    virtual Publication publish(NodeId x) = 0;
    virtual void observe(const Feedback& fb) = 0;
    virtual std::unique_ptr<OnlineLearner> clone() const = 0;

    // Progress metric recorded per round in transcripts; nonincreasing over
    // any run for every learner in this library.
    virtual int dimension_snapshot() const = 0;

    // True when every mistake strictly decreases dimension_snapshot().
    virtual bool shrinks_on_mistake() const { return false; }

    // Hashable summary of the mutable state, for exhaustive game search.
    // Empty means the state is too rich to summarize (search unsupported).
    virtual std::string state_key() const { return {}; }
};

// Implemented by learners whose entire belief is one version space.
class VersionSpaceCarrier {
public:
    virtual ~VersionSpaceCarrier() = default;
    virtual const VersionSpace& version_space() const = 0;
};

inline std::string mask_state_key(const DynBitset& mask) {
    std::string s;
    s.reserve(mask.words().size() * 8);
    for (uint64_t w : mask.words())
        for (int i = 0; i < 8; ++i) s.push_back(char((w >> (8 * i)) & 0xff));
    return s;
}

// Classic online classifier interface: no agents, no movement. Used as the
// wrapped algorithm in BaselineWrapper. update() is only called on mistakes.
class PointLearner {
public:
    virtual ~PointLearner() = default;
    virtual std::string name() const = 0;
    virtual LabelId predict(NodeId x) = 0;
    virtual void update(NodeId x, LabelId true_label) = 0;
    virtual std::unique_ptr<PointLearner> clone() const = 0;
    virtual int dimension_snapshot() const = 0;
    virtual bool shrinks_on_mistake() const { return false; }
    virtual std::string state_key() const { return {}; }
};

// Predicts the label whose restriction keeps the littlestone dimension
// largest; every mistake then strictly shrinks that dimension, so mistakes
// never exceed the initial dimension.
class SoaPointLearner : public PointLearner, public VersionSpaceCarrier {
public:
    SoaPointLearner(const Instance* inst, std::shared_ptr<DimensionSolver> solver)
        : inst_(inst), solver_(std::move(solver)), vs_(inst) {}

    std::string name() const override { return "soa"; }

    LabelId predict(NodeId x) override {
        if (vs_.empty()) throw NonRealizableError("soa: version space is empty");
        LabelId best = kBottomLabel;
        int bestd = -2;
        for (LabelId y = 0; y < inst_->num_labels(); ++y) {
            int d = solver_->dimension(vs_.with_label(x, y), DimensionKind::littlestone);
            if (d > bestd) {
                bestd = d;
                best = y;
            }
        }
        return best;
    }

    void update(NodeId x, LabelId y) override {
        vs_ = vs_.with_label(x, y);
        if (vs_.empty()) throw NonRealizableError("soa: feedback is not realizable");
    }

    std::unique_ptr<PointLearner> clone() const override {
        return std::make_unique<SoaPointLearner>(*this);
    }

    int dimension_snapshot() const override {
        return solver_->dimension(vs_, DimensionKind::littlestone);
    }
    bool shrinks_on_mistake() const override { return true; }
    std::string state_key() const override { return mask_state_key(vs_.mask()); }
    const VersionSpace& version_space() const override { return vs_; }

private:
    const Instance* inst_;
    std::shared_ptr<DimensionSolver> solver_;
    VersionSpace vs_;
};

// Runs a movement-oblivious learner inside the improvement game: publish its
// prediction at x and the bottom label everywhere else. No move can then gain
// value, the agent stays put, and the wrapped learner faces exactly the
// stream it would have faced without improvements.
class BaselineWrapper : public OnlineLearner {
public:
    BaselineWrapper(const Instance* inst, std::unique_ptr<PointLearner> inner)
        : inst_(inst), inner_(std::move(inner)) {}

    BaselineWrapper(const BaselineWrapper& o) : inst_(o.inst_), inner_(o.inner_->clone()) {}

    std::string name() const override { return "baseline(" + inner_->name() + ")"; }

    Publication publish(NodeId x) override {
        Publication pub = Publication::all_bottom(*inst_, x);
        pub.set(x, inner_->predict(x));
        last_x_ = x;
        return pub;
    }

    void observe(const Feedback& fb) override {
        if (!fb.mistake) return;
        if (fb.final_node != last_x_)
            throw InvariantViolationError("baseline wrapper: agent moved unexpectedly");
        if (!fb.true_label)
            throw ModelError("baseline wrapper needs full feedback");
        inner_->update(fb.final_node, *fb.true_label);
    }

    std::unique_ptr<OnlineLearner> clone() const override {
        return std::make_unique<BaselineWrapper>(*this);
    }

    int dimension_snapshot() const override { return inner_->dimension_snapshot(); }
    bool shrinks_on_mistake() const override { return inner_->shrinks_on_mistake(); }
    std::string state_key() const override { return inner_->state_key(); }

    PointLearner& inner() { return *inner_; }

private:
    const Instance* inst_;
    std::unique_ptr<PointLearner> inner_;
    NodeId last_x_ = -1;
};

// Publishes one fixed label everywhere. A deliberately weak opponent for
// adversary tests.
class ConstantLearner : public OnlineLearner {
public:
    ConstantLearner(const Instance* inst, LabelId label = kBottomLabel)
        : inst_(inst), label_(label) {}

    std::string name() const override { return "constant"; }

    Publication publish(NodeId x) override {
        Publication pub = Publication::all_bottom(*inst_, x);
        for (NodeId v : pub.domain) pub.set(v, label_);
        return pub;
    }

    void observe(const Feedback&) override {}
    std::unique_ptr<OnlineLearner> clone() const override {
        return std::make_unique<ConstantLearner>(*this);
    }
    int dimension_snapshot() const override { return 0; }
    std::string state_key() const override { return std::string(1, char('c' + label_)); }

private:
    const Instance* inst_;
    LabelId label_;
};

// Publishes seeded-random labelings and never learns. Exercises adversaries
// and the engine against arbitrary, even self-harming, behavior.
class RandomLearner : public OnlineLearner {
public:
    RandomLearner(const Instance* inst, uint64_t seed) : inst_(inst), rng_(seed) {}

    std::string name() const override { return "random"; }

    Publication publish(NodeId x) override {
        Publication pub = Publication::all_bottom(*inst_, x);
        for (NodeId v : pub.domain) pub.set(v, LabelId(rng_() % inst_->num_labels()));
        return pub;
    }

    void observe(const Feedback&) override {}
    std::unique_ptr<OnlineLearner> clone() const override {
        return std::make_unique<RandomLearner>(*this);
    }
    int dimension_snapshot() const override { return 0; }

private:
    const Instance* inst_;
    std::mt19937_64 rng_;
};

}  // namespace olimp
