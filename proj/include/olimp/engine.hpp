#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "olimp/adversary.hpp"
#include "olimp/learner.hpp"
#include "olimp/response.hpp"

namespace olimp {

struct GameConfig {
    Setting setting = Setting::binary_full;
    TiePolicy tie_policy = TiePolicy::lexicographic_min;
    uint64_t tie_seed = 0;
    std::optional<int> horizon;   // default: |H| * (initial dimension + 1)
    bool record_snapshots = true; // per-round learner dimension (can be costly)
};

struct RoundRecord {
    NodeId x = -1;
    Publication pub;
    NodeId final_node = -1;
    LabelId predicted = -1;
    bool mistake = false;
    std::optional<LabelId> revealed_label;  // never set in the bandit setting
    int dim_after = -1;                     // -1 when snapshots are off
    int consistent_count = 0;               // hypotheses still viable afterwards
};

struct Transcript {
    Setting setting = Setting::binary_full;
    std::string learner_name;
    std::string adversary_name;
    TiePolicy tie_policy = TiePolicy::lexicographic_min;
    uint64_t tie_seed = 0;
    bool learner_shrinks_on_mistake = false;
    int initial_dim = -1;
    int horizon_used = 0;
    std::vector<RoundRecord> rounds;
    int total_mistakes = 0;
    HypId witness = -1;  // one hypothesis consistent with the whole run
};

// Plays learner against adversary under the protocol: present, publish,
// best-respond, answer, update. The engine owns the consistency book C and
// aborts the moment an answer rules out every hypothesis.
inline Transcript run_game(const Instance& inst, OnlineLearner& learner, Adversary& adversary,
                           const GameConfig& cfg = {}) {
    if (cfg.tie_policy == TiePolicy::adversarial)
        throw ModelError(
            "the game engine resolves ties deterministically; adversarial ties "
            "exist only inside the exhaustive game search");

    Transcript out;
    out.setting = cfg.setting;
    out.learner_name = learner.name();
    out.adversary_name = adversary.name();
    out.tie_policy = cfg.tie_policy;
    out.tie_seed = cfg.tie_seed;
    out.learner_shrinks_on_mistake = learner.shrinks_on_mistake();
    out.initial_dim = learner.dimension_snapshot();

    const bool bandit = cfg.setting == Setting::multiclass_bandit;
    // Learners that cannot report a dimension get the crudest upper bound in
    // its place, so the default horizon is never zero.
    const int dim_bound = out.initial_dim >= 0 ? out.initial_dim : inst.num_hypotheses();
    const int horizon = cfg.horizon.value_or(inst.num_hypotheses() * (dim_bound + 1));
    out.horizon_used = horizon;

    VersionSpace consistent(&inst);
    std::mt19937_64 tie_rng(cfg.tie_seed);

    for (int t = 0; t < horizon; ++t) {
        auto xo = adversary.next_node(consistent);
        if (!xo) break;
        const NodeId x = *xo;
        if (x < 0 || x >= inst.num_nodes())
            throw ModelError("adversary presented a node outside the graph");

        Publication pub;
        try {
            pub = learner.publish(x);
        } catch (const NonRealizableError& e) {
            throw NonRealizableError("round " + std::to_string(t) + ": " + e.what());
        }
        if (pub.origin != x)
            throw InvariantViolationError("learner published for the wrong node");

        const auto ties = best_response_set(inst, pub, x);
        NodeId final_node = ties.front();
        if (cfg.tie_policy == TiePolicy::seeded_random && ties.size() > 1) {
            std::uniform_int_distribution<size_t> pick(0, ties.size() - 1);
            final_node = ties[pick(tie_rng)];
        }
        const LabelId predicted = pub.at(final_node);

        const EnvAnswer ans = adversary.answer(consistent, x, pub, final_node, predicted);

        RoundRecord rec;
        rec.x = x;
        rec.pub = pub;
        rec.final_node = final_node;
        rec.predicted = predicted;

        VersionSpace next(&inst);
        if (bandit) {
            rec.mistake = ans.mistake;
            next = rec.mistake ? consistent.without_label(final_node, predicted)
                               : consistent.with_label(final_node, predicted);
        } else {
            if (!ans.label)
                throw ModelError("full-feedback adversary answered without a label");
            const LabelId truth = *ans.label;
            if (truth < 0 || truth >= inst.num_labels())
                throw ModelError("adversary revealed a label outside the label space");
            rec.mistake = truth != predicted;
            rec.revealed_label = truth;
            next = consistent.with_label(final_node, truth);
        }
        if (next.empty())
            throw NonRealizableError("round " + std::to_string(t) +
                                     ": the answer rules out every hypothesis");
        consistent = next;

        try {
            learner.observe(Feedback{final_node, rec.mistake, rec.revealed_label});
        } catch (const NonRealizableError& e) {
            throw NonRealizableError("round " + std::to_string(t) + ": " + e.what());
        }

        rec.dim_after = cfg.record_snapshots ? learner.dimension_snapshot() : -1;
        rec.consistent_count = consistent.count();
        out.total_mistakes += rec.mistake ? 1 : 0;
        out.rounds.push_back(std::move(rec));
    }

    out.witness = consistent.first_member();
    return out;
}

// Re-derives the environment/agent half of a transcript and reports every
// deviation: agent moves, mistake bits, consistency bookkeeping, dimension
// monotonicity, bandit label hygiene. An empty result means the transcript
// checks out against this instance.
inline std::vector<std::string> check_transcript(const Instance& inst, const Transcript& tr) {
    std::vector<std::string> bad;
    auto complain = [&bad](int round, const std::string& what) {
        bad.push_back("round " + std::to_string(round) + ": " + what);
    };

    const bool bandit = tr.setting == Setting::multiclass_bandit;
    VersionSpace consistent(&inst);
    std::mt19937_64 tie_rng(tr.tie_seed);
    int mistakes = 0;
    int prev_dim = tr.initial_dim;

    for (size_t t = 0; t < tr.rounds.size(); ++t) {
        const RoundRecord& r = tr.rounds[t];
        const int round = static_cast<int>(t);
        if (r.x < 0 || r.x >= inst.num_nodes()) {
            complain(round, "presented node is outside the graph");
            break;
        }
        if (r.pub.origin != r.x) complain(round, "publication origin differs from the node");

        const auto ties = best_response_set(inst, r.pub, r.x);
        NodeId expect_final = ties.front();
        if (tr.tie_policy == TiePolicy::seeded_random && ties.size() > 1) {
            std::uniform_int_distribution<size_t> pick(0, ties.size() - 1);
            expect_final = ties[pick(tie_rng)];
        }
        if (r.final_node != expect_final)
            complain(round, "agent destination differs from the best response");
        if (r.final_node < 0 || !r.pub.covers(r.final_node)) {
            complain(round, "final node is outside the publication");
            break;
        }
        if (r.predicted != r.pub.at(r.final_node))
            complain(round, "recorded prediction differs from the publication");

        if (bandit) {
            if (r.revealed_label) complain(round, "bandit transcript leaks a true label");
            consistent = r.mistake ? consistent.without_label(r.final_node, r.predicted)
                                   : consistent.with_label(r.final_node, r.predicted);
        } else {
            if (!r.revealed_label) {
                complain(round, "full-feedback round lacks a revealed label");
                break;
            }
            if (r.mistake != (*r.revealed_label != r.predicted))
                complain(round, "mistake bit contradicts the revealed label");
            consistent = consistent.with_label(r.final_node, *r.revealed_label);
        }
        if (consistent.empty()) {
            complain(round, "no hypothesis is consistent with the round");
            break;
        }

        if (r.dim_after >= 0 && prev_dim >= 0) {
            if (r.dim_after > prev_dim) complain(round, "dimension snapshot increased");
            if (tr.learner_shrinks_on_mistake && r.mistake && r.dim_after >= prev_dim)
                complain(round, "mistake did not decrease the dimension snapshot");
        }
        prev_dim = r.dim_after;
        mistakes += r.mistake ? 1 : 0;
    }

    if (mistakes != tr.total_mistakes)
        bad.push_back("total mistakes " + std::to_string(tr.total_mistakes) +
                      " differ from the recorded rounds (" + std::to_string(mistakes) + ")");
    if (tr.witness >= 0 && !consistent.contains(tr.witness))
        bad.push_back("witness hypothesis is not consistent with the run");
    return bad;
}

}  // namespace olimp
