#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "olimp/adversary.hpp"
#include "olimp/dimensions.hpp"
#include "olimp/learner.hpp"
#include "olimp/response.hpp"

namespace olimp {

// Exhaustive search is exponential; these caps keep it honest. Exceeding one
// raises ResourceLimitError before any search starts.
struct OracleLimits {
    int max_nodes = 8;
    int max_hypotheses = 64;
    int max_labels = 4;
    int max_degree = 5;  // |Delta(x)| including the node itself
    size_t max_states = 4'000'000;
};

inline void enforce(const Instance& inst, const OracleLimits& lim) {
    if (inst.num_nodes() > lim.max_nodes)
        throw ResourceLimitError("exhaustive search: too many nodes");
    if (inst.num_hypotheses() > lim.max_hypotheses)
        throw ResourceLimitError("exhaustive search: too many hypotheses");
    if (inst.num_labels() > lim.max_labels)
        throw ResourceLimitError("exhaustive search: too many labels");
    if (inst.graph.max_degree() > lim.max_degree)
        throw ResourceLimitError("exhaustive search: degree too large");
}

// Exact value of the improvement game: the number of mistakes an optimal
// environment forces against an optimal learner when the consistent set is V.
// Computed by memoized minimax over version-space masks. Rounds that leave
// the mask unchanged make the equations self-referential; each mask's value
// is therefore the limit of value iteration from below, which exists because
// publishing any still-consistent hypothesis bounds the game by |V| - 1.
class MinimaxSolver {
public:
    MinimaxSolver(const Instance* inst, Setting setting, OracleLimits lim = {})
        : inst_(inst), bandit_(setting == Setting::multiclass_bandit), lim_(lim) {
        enforce(*inst, lim);
        if (setting == Setting::binary_full && inst->num_labels() != 2)
            throw ModelError("binary setting needs exactly two labels");
    }

    int value() { return value_of(inst_->full_mask()); }

    int value(const VersionSpace& vs) {
        if (&vs.instance() != inst_) throw ModelError("version space from another instance");
        if (vs.empty()) throw ModelError("game value of an empty version space");
        return value_of(vs.mask());
    }

    size_t states_explored() const { return memo_.size(); }

private:
    int value_of(const DynBitset& mask) {
        if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
        if (memo_.size() >= lim_.max_states)
            throw ResourceLimitError("exhaustive search: state cap reached");

        const int cap = inst_->num_hypotheses();
        int v = 0;
        for (;;) {
            const int next = eval(mask, v);
            if (next == v) break;
            if (next > cap)
                throw InvariantViolationError(
                    "game value exceeds the hypothesis count; the search is wrong");
            v = next;
        }
        memo_.emplace(mask, v);
        return v;
    }

    // One application of the minimax operator with same-mask continuations
    // priced at self_value.
    int eval(const DynBitset& mask, int self_value) {
        int best = 0;
        for (NodeId x = 0; x < inst_->num_nodes(); ++x)
            best = std::max(best, env_value(mask, x, self_value));
        return best;
    }

    int env_value(const DynBitset& mask, NodeId x, int self_value) {
        std::vector<NodeId> domain = inst_->graph.neighbors[x];
        std::sort(domain.begin(), domain.end());
        const int m = static_cast<int>(domain.size());
        const int k = inst_->num_labels();

        int cur_min = std::numeric_limits<int>::max();
        std::set<std::vector<LabelId>> tried;

        // Hypotheses still in the mask first: publishing one guarantees every
        // mistake shrinks the mask, so these usually realize the minimum.
        for (int h = mask.find_first(); h != -1; h = mask.find_next(h)) {
            std::vector<LabelId> labels(domain.size());
            for (int i = 0; i < m; ++i) labels[i] = inst_->hclass.table[h](domain[i]);
            if (!tried.insert(labels).second) continue;
            cur_min = std::min(cur_min, pub_value(mask, x, domain, labels, self_value, cur_min));
            if (cur_min == 0) return 0;
        }

        std::vector<LabelId> labels(domain.size(), 0);
        for (;;) {
            if (!tried.count(labels))
                cur_min =
                    std::min(cur_min, pub_value(mask, x, domain, labels, self_value, cur_min));
            if (cur_min == 0) return 0;
            int i = 0;
            while (i < m && labels[i] == k - 1) labels[i++] = 0;
            if (i == m) break;
            ++labels[i];
        }
        return cur_min;
    }

    // Environment's best reply to one publication: worst tie, then worst
    // feasible answer. Stops early once `bound` cannot be beaten.
    int pub_value(const DynBitset& mask, NodeId x, const std::vector<NodeId>& domain,
                  const std::vector<LabelId>& labels, int self_value, int bound) {
        Publication pub;
        pub.origin = x;
        pub.domain = domain;
        pub.labels = labels;

        int worst = 0;
        for (NodeId d : best_response_set(*inst_, pub, x)) {
            if (worst >= bound) return worst;
            const LabelId pred = pub.at(d);
            if (bandit_) {
                DynBitset wrong = mask;
                wrong.subtract(inst_->label_mask(d, pred));
                if (wrong.any())
                    worst = std::max(worst, 1 + (wrong == mask ? self_value : value_of(wrong)));
                const DynBitset right = mask & inst_->label_mask(d, pred);
                if (right.any())
                    worst = std::max(worst, right == mask ? self_value : value_of(right));
            } else {
                for (LabelId y = 0; y < inst_->num_labels(); ++y) {
                    const DynBitset child = mask & inst_->label_mask(d, y);
                    if (child.none()) continue;
                    const int cont = child == mask ? self_value : value_of(child);
                    worst = std::max(worst, (y != pred ? 1 : 0) + cont);
                    if (worst >= bound) return worst;
                }
            }
        }
        return worst;
    }

    const Instance* inst_;
    bool bandit_;
    OracleLimits lim_;
    std::unordered_map<DynBitset, int, DynBitsetHash> memo_;
};

// Exact worst case of a *given* deterministic learner: the environment picks
// nodes, ties resolve lexicographically as in the game engine, and answers
// may be anything that keeps some hypothesis alive. Returns the forced
// mistake count and one environment line achieving it. Requires a learner
// with a state key; against learners that never rule anything out the count
// is unbounded and the search reports a resource error instead.
struct WorstCaseResult {
    int value = 0;
    std::vector<ReplayAdversary::Step> line;
};

class WorstCaseSearch {
public:
    WorstCaseSearch(const Instance* inst, Setting setting, OracleLimits lim = {})
        : inst_(inst), bandit_(setting == Setting::multiclass_bandit), lim_(lim) {
        enforce(*inst, lim);
    }

    WorstCaseResult run(const OnlineLearner& learner) {
        if (learner.state_key().empty())
            throw ModelError("exhaustive search needs a learner with a state key");
        WorstCaseResult out;
        out.value = search(learner, inst_->full_mask());
        extract_line(learner, inst_->full_mask(), out);
        return out;
    }

private:
    struct Move {
        NodeId x = -1;
        EnvAnswer answer;
        bool mistake = false;
        std::unique_ptr<OnlineLearner> next;  // learner after observing
        DynBitset child;
        bool self = false;  // round left both learner state and mask unchanged
    };

    static std::string key_of(const OnlineLearner& l, const DynBitset& mask) {
        std::string key = l.state_key();
        key.push_back('|');
        for (HypId h = mask.find_first(); h != -1; h = mask.find_next(h)) {
            key += std::to_string(h);
            key.push_back(',');
        }
        return key;
    }

    int search(const OnlineLearner& learner, const DynBitset& mask) {
        const std::string key = key_of(learner, mask);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (!active_.insert(key).second)
            throw ModelError(
                "learner state revisits itself without consuming the version space; "
                "exhaustive search requires progress in every non-trivial round");
        if (memo_.size() >= lim_.max_states)
            throw ResourceLimitError("exhaustive search: state cap reached");

        const int cap = inst_->num_hypotheses();
        int v = 0;
        for (;;) {
            int next = 0;
            for (NodeId x = 0; x < inst_->num_nodes(); ++x)
                for (Move& mv : moves(learner, mask, x)) {
                    const int cont = mv.self ? v : search(*mv.next, mv.child);
                    next = std::max(next, (mv.mistake ? 1 : 0) + cont);
                }
            if (next == v) break;
            if (next > cap)
                throw ResourceLimitError(
                    "the environment can force unboundedly many mistakes from this learner");
            v = next;
        }
        active_.erase(key);
        memo_.emplace(key, v);
        return v;
    }

    // All feasible environment replies at node x against the learner's
    // deterministic publication there. The agent's tie between equally good
    // destinations is the environment's to break, so every tied destination
    // contributes its own batch of moves.
    std::vector<Move> moves(const OnlineLearner& learner, const DynBitset& mask, NodeId x) {
        auto probe = learner.clone();
        const Publication pub = probe->publish(x);
        const std::string before = key_of(learner, mask);

        std::vector<Move> out;
        for (NodeId d : best_response_set(*inst_, pub, x)) {
            const LabelId pred = pub.at(d);
            auto add = [&](bool mistake, std::optional<LabelId> revealed, DynBitset child) {
                auto next = learner.clone();
                next->publish(x);
                next->observe(Feedback{d, mistake, revealed});
                Move mv;
                mv.x = x;
                mv.answer =
                    bandit_ ? EnvAnswer{mistake, std::nullopt} : EnvAnswer{mistake, revealed};
                mv.mistake = mistake;
                mv.child = std::move(child);
                mv.self = key_of(*next, mv.child) == before;
                mv.next = std::move(next);
                out.push_back(std::move(mv));
            };

            if (bandit_) {
                DynBitset wrong = mask;
                wrong.subtract(inst_->label_mask(d, pred));
                if (wrong.any()) add(true, std::nullopt, std::move(wrong));
                DynBitset right = mask & inst_->label_mask(d, pred);
                if (right.any()) add(false, std::nullopt, std::move(right));
            } else {
                for (LabelId y = 0; y < inst_->num_labels(); ++y) {
                    DynBitset child = mask & inst_->label_mask(d, y);
                    if (child.none()) continue;
                    add(y != pred, y, std::move(child));
                }
            }
        }
        return out;
    }

    // Greedy unrolling of one optimal line: always take a value-achieving
    // branch, preferring mistakes, never a branch that changes nothing.
    void extract_line(const OnlineLearner& learner, DynBitset mask, WorstCaseResult& out) {
        auto cur = learner.clone();
        int remaining = out.value;
        while (remaining > 0) {
            Move* chosen = nullptr;
            std::vector<Move> candidates;
            for (NodeId x = 0; x < inst_->num_nodes() && !chosen; ++x) {
                auto mvs = moves(*cur, mask, x);
                for (Move& mv : mvs) {
                    if (mv.self) continue;
                    const int achieved =
                        (mv.mistake ? 1 : 0) + search(*mv.next, mv.child);
                    if (achieved != remaining) continue;
                    if (mv.mistake) {
                        candidates.clear();
                        candidates.push_back(std::move(mv));
                        chosen = &candidates.back();
                        break;
                    }
                    if (candidates.empty()) candidates.push_back(std::move(mv));
                }
            }
            if (!chosen) {
                if (candidates.empty())
                    throw InvariantViolationError(
                        "no branch achieves the computed worst case; the search is wrong");
                chosen = &candidates.front();
            }
            out.line.push_back({chosen->x, chosen->answer});
            remaining -= chosen->mistake ? 1 : 0;
            cur = std::move(chosen->next);
            mask = std::move(chosen->child);
        }
    }

    const Instance* inst_;
    bool bandit_;
    OracleLimits lim_;
    std::unordered_map<std::string, int> memo_;
    std::unordered_set<std::string> active_;
};

inline WorstCaseResult worst_case_mistakes(const Instance& inst, Setting setting,
                                           const OnlineLearner& learner,
                                           OracleLimits lim = {}) {
    return WorstCaseSearch(&inst, setting, lim).run(learner);
}

// Cross-checks the dimension recursion against the exhaustive game value.
// On the theory's claim these always match; a mismatch report carries a
// greedily minimized sub-class that still exhibits it.
struct CertifyReport {
    Setting setting = Setting::binary_full;
    DimensionKind kind = DimensionKind::binary_improvement;
    int dimension = -2;
    int game_value = -2;
    bool matches = false;
    std::string detail;
};

inline CertifyReport certify_dimension(const Instance& inst, Setting setting,
                                       OracleLimits lim = {}) {
    CertifyReport rep;
    rep.setting = setting;
    rep.kind = kind_for_setting(setting);

    DimensionSolver dims(&inst);
    MinimaxSolver game(&inst, setting, lim);
    rep.dimension = dims.dimension(rep.kind);
    rep.game_value = game.value();
    rep.matches = rep.dimension == rep.game_value;
    if (rep.matches) return rep;

    // Shrink the disagreeing class one hypothesis at a time.
    DynBitset mask = inst.full_mask();
    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (HypId h = mask.find_first(); h != -1; h = mask.find_next(h)) {
            DynBitset sub = mask;
            sub.reset(h);
            if (sub.none()) continue;
            VersionSpace vs(&inst, sub);
            if (dims.dimension(vs, rep.kind) != game.value(vs)) {
                mask = std::move(sub);
                shrunk = true;
                break;
            }
        }
    }
    rep.detail = "smallest disagreeing subclass:";
    for (HypId h = mask.find_first(); h != -1; h = mask.find_next(h))
        rep.detail += " " + inst.hclass.names[h];
    return rep;
}

}  // namespace olimp
