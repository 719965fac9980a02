#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace olimp {

// Dense indices into the per-instance node / label / hypothesis tables.
// Names only exist at the I/O boundary.
using NodeId = int;
using LabelId = int;
using HypId = int;

// Least-valued label (z1 in transcripts). Label ids are assigned in strictly
// increasing order of value, so id 0 is always the bottom label.
inline constexpr LabelId kBottomLabel = 0;

// Which game is being played: feedback protocol plus cost regime.
enum class Setting {
    binary_full,        // two labels, costless moves, label revealed
    multiclass_full,    // k labels, costless moves, label revealed
    multiclass_bandit,  // k labels, costless moves, only the mistake bit
    weighted_full,      // k labels, move costs, label revealed
};

// Mistake-tree family selector; each family fixes the edge structure of the
// trees whose maximum shattered depth is the corresponding dimension.
enum class DimensionKind {
    littlestone,            // two sibling labels per node, no agent movement
    binary_improvement,     // binary labels, edges cover every reachable node
    multiclass_improvement, // k labels, moved-to nodes get bottom or a label pair
    bandit_improvement,     // disagreement-shattered trees
    weighted_improvement,   // label pairs filtered by move costs
};

// How the engine resolves ties between equally profitable agent moves.
enum class TiePolicy {
    lexicographic_min,  // smallest node id; deterministic default
    seeded_random,
    adversarial,        // delegated to the adversary (or branched in search)
};

constexpr DimensionKind kind_for_setting(Setting s) {
    switch (s) {
        case Setting::binary_full: return DimensionKind::binary_improvement;
        case Setting::multiclass_full: return DimensionKind::multiclass_improvement;
        case Setting::multiclass_bandit: return DimensionKind::bandit_improvement;
        case Setting::weighted_full: return DimensionKind::weighted_improvement;
    }
    return DimensionKind::multiclass_improvement;
}

constexpr bool bandit_feedback(Setting s) { return s == Setting::multiclass_bandit; }

inline std::string to_string(Setting s) {
    switch (s) {
        case Setting::binary_full: return "binary";
        case Setting::multiclass_full: return "multiclass-full";
        case Setting::multiclass_bandit: return "multiclass-bandit";
        case Setting::weighted_full: return "weighted-full";
    }
    return "?";
}

inline std::string to_string(DimensionKind k) {
    switch (k) {
        case DimensionKind::littlestone: return "littlestone";
        case DimensionKind::binary_improvement: return "binary-improvement";
        case DimensionKind::multiclass_improvement: return "multiclass-improvement";
        case DimensionKind::bandit_improvement: return "bandit-improvement";
        case DimensionKind::weighted_improvement: return "weighted-improvement";
    }
    return "?";
}

inline std::string to_string(TiePolicy p) {
    switch (p) {
        case TiePolicy::lexicographic_min: return "lexicographic-min";
        case TiePolicy::seeded_random: return "seeded-random";
        case TiePolicy::adversarial: return "adversarial";
    }
    return "?";
}

inline std::optional<Setting> parse_setting(const std::string& s) {
    if (s == "binary") return Setting::binary_full;
    if (s == "multiclass-full") return Setting::multiclass_full;
    if (s == "multiclass-bandit") return Setting::multiclass_bandit;
    if (s == "weighted-full") return Setting::weighted_full;
    return std::nullopt;
}

inline std::optional<DimensionKind> parse_kind(const std::string& s) {
    if (s == "littlestone") return DimensionKind::littlestone;
    if (s == "binary-improvement") return DimensionKind::binary_improvement;
    if (s == "multiclass-improvement") return DimensionKind::multiclass_improvement;
    if (s == "bandit-improvement") return DimensionKind::bandit_improvement;
    if (s == "weighted-improvement") return DimensionKind::weighted_improvement;
    return std::nullopt;
}

// What the engine hands the learner at the end of a round. The final node is
// always present; the true label is present only in full-feedback runs.
struct Feedback {
    NodeId final_node = -1;
    bool mistake = false;
    std::optional<LabelId> true_label;
};

// The environment's choice for one round. Full-feedback adversaries select a
// label; bandit adversaries only declare whether the prediction was wrong.
struct EnvAnswer {
    bool mistake = false;
    std::optional<LabelId> label;
};

// Malformed input or an operation used outside its domain.
struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File / JSON contents that cannot be decoded into the model.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A run left the realizable regime: no hypothesis is consistent any more.
struct NonRealizableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured cap (memo entries, search steps, pool size) was exceeded.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal guarantee failed; indicates a bug, not bad input.
struct InvariantViolationError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace olimp
