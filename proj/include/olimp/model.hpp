#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "olimp/bitset.hpp"
#include "olimp/types.hpp"

namespace olimp {

// Directed graph of feasible agent moves. neighbors[x] lists Delta(x); the
// self-loop is always present with cost 0. costs[x] is parallel to
// neighbors[x]; an all-zero cost table is the unweighted case.
struct ImprovementGraph {
    std::vector<std::vector<NodeId>> neighbors;
    std::vector<std::vector<double>> costs;

    int num_nodes() const { return int(neighbors.size()); }

    bool has_edge(NodeId x, NodeId v) const {
        const auto& nb = neighbors[x];
        return std::find(nb.begin(), nb.end(), v) != nb.end();
    }

    double cost(NodeId x, NodeId v) const {
        const auto& nb = neighbors[x];
        for (size_t i = 0; i < nb.size(); ++i)
            if (nb[i] == v) return costs[x][i];
        throw ModelError("cost: node " + std::to_string(v) + " is not reachable from " +
                         std::to_string(x));
    }

    // Largest |Delta(x)|, counting the self-loop.
    int max_degree() const {
        size_t d = 0;
        for (const auto& nb : neighbors) d = std::max(d, nb.size());
        return int(d);
    }

    bool unweighted() const {
        for (const auto& cs : costs)
            for (double c : cs)
                if (c != 0.0) return false;
        return true;
    }
};

// Ordered label set. Values are strictly increasing, so label id order is
// preference order and id 0 is the bottom label.
struct LabelSpace {
    std::vector<std::string> names;
    std::vector<double> values;

    int size() const { return int(names.size()); }
    double value(LabelId y) const { return values[y]; }
    LabelId top() const { return LabelId(values.size()) - 1; }
};

struct Hypothesis {
    std::vector<LabelId> labels;  // node id -> label id; -1 marks "undefined"

    LabelId operator()(NodeId x) const { return labels[x]; }
};

struct HypothesisClass {
    std::vector<std::string> names;
    std::vector<Hypothesis> table;

    int size() const { return int(table.size()); }
};

// One self-contained problem: move graph, label values and hypothesis class,
// plus the indexes derived from them (name lookup and, per (node, label), the
// mask of hypotheses carrying that label there).
struct Instance {
    std::vector<std::string> node_names;
    ImprovementGraph graph;
    LabelSpace labels;
    HypothesisClass hclass;

    std::map<std::string, NodeId> node_ids;
    std::map<std::string, LabelId> label_ids;
    std::map<std::string, HypId> hyp_ids;
    // members_with[x][y]: hypotheses h with h(x) == y.
    std::vector<std::vector<DynBitset>> members_with;

    int num_nodes() const { return graph.num_nodes(); }
    int num_labels() const { return labels.size(); }
    int num_hypotheses() const { return hclass.size(); }

    DynBitset full_mask() const { return DynBitset(hclass.size(), true); }

    const DynBitset& label_mask(NodeId x, LabelId y) const { return members_with[x][y]; }

    // Rebuild name maps and label masks; call after any structural edit.
    void reindex() {
        node_ids.clear();
        label_ids.clear();
        hyp_ids.clear();
        for (NodeId i = 0; i < int(node_names.size()); ++i) node_ids[node_names[i]] = i;
        for (LabelId y = 0; y < labels.size(); ++y) label_ids[labels.names[y]] = y;
        for (HypId h = 0; h < hclass.size(); ++h) hyp_ids[hclass.names[h]] = h;
        members_with.assign(num_nodes(), std::vector<DynBitset>(labels.size(),
                                                                DynBitset(hclass.size())));
        for (HypId h = 0; h < hclass.size(); ++h)
            for (NodeId x = 0; x < num_nodes(); ++x) {
                LabelId y = hclass.table[h].labels[x];
                if (y >= 0 && y < labels.size()) members_with[x][y].set(h);
            }
    }
};

// Structural checks; returns one message per violation (empty means valid).
inline std::vector<std::string> validate(const Instance& inst) {
    std::vector<std::string> out;
    const int n = inst.num_nodes();
    const int k = inst.labels.size();

    if (int(inst.node_names.size()) != n)
        out.push_back("node name table does not match graph size");
    if (k < 2) out.push_back("label space needs at least two labels");
    for (LabelId y = 0; y + 1 < k; ++y)
        if (!(inst.labels.values[y] < inst.labels.values[y + 1]))
            out.push_back("label values must be strictly increasing at '" +
                          inst.labels.names[y + 1] + "'");

    {
        std::set<std::string> seen;
        for (const auto& nm : inst.node_names)
            if (!seen.insert(nm).second) out.push_back("duplicate node name '" + nm + "'");
        seen.clear();
        for (const auto& nm : inst.labels.names)
            if (!seen.insert(nm).second) out.push_back("duplicate label name '" + nm + "'");
        seen.clear();
        for (const auto& nm : inst.hclass.names)
            if (!seen.insert(nm).second) out.push_back("duplicate hypothesis name '" + nm + "'");
    }

    if (int(inst.graph.costs.size()) != n) {
        out.push_back("cost table does not match graph size");
        return out;
    }
    for (NodeId x = 0; x < n; ++x) {
        const auto& nb = inst.graph.neighbors[x];
        if (inst.graph.costs[x].size() != nb.size()) {
            out.push_back("cost row size mismatch at node '" + inst.node_names[x] + "'");
            continue;
        }
        bool self = false;
        std::set<NodeId> seen;
        for (size_t i = 0; i < nb.size(); ++i) {
            NodeId v = nb[i];
            double c = inst.graph.costs[x][i];
            if (v < 0 || v >= n) {
                out.push_back("edge from '" + inst.node_names[x] + "' to unknown node");
                continue;
            }
            if (!seen.insert(v).second)
                out.push_back("duplicate edge " + inst.node_names[x] + " -> " +
                              inst.node_names[v]);
            if (!(c >= 0.0) || !std::isfinite(c))
                out.push_back("negative or non-finite cost on " + inst.node_names[x] + " -> " +
                              inst.node_names[v]);
            if (v == x) {
                self = true;
                if (c != 0.0)
                    out.push_back("self-loop at '" + inst.node_names[x] + "' must cost 0");
            }
        }
        if (!self) out.push_back("missing self-loop at '" + inst.node_names[x] + "'");
    }

    for (HypId h = 0; h < inst.hclass.size(); ++h) {
        const auto& lab = inst.hclass.table[h].labels;
        if (int(lab.size()) != n) {
            out.push_back("hypothesis '" + inst.hclass.names[h] + "' has wrong arity");
            continue;
        }
        for (NodeId x = 0; x < n; ++x)
            if (lab[x] < 0 || lab[x] >= k)
                out.push_back("hypothesis '" + inst.hclass.names[h] + "' undefined on node '" +
                              inst.node_names[x] + "'");
    }
    return out;
}

// Remove moves no labeling can ever make profitable: a non-self edge (x, v)
// is useless when even the top label's value gain cannot exceed its cost.
// Idempotent; returns the number of removed edges.
inline int prune_useless_edges(Instance& inst) {
    const double gap = inst.labels.value(inst.labels.top()) - inst.labels.value(kBottomLabel);
    int removed = 0;
    for (NodeId x = 0; x < inst.num_nodes(); ++x) {
        auto& nb = inst.graph.neighbors[x];
        auto& cs = inst.graph.costs[x];
        std::vector<NodeId> nb2;
        std::vector<double> cs2;
        for (size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] != x && gap <= cs[i]) {
                ++removed;
                continue;
            }
            nb2.push_back(nb[i]);
            cs2.push_back(cs[i]);
        }
        nb = std::move(nb2);
        cs = std::move(cs2);
    }
    return removed;
}

}  // namespace olimp
