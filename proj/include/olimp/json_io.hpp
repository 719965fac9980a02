#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "olimp/engine.hpp"
#include "olimp/model.hpp"
#include "olimp/trees.hpp"

// All file formats live here; nothing else in the library touches JSON.
// Output goes through ordered_json with fields emitted in a fixed order so
// that equal inputs serialize to identical bytes.

namespace olimp {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Instance files
//
//   {"nodes": ["a", ...],
//    "edges": [{"from": "a", "to": "b", "cost": 1.5}, ...],
//    "labels": [{"name": "z1", "value": 0.0}, ...],
//    "hypotheses": [{"name": "h0", "labeling": {"a": "z1", ...}}, ...]}
//
// Self-loops may be omitted; they are added with cost 0 on load. Edges priced
// beyond the top label's gain are dropped on load, since no labeling can make
// an agent take them.
// ---------------------------------------------------------------------------

inline Instance instance_from_json(const nlohmann::json& j) {
    Instance inst;
    try {
        for (const auto& n : j.at("nodes")) inst.node_names.push_back(n.get<std::string>());

        for (const auto& l : j.at("labels")) {
            inst.labels.names.push_back(l.at("name").get<std::string>());
            inst.labels.values.push_back(l.at("value").get<double>());
        }

        std::map<std::string, NodeId> node_ids;
        for (NodeId i = 0; i < int(inst.node_names.size()); ++i)
            node_ids[inst.node_names[i]] = i;
        auto node_of = [&](const std::string& name) {
            auto it = node_ids.find(name);
            if (it == node_ids.end()) throw ParseError("unknown node '" + name + "'");
            return it->second;
        };
        std::map<std::string, LabelId> label_ids;
        for (LabelId y = 0; y < int(inst.labels.names.size()); ++y)
            label_ids[inst.labels.names[y]] = y;

        const int n = int(inst.node_names.size());
        inst.graph.neighbors.assign(n, {});
        inst.graph.costs.assign(n, {});
        for (const auto& e : j.at("edges")) {
            NodeId from = node_of(e.at("from").get<std::string>());
            NodeId to = node_of(e.at("to").get<std::string>());
            double cost = e.contains("cost") ? e.at("cost").get<double>() : 0.0;
            inst.graph.neighbors[from].push_back(to);
            inst.graph.costs[from].push_back(cost);
        }
        for (NodeId x = 0; x < n; ++x) {
            if (!inst.graph.has_edge(x, x)) {
                inst.graph.neighbors[x].push_back(x);
                inst.graph.costs[x].push_back(0.0);
            }
        }

        for (const auto& h : j.at("hypotheses")) {
            inst.hclass.names.push_back(h.at("name").get<std::string>());
            Hypothesis hyp;
            hyp.labels.assign(n, -1);
            for (const auto& [node, label] : h.at("labeling").items()) {
                auto it = label_ids.find(label.get<std::string>());
                if (it == label_ids.end())
                    throw ParseError("unknown label '" + label.get<std::string>() + "'");
                hyp.labels[node_of(node)] = it->second;
            }
            inst.hclass.table.push_back(std::move(hyp));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed instance file: ") + e.what());
    }

    inst.reindex();
    if (auto problems = validate(inst); !problems.empty()) {
        std::string msg = "invalid instance:";
        for (const auto& p : problems) msg += "\n  - " + p;
        throw ParseError(msg);
    }
    prune_useless_edges(inst);
    return inst;
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("cannot parse '" + path + "': " + e.what());
    }
    return instance_from_json(j);
}

inline ojson instance_to_json(const Instance& inst) {
    ojson j;
    j["nodes"] = ojson::array();
    for (const auto& n : inst.node_names) j["nodes"].push_back(n);

    j["edges"] = ojson::array();
    for (NodeId x = 0; x < inst.num_nodes(); ++x)
        for (size_t i = 0; i < inst.graph.neighbors[x].size(); ++i) {
            ojson e;
            e["from"] = inst.node_names[x];
            e["to"] = inst.node_names[inst.graph.neighbors[x][i]];
            e["cost"] = inst.graph.costs[x][i];
            j["edges"].push_back(std::move(e));
        }

    j["labels"] = ojson::array();
    for (LabelId y = 0; y < inst.num_labels(); ++y) {
        ojson l;
        l["name"] = inst.labels.names[y];
        l["value"] = inst.labels.values[y];
        j["labels"].push_back(std::move(l));
    }

    j["hypotheses"] = ojson::array();
    for (HypId h = 0; h < inst.num_hypotheses(); ++h) {
        ojson e;
        e["name"] = inst.hclass.names[h];
        ojson lab;
        for (NodeId x = 0; x < inst.num_nodes(); ++x)
            lab[inst.node_names[x]] = inst.labels.names[inst.hclass.table[h].labels[x]];
        e["labeling"] = std::move(lab);
        j["hypotheses"].push_back(std::move(e));
    }
    return j;
}

inline void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << instance_to_json(inst).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Transcript files
//
//   {"rounds": [{"x": _, "published": {node: label}, "v": _, "prediction": _,
//                "feedback": _, "mistake": bool, "dim": int}, ...],
//    "mistakes": int, "witness_hypothesis": name, "meta": {...}}
//
// "feedback" is the revealed label under full feedback and the mistake bit in
// the bandit setting, where no label ever reaches the learner.
// ---------------------------------------------------------------------------

inline ojson transcript_to_json(const Instance& inst, const Transcript& tr) {
    ojson j;
    j["rounds"] = ojson::array();
    for (const RoundRecord& r : tr.rounds) {
        ojson e;
        e["x"] = inst.node_names[r.x];
        ojson pub;
        for (size_t i = 0; i < r.pub.domain.size(); ++i)
            pub[inst.node_names[r.pub.domain[i]]] = inst.labels.names[r.pub.labels[i]];
        e["published"] = std::move(pub);
        e["v"] = inst.node_names[r.final_node];
        e["prediction"] = inst.labels.names[r.predicted];
        if (r.revealed_label)
            e["feedback"] = inst.labels.names[*r.revealed_label];
        else
            e["feedback"] = r.mistake;
        e["mistake"] = r.mistake;
        e["dim"] = r.dim_after;
        j["rounds"].push_back(std::move(e));
    }
    j["mistakes"] = tr.total_mistakes;
    if (tr.witness >= 0)
        j["witness_hypothesis"] = inst.hclass.names[tr.witness];
    else
        j["witness_hypothesis"] = nullptr;

    ojson meta;
    meta["setting"] = to_string(tr.setting);
    meta["learner"] = tr.learner_name;
    meta["adversary"] = tr.adversary_name;
    meta["tie_policy"] = to_string(tr.tie_policy);
    meta["tie_seed"] = tr.tie_seed;
    meta["initial_dim"] = tr.initial_dim;
    meta["horizon"] = tr.horizon_used;
    meta["shrinks_on_mistake"] = tr.learner_shrinks_on_mistake;
    j["meta"] = std::move(meta);
    return j;
}

inline void save_transcript(const Instance& inst, const Transcript& tr, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << transcript_to_json(inst, tr).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Witness trees: {"root": node, "branches": [{"node": _, "label": _,
//                 "child": {...}}]}; a leaf is {} (its root is unused).
// ---------------------------------------------------------------------------

inline ojson witness_tree_to_json(const Instance& inst, const WitnessTree& t) {
    ojson j;
    if (t.leaf()) return ojson::object();
    j["root"] = inst.node_names[t.root];
    j["branches"] = ojson::array();
    for (const auto& b : t.branches) {
        ojson e;
        e["node"] = inst.node_names[b.node];
        e["label"] = inst.labels.names[b.label];
        e["child"] = witness_tree_to_json(inst, b.child);
        j["branches"].push_back(std::move(e));
    }
    return j;
}

inline void save_witness_tree(const Instance& inst, const WitnessTree& t,
                              const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << witness_tree_to_json(inst, t).dump(2) << '\n';
}

}  // namespace olimp
