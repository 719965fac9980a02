#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "olimp/model.hpp"

namespace olimp {

// Deterministic random instances. The stream below is hand-rolled (splitmix64
// plus Lemire's bounded-multiply trick) instead of <random> because the
// distributions in <random> are free to differ between standard libraries,
// and generated files must be byte-identical for a given seed everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound).
    uint64_t below(uint64_t bound) {
        // Multiply-shift with a rejection pass keeps the draw exactly uniform.
        for (;;) {
            uint64_t x = next();
            __uint128_t m = __uint128_t(x) * bound;
            uint64_t lo = uint64_t(m);
            if (lo >= bound || lo >= uint64_t(-bound) % bound) return uint64_t(m >> 64);
        }
    }

private:
    uint64_t state_;
};

struct GenParams {
    int num_nodes = 4;
    int max_degree = 3;  // bound on |Delta(x)|, counting the node itself
    int num_labels = 2;
    int num_hypotheses = 8;
    bool weighted = false;
    uint64_t seed = 1;
};

// Draws a bounded-degree improvement graph and an explicit hypothesis class.
// Realizability is the adversaries' concern, not the generator's: any class
// works, so nothing here needs rejection beyond hypothesis dedup.
inline Instance generate_instance(const GenParams& p) {
    if (p.num_nodes < 1 || p.num_labels < 2 || p.num_hypotheses < 1 || p.max_degree < 1)
        throw ModelError("generator needs >=1 node, >=2 labels, >=1 hypothesis, degree >=1");

    SplitMix64 rng(p.seed);
    Instance inst;

    for (int i = 0; i < p.num_nodes; ++i) inst.node_names.push_back("x" + std::to_string(i));

    inst.labels.names.clear();
    inst.labels.values.clear();
    for (int j = 0; j < p.num_labels; ++j) {
        inst.labels.names.push_back("z" + std::to_string(j + 1));
        inst.labels.values.push_back(double(j));
    }

    const int n = p.num_nodes;
    inst.graph.neighbors.assign(n, {});
    inst.graph.costs.assign(n, {});
    for (NodeId x = 0; x < n; ++x) {
        // The node itself always belongs to Delta(x), at cost zero.
        std::vector<NodeId> others;
        for (NodeId v = 0; v < n; ++v)
            if (v != x) others.push_back(v);

        int extra = int(rng.below(uint64_t(p.max_degree)));  // 0 .. max_degree-1
        if (extra > int(others.size())) extra = int(others.size());
        // Partial Fisher-Yates: the first `extra` slots become the sample.
        for (int i = 0; i < extra; ++i) {
            int j = i + int(rng.below(uint64_t(others.size() - i)));
            std::swap(others[i], others[j]);
        }
        others.resize(extra);
        others.push_back(x);  // the node itself, at cost zero
        std::sort(others.begin(), others.end());

        for (NodeId v : others) {
            double c = 0.0;
            if (p.weighted && v != x) {
                // Quarter-step costs up to just past the largest label gain,
                // so some edges are cheap, some priced out entirely.
                int steps = 4 * (p.num_labels - 1) + 2;
                c = double(rng.below(uint64_t(steps + 1))) / 4.0;
            }
            inst.graph.neighbors[x].push_back(v);
            inst.graph.costs[x].push_back(c);
        }
    }

    // Distinct labelings, uniform over the k^n cube. When the cube is small,
    // cap the class at its size rather than spin forever.
    double cube = 1.0;
    for (int i = 0; i < n; ++i) cube *= double(p.num_labels);
    int want = p.num_hypotheses;
    if (cube < double(want)) want = int(cube);

    std::set<std::vector<LabelId>> seen;
    while (int(seen.size()) < want) {
        std::vector<LabelId> lab(n);
        for (NodeId v = 0; v < n; ++v) lab[v] = LabelId(rng.below(uint64_t(p.num_labels)));
        seen.insert(std::move(lab));
    }
    int idx = 0;
    for (const auto& lab : seen) {
        inst.hclass.names.push_back("h" + std::to_string(idx++));
        inst.hclass.table.push_back(Hypothesis{lab});
    }

    // Edges priced beyond the largest label gain can never be taken; every
    // consumer assumes they are gone, so drop them here too.
    prune_useless_edges(inst);
    inst.reindex();
    return inst;
}

}  // namespace olimp
