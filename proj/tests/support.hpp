#pragma once

// Hand-checkable fixtures shared by the unit and acceptance tests. Expected
// dimensions and game values for them are frozen in the tests from three
// independent computations: the memoized recursion, brute-force tree
// enumeration, and the exact game solver.

#include <string>
#include <vector>

#include "olimp/generator.hpp"
#include "olimp/model.hpp"

namespace fixtures {

using namespace olimp;

// Chain graph a -> b (plus self-loops), k labels valued 0..k-1, and the FULL
// class of all k^2 labelings.
inline Instance full_pair(int k) {
    Instance in;
    in.node_names = {"a", "b"};
    in.graph.neighbors = {{0, 1}, {1}};
    in.graph.costs = {{0.0, 0.0}, {0.0}};
    for (int j = 0; j < k; ++j) {
        in.labels.names.push_back("z" + std::to_string(j + 1));
        in.labels.values.push_back(double(j));
    }
    for (LabelId a = 0; a < k; ++a)
        for (LabelId b = 0; b < k; ++b) {
            in.hclass.names.push_back("h" + std::to_string(a) + std::to_string(b));
            in.hclass.table.push_back(Hypothesis{{a, b}});
        }
    in.reindex();
    return in;
}

// full_pair(2): binary, both nodes, all four labelings. Every dimension and
// the game value equal 2.
inline Instance full_binary_pair() { return full_pair(2); }

// full_pair(3) with cost(a,b) = 1.5: labels z1, z2 cannot pay for the move,
// so Y_{a,b} = {z1, z2} and only z3 lures an agent from a to b.
inline Instance priced_k3_pair() {
    Instance in = full_pair(3);
    in.graph.costs = {{0.0, 1.5}, {0.0}};
    in.reindex();
    return in;
}

// n independent pairs (x_i, x_i'): an agent at x_i may move to x_i', nobody
// leaves x_i'. Every hypothesis labels each x_i' with the good label; the
// x_i labels range over all 2^n patterns. The class costs n mistakes in
// classic online learning but none once agents can improve: publish the good
// label on x_i' and the agent walks away from the only uncertain node.
inline Instance improvable_pairs(int n) {
    Instance in;
    for (int i = 0; i < n; ++i) {
        in.node_names.push_back("x" + std::to_string(i));
        in.node_names.push_back("x" + std::to_string(i) + "'");
    }
    const int N = 2 * n;
    in.graph.neighbors.assign(N, {});
    in.graph.costs.assign(N, {});
    for (int i = 0; i < n; ++i) {
        in.graph.neighbors[2 * i] = {2 * i, 2 * i + 1};
        in.graph.costs[2 * i] = {0.0, 0.0};
        in.graph.neighbors[2 * i + 1] = {2 * i + 1};
        in.graph.costs[2 * i + 1] = {0.0};
    }
    in.labels.names = {"z1", "z2"};
    in.labels.values = {0.0, 1.0};
    for (int m = 0; m < (1 << n); ++m) {
        std::vector<LabelId> lab(N, 1);
        for (int i = 0; i < n; ++i) lab[2 * i] = (m >> i) & 1;
        in.hclass.names.push_back("h" + std::to_string(m));
        in.hclass.table.push_back(Hypothesis{lab});
    }
    in.reindex();
    return in;
}

// Deterministic pseudo-random instance stream for property tests.
inline Instance random_instance(uint64_t seed, int max_nodes = 5, int labels = 2,
                                int max_hyps = 32, bool weighted = false) {
    GenParams p;
    p.seed = seed;
    p.num_nodes = 2 + int(seed % uint64_t(max_nodes - 1));
    p.max_degree = 3;
    p.num_labels = labels;
    p.num_hypotheses = 2 + int((seed * 7) % uint64_t(max_hyps - 1));
    p.weighted = weighted;
    return generate_instance(p);
}

}  // namespace fixtures
