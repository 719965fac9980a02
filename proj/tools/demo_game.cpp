// A guided tour on one small instance: compute every dimension, let the
// optimal learner play the forcing adversary, and show that improvement moves
// make the class easier than its classic mistake bound suggests.

#include <iostream>

#include "olimp/olimp.hpp"

using namespace olimp;

namespace {

// n pairs (x_i, x_i'); an agent at x_i can move to x_i', nobody moves back.
// Every hypothesis gives x_i' the good label, so the class shatters all the
// x_i in the classic sense yet never forces a single improvement-game
// mistake: publish the good label on each x_i' and every agent moves there.
Instance improvable_pairs(int n) {
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

void play(const Instance& inst, Setting setting) {
    auto solver = std::make_shared<DimensionSolver>(&inst);
    auto learner = make_setting_learner(&inst, solver, setting);
    TreeAdversary adversary = TreeAdversary::for_instance(inst, kind_for_setting(setting));

    GameConfig cfg;
    cfg.setting = setting;
    Transcript tr = run_game(inst, *learner, adversary, cfg);

    std::cout << "  " << to_string(setting) << ": " << learner->name() << " vs "
              << adversary.name() << " -> " << tr.total_mistakes << " mistakes in "
              << tr.rounds.size() << " rounds";
    if (tr.witness >= 0) std::cout << " (consistent with " << inst.hclass.names[tr.witness] << ")";
    std::cout << "\n";
    for (size_t i = 0; i < tr.rounds.size(); ++i) {
        const RoundRecord& r = tr.rounds[i];
        std::cout << "    round " << i + 1 << ": x=" << inst.node_names[r.x]
                  << " agent->" << inst.node_names[r.final_node]
                  << " predicted=" << inst.labels.names[r.predicted]
                  << (r.mistake ? " MISTAKE" : " ok") << " dim=" << r.dim_after << "\n";
    }
}

}  // namespace

int main() {
    Instance inst = improvable_pairs(3);
    DimensionSolver solver(&inst);

    std::cout << "instance: " << inst.num_nodes() << " nodes, " << inst.num_hypotheses()
              << " hypotheses\n";
    std::cout << "  littlestone            = "
              << solver.dimension(DimensionKind::littlestone) << "\n";
    std::cout << "  binary-improvement     = "
              << solver.dimension(DimensionKind::binary_improvement) << "\n";
    std::cout << "  bandit-improvement     = "
              << solver.dimension(DimensionKind::bandit_improvement) << "\n";

    MinimaxSolver exact(&inst, Setting::binary_full);
    std::cout << "  exact game value       = " << exact.value() << "\n\n";

    std::cout << "games on the forcing adversary:\n";
    play(inst, Setting::binary_full);
    play(inst, Setting::multiclass_bandit);

    std::cout << "\nclassic online learning would pay " << solver.dimension(DimensionKind::littlestone)
              << " mistakes here; letting agents improve costs none.\n";
    return 0;
}
