// Command-line front end: instance I/O, dimensions, game runs, the exact
// solver, dimension-vs-value certification, instance generation and corpus
// verification.
//
// Exit codes: 0 success (certify: values equal; verify: all rows satisfied),
//             1 a checked property is violated,
//             2 usage, parse or resource errors.

#include <cstdint>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "olimp/olimp.hpp"

namespace {

using namespace olimp;

std::unique_ptr<OnlineLearner> make_learner(const Instance* inst,
                                            std::shared_ptr<DimensionSolver> solver,
                                            const std::string& spec, Setting setting,
                                            uint64_t seed) {
    if (spec == "opt") return make_setting_learner(inst, solver, setting);
    if (spec == "binary-opt") return std::make_unique<OptimalBinaryLearner>(inst, solver);
    if (spec == "multiclass-opt") return std::make_unique<OptimalMulticlassLearner>(inst, solver);
    if (spec == "weighted-opt") return std::make_unique<OptimalWeightedLearner>(inst, solver);
    if (spec == "bandit-opt") return std::make_unique<OptimalBanditLearner>(inst, solver);
    if (spec == "reduction") {
        if (setting != Setting::multiclass_bandit)
            throw ModelError("the reduction learner plays the multiclass-bandit setting");
        return std::make_unique<BanditReductionLearner>(
            BanditReductionLearner::wrapping_multiclass(inst, solver));
    }
    if (spec == "baseline-soa")
        return std::make_unique<BaselineWrapper>(inst,
                                                 std::make_unique<SoaPointLearner>(inst, solver));
    if (spec == "random") return std::make_unique<RandomLearner>(inst, seed);
    if (spec.rfind("constant", 0) == 0) {
        LabelId y = kBottomLabel;
        if (auto pos = spec.find(':'); pos != std::string::npos) {
            auto it = inst->label_ids.find(spec.substr(pos + 1));
            if (it == inst->label_ids.end())
                throw ParseError("unknown label in '" + spec + "'");
            y = it->second;
        }
        return std::make_unique<ConstantLearner>(inst, y);
    }
    throw ParseError("unknown learner '" + spec +
                     "' (try: opt, binary-opt, multiclass-opt, weighted-opt, bandit-opt, "
                     "reduction, baseline-soa, constant[:label], random)");
}

std::unique_ptr<Adversary> make_adversary(const Instance* inst, const std::string& spec,
                                          Setting setting, uint64_t seed) {
    if (spec == "tree")
        return std::make_unique<TreeAdversary>(
            TreeAdversary::for_instance(*inst, kind_for_setting(setting)));
    if (spec == "random") return std::make_unique<RandomAdversary>(inst, setting, seed);
    if (spec.rfind("fixed", 0) == 0) {
        HypId target = 0;
        if (auto pos = spec.find(':'); pos != std::string::npos) {
            auto it = inst->hyp_ids.find(spec.substr(pos + 1));
            if (it == inst->hyp_ids.end())
                throw ParseError("unknown hypothesis in '" + spec + "'");
            target = it->second;
        }
        return std::make_unique<FixedHypothesisAdversary>(inst, target, seed);
    }
    throw ParseError("unknown adversary '" + spec + "' (try: tree, random, fixed[:hyp])");
}

Setting require_setting(const std::string& s) {
    auto parsed = parse_setting(s);
    if (!parsed)
        throw ParseError("unknown setting '" + s +
                         "' (binary, multiclass-full, multiclass-bandit, weighted-full)");
    return *parsed;
}

int cmd_dim(const std::string& file, const std::string& kind_name, const std::string& tree_out) {
    if (!tree_out.empty() && kind_name.empty())
        throw ParseError("--tree needs --kind to pick which certificate to write");
    Instance inst = load_instance(file);
    DimensionSolver solver(&inst);

    std::vector<DimensionKind> kinds;
    if (!kind_name.empty()) {
        auto k = parse_kind(kind_name);
        if (!k) throw ParseError("unknown dimension kind '" + kind_name + "'");
        kinds.push_back(*k);
    } else {
        kinds.push_back(DimensionKind::littlestone);
        for (Setting s : applicable_settings(inst)) kinds.push_back(kind_for_setting(s));
    }

    for (DimensionKind k : kinds) {
        int d = solver.dimension(k);
        std::cout << to_string(k) << " = " << d << "\n";
        if (!tree_out.empty() && !kind_name.empty()) {
            WitnessTree tree;
            if (d > 0) {
                auto found = find_shattered_tree(VersionSpace(&inst), k, d);
                if (!found)
                    throw InvariantViolationError(
                        "recursion reports depth " + std::to_string(d) +
                        " but no tree of that depth exists");
                tree = *found;
            }
            save_witness_tree(inst, tree, tree_out);
            std::cout << "witness tree -> " << tree_out << "\n";
        }
    }
    return 0;
}

int cmd_run(const std::string& file, const std::string& learner_spec,
            const std::string& adversary_spec, const std::string& setting_name, uint64_t seed,
            const std::string& out, int horizon, const std::string& tie, bool no_snapshots) {
    Instance inst = load_instance(file);
    Setting setting = require_setting(setting_name);
    auto solver = std::make_shared<DimensionSolver>(&inst);
    auto learner = make_learner(&inst, solver, learner_spec, setting, seed);
    auto adversary = make_adversary(&inst, adversary_spec, setting, seed);

    GameConfig cfg;
    cfg.setting = setting;
    cfg.record_snapshots = !no_snapshots;
    if (horizon > 0) cfg.horizon = horizon;
    if (tie == "seeded") {
        cfg.tie_policy = TiePolicy::seeded_random;
        cfg.tie_seed = seed;
    } else if (tie != "lex") {
        throw ParseError("tie policy must be 'lex' or 'seeded'");
    }

    Transcript tr = run_game(inst, *learner, *adversary, cfg);
    std::cout << "rounds=" << tr.rounds.size() << " mistakes=" << tr.total_mistakes
              << " witness=" << (tr.witness >= 0 ? inst.hclass.names[tr.witness] : "-") << "\n";
    if (!out.empty()) {
        save_transcript(inst, tr, out);
        std::cout << "transcript -> " << out << "\n";
    }

    auto violations = check_transcript(inst, tr);
    for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
    return violations.empty() ? 0 : 1;
}

int cmd_solve(const std::string& file, const std::string& setting_name) {
    Instance inst = load_instance(file);
    Setting setting = require_setting(setting_name);
    MinimaxSolver solver(&inst, setting);
    std::cout << "value=" << solver.value() << "\n";
    return 0;
}

int cmd_certify(const std::string& file, const std::string& setting_name) {
    Instance inst = load_instance(file);
    Setting setting = require_setting(setting_name);
    CertifyReport rep = certify_dimension(inst, setting);
    std::cout << "value=" << rep.game_value << " dim=" << rep.dimension << " "
              << (rep.matches ? "EQUAL" : "MISMATCH") << "\n";
    if (!rep.matches && !rep.detail.empty()) std::cout << rep.detail << "\n";
    return rep.matches ? 0 : 1;
}

int cmd_gen(int nodes, int degree, int labels, int hyps, bool weighted, uint64_t seed,
            const std::string& out) {
    GenParams p;
    p.num_nodes = nodes;
    p.max_degree = degree;
    p.num_labels = labels;
    p.num_hypotheses = hyps;
    p.weighted = weighted;
    p.seed = seed;
    Instance inst = generate_instance(p);
    if (out.empty()) {
        std::cout << instance_to_json(inst).dump(2) << "\n";
    } else {
        save_instance(inst, out);
        std::cout << "instance -> " << out << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& dir, const std::string& csv_out, const std::string& json_out) {
    RunReport report = verify_corpus(dir);
    std::cout << report_to_csv(report);
    for (const auto& p : report.problems) std::cerr << "problem: " << p << "\n";
    if (!csv_out.empty()) {
        std::ofstream f(csv_out);
        f << report_to_csv(report);
    }
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        f << report_to_json(report).dump(2) << "\n";
    }
    return report.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online learning with improving agents: dimensions, games, exact values"};
    app.require_subcommand(1);

    std::string file, kind_name, tree_out;
    auto* dim = app.add_subcommand("dim", "compute mistake-bound dimensions of an instance");
    dim->add_option("file", file, "instance JSON file")->required();
    dim->add_option("--kind", kind_name,
                    "littlestone | binary-improvement | multiclass-improvement | "
                    "bandit-improvement | weighted-improvement");
    dim->add_option("--tree", tree_out, "write the witness tree here (needs --kind)");

    std::string learner_spec = "opt", adversary_spec = "tree", setting_name = "binary";
    std::string run_out, tie = "lex";
    uint64_t seed = 1;
    int horizon = 0;
    bool no_snapshots = false;
    auto* run = app.add_subcommand("run", "play one game and print the mistake count");
    run->add_option("file", file, "instance JSON file")->required();
    run->add_option("--learner", learner_spec, "opt | binary-opt | multiclass-opt | weighted-opt"
                                               " | bandit-opt | reduction | baseline-soa |"
                                               " constant[:label] | random");
    run->add_option("--adversary", adversary_spec, "tree | random | fixed[:hypothesis]");
    run->add_option("--setting", setting_name,
                    "binary | multiclass-full | multiclass-bandit | weighted-full")
        ->required();
    run->add_option("--seed", seed, "seed for random learner/adversary/ties");
    run->add_option("--out", run_out, "write the transcript JSON here");
    run->add_option("--horizon", horizon, "round cap (default |H| * (dim+1))");
    run->add_option("--tie", tie, "agent tie-breaking: lex | seeded");
    run->add_flag("--no-snapshots", no_snapshots, "skip per-round dimension snapshots");

    auto* solve = app.add_subcommand("solve", "exact optimal mistake count of the game");
    solve->add_option("file", file, "instance JSON file")->required();
    solve->add_option("--setting", setting_name, "game setting")->required();

    auto* certify = app.add_subcommand("certify", "check dimension == exact game value");
    certify->add_option("file", file, "instance JSON file")->required();
    certify->add_option("--setting", setting_name, "game setting")->required();

    int g_nodes = 4, g_degree = 3, g_labels = 2, g_hyps = 8;
    bool g_weighted = false;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate a random instance (same seed, same bytes)");
    gen->add_option("--nodes", g_nodes, "number of nodes");
    gen->add_option("--degree", g_degree, "max |Delta(x)|, counting the node itself");
    gen->add_option("--labels", g_labels, "number of labels (>= 2)");
    gen->add_option("--hyps", g_hyps, "number of hypotheses");
    gen->add_flag("--weighted", g_weighted, "draw nonzero move costs");
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    std::string csv_out, json_out;
    auto* verify = app.add_subcommand("verify", "run the full pipeline over a corpus directory");
    verify->add_option("dir", file, "directory of instance JSON files")->required();
    verify->add_option("--csv", csv_out, "also write the CSV report here");
    verify->add_option("--json", json_out, "also write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*dim) return cmd_dim(file, kind_name, tree_out);
        if (*run)
            return cmd_run(file, learner_spec, adversary_spec, setting_name, seed, run_out,
                           horizon, tie, no_snapshots);
        if (*solve) return cmd_solve(file, setting_name);
        if (*certify) return cmd_certify(file, setting_name);
        if (*gen) return cmd_gen(g_nodes, g_degree, g_labels, g_hyps, g_weighted, seed, gen_out);
        if (*verify) return cmd_verify(file, csv_out, json_out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonRealizableError& e) {
        std::cerr << "non-realizable run: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
