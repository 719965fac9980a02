#pragma once

#include <algorithm>
#include <filesystem>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "olimp/adversary.hpp"
#include "olimp/engine.hpp"
#include "olimp/json_io.hpp"
#include "olimp/optimal_learners.hpp"
#include "olimp/oracle.hpp"

namespace olimp {

// One corpus-verification row: the setting's own learner runs against the
// tree-following adversary, and the mistake count is checked against the
// matching dimension (and, when the instance is small enough to solve
// exactly, against the game value).
struct ReportRow {
    std::string instance_id;
    Setting setting = Setting::binary_full;
    int ldim = -1;
    int dim = -1;
    int mistakes = -1;
    int oracle_value = -1;  // -1: skipped (instance beyond exact-solver limits)
    bool bound_ok = false;
};

struct RunReport {
    std::vector<ReportRow> rows;
    std::vector<std::string> problems;  // transcript re-check violations etc.

    bool all_ok() const {
        if (!problems.empty()) return false;
        for (const auto& r : rows)
            if (!r.bound_ok) return false;
        return !rows.empty();
    }
};

inline std::unique_ptr<OnlineLearner> make_setting_learner(
    const Instance* inst, std::shared_ptr<DimensionSolver> solver, Setting s) {
    switch (s) {
        case Setting::binary_full:
            return std::make_unique<OptimalBinaryLearner>(inst, solver);
        case Setting::multiclass_full:
            return std::make_unique<OptimalMulticlassLearner>(inst, solver);
        case Setting::multiclass_bandit:
            return std::make_unique<OptimalBanditLearner>(inst, solver);
        case Setting::weighted_full:
            return std::make_unique<OptimalWeightedLearner>(inst, solver);
    }
    throw ModelError("unknown setting");
}

inline std::vector<Setting> applicable_settings(const Instance& inst) {
    std::vector<Setting> out;
    if (inst.graph.unweighted()) {
        if (inst.num_labels() == 2) out.push_back(Setting::binary_full);
        out.push_back(Setting::multiclass_full);
        out.push_back(Setting::multiclass_bandit);
    }
    out.push_back(Setting::weighted_full);
    return out;
}

// Full pipeline on one file: dimensions, a played-out game per applicable
// setting, the exact game value when feasible, and a transcript re-check.
inline void verify_instance(const std::string& path, RunReport& report) {
    const std::string id = std::filesystem::path(path).stem().string();
    Instance inst = load_instance(path);
    auto solver = std::make_shared<DimensionSolver>(&inst);

    for (Setting s : applicable_settings(inst)) {
        ReportRow row;
        row.instance_id = id;
        row.setting = s;
        row.ldim = solver->dimension(DimensionKind::littlestone);
        const DimensionKind kind = kind_for_setting(s);
        row.dim = solver->dimension(kind);

        auto learner = make_setting_learner(&inst, solver, s);
        TreeAdversary adversary = TreeAdversary::for_instance(inst, kind);
        GameConfig cfg;
        cfg.setting = s;
        Transcript tr = run_game(inst, *learner, adversary, cfg);
        row.mistakes = tr.total_mistakes;

        for (const auto& v : check_transcript(inst, tr))
            report.problems.push_back(id + " [" + to_string(s) + "]: " + v);

        try {
            MinimaxSolver oracle(&inst, s);
            row.oracle_value = oracle.value();
        } catch (const ResourceLimitError&) {
            row.oracle_value = -1;  // too large for the exact solver; skip
        }

        row.bound_ok = row.mistakes <= row.dim &&
                       (row.oracle_value < 0 || row.oracle_value == row.dim);
        report.rows.push_back(std::move(row));
    }
}

// Runs every *.json in the directory, fanned out across workers. Rows come
// back in (file, setting) order regardless of scheduling.
inline RunReport verify_corpus(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ParseError("no .json instances under '" + dir + "'");

    std::vector<std::future<RunReport>> parts;
    for (const auto& f : files)
        parts.push_back(std::async(std::launch::async, [f] {
            RunReport part;
            try {
                verify_instance(f, part);
            } catch (const std::exception& e) {
                part.problems.push_back(std::filesystem::path(f).stem().string() +
                                        ": " + e.what());
            }
            return part;
        }));

    RunReport report;
    for (auto& p : parts) {
        RunReport part = p.get();
        for (auto& r : part.rows) report.rows.push_back(std::move(r));
        for (auto& m : part.problems) report.problems.push_back(std::move(m));
    }
    return report;
}

inline std::string report_to_csv(const RunReport& report) {
    std::ostringstream out;
    out << "instance,setting,ldim,dim,mistakes,oracle_value,bound_satisfied\n";
    for (const auto& r : report.rows) {
        out << r.instance_id << ',' << to_string(r.setting) << ',' << r.ldim << ',' << r.dim
            << ',' << r.mistakes << ',';
        if (r.oracle_value >= 0) out << r.oracle_value;
        out << ',' << (r.bound_ok ? "yes" : "no") << '\n';
    }
    return out.str();
}

inline ojson report_to_json(const RunReport& report) {
    ojson j;
    j["rows"] = ojson::array();
    for (const auto& r : report.rows) {
        ojson e;
        e["instance"] = r.instance_id;
        e["setting"] = to_string(r.setting);
        e["ldim"] = r.ldim;
        e["dim"] = r.dim;
        e["mistakes"] = r.mistakes;
        if (r.oracle_value >= 0)
            e["oracle_value"] = r.oracle_value;
        else
            e["oracle_value"] = nullptr;
        e["bound_satisfied"] = r.bound_ok;
        j["rows"].push_back(std::move(e));
    }
    j["problems"] = report.problems;
    j["all_ok"] = report.all_ok();
    return j;
}

}  // namespace olimp
