// Acceptance gate for the library: eight end-to-end guarantees, one line of
// output each. Every numeric tolerance is pinned right here; everything not
// mentioned as a tolerance is an exact integer comparison.

#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "olimp/olimp.hpp"

#include "support.hpp"

using namespace olimp;

namespace {

constexpr double kDecayTol = 1e-9;   // reduction bound and weight-decay caps
constexpr double kLog2Tol = 1e-12;   // littlestone vs log2 comparison

int failures = 0;

void report(int number, const std::string& what, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << number << ". " << what;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
}

void criterion(int number, const std::string& what,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("unexpected exception: ") + e.what();
    }
    report(number, what, ok, detail);
}

Instance small_instance(uint64_t seed, int labels, bool weighted) {
    GenParams p;
    p.num_nodes = 2 + int(seed % 5);            // up to 6 nodes
    p.max_degree = 3;                           // improvement sets of size <= 3
    p.num_labels = labels;
    p.num_hypotheses = 2 + int((seed * 7) % 31);  // up to 32 hypotheses
    p.weighted = weighted;
    p.seed = seed;
    return generate_instance(p);
}

bool game_value_matches(const Instance& in, Setting setting, DimensionKind kind,
                        std::string& detail, uint64_t seed) {
    DimensionSolver solver(&in);
    const int dim = solver.dimension(kind);
    const int value = MinimaxSolver(&in, setting).value();
    if (value == dim) return true;
    std::ostringstream s;
    s << "seed " << seed << " " << to_string(setting) << ": value " << value << " vs dimension "
      << dim;
    detail = s.str();
    return false;
}

}  // namespace

int main() {
    criterion(1, "game value equals the binary dimension and optimal binary play achieves it",
              [](std::string& detail) {
                  int checked = 0;
                  for (uint64_t seed = 1; seed <= 200; ++seed) {
                      Instance in = small_instance(seed, 2, false);
                      if (!game_value_matches(in, Setting::binary_full,
                                              DimensionKind::binary_improvement, detail, seed))
                          return false;
                      auto solver = std::make_shared<DimensionSolver>(&in);
                      const int dim = solver->dimension(DimensionKind::binary_improvement);
                      OptimalBinaryLearner learner(&in, solver);
                      const int worst =
                          worst_case_mistakes(in, Setting::binary_full, learner).value;
                      if (worst != dim) {
                          detail = "seed " + std::to_string(seed) + ": optimal learner loses " +
                                   std::to_string(worst) + " vs dimension " + std::to_string(dim);
                          return false;
                      }
                      ++checked;
                  }
                  detail = std::to_string(checked) + " instances, all exact";
                  return checked >= 200;
              });

    criterion(2, "game value equals the three-label dimensions under full, bandit, and priced feedback",
              [](std::string& detail) {
                  int checked = 0;
                  for (uint64_t seed = 1; seed <= 100; ++seed) {
                      Instance in = small_instance(seed, 3, false);
                      if (!game_value_matches(in, Setting::multiclass_full,
                                              DimensionKind::multiclass_improvement, detail, seed))
                          return false;
                      if (!game_value_matches(in, Setting::multiclass_bandit,
                                              DimensionKind::bandit_improvement, detail, seed))
                          return false;
                      checked += 2;
                  }
                  for (uint64_t seed = 101; seed <= 200; ++seed) {
                      Instance in = small_instance(seed, 3, true);
                      if (!game_value_matches(in, Setting::weighted_full,
                                              DimensionKind::weighted_improvement, detail, seed))
                          return false;
                      ++checked;
                  }
                  detail = std::to_string(checked) + " comparisons, all exact";
                  return checked >= 300;
              });

    criterion(3, "the no-movement wrapper tracks its inner learner mistake for mistake",
              [](std::string& detail) {
                  int checked = 0;
                  for (uint64_t seed = 1; seed <= 50; ++seed) {
                      Instance in = small_instance(seed, 2 + int(seed % 2), false);
                      auto solver = std::make_shared<DimensionSolver>(&in);
                      const HypId target = HypId(seed % uint64_t(in.num_hypotheses()));
                      const Hypothesis& truth = in.hclass.table[target];

                      SplitMix64 rng(seed * 977);
                      std::vector<NodeId> stream(25);
                      for (NodeId& x : stream) x = NodeId(rng.below(uint64_t(in.num_nodes())));

                      SoaPointLearner direct(&in, solver);
                      int direct_mistakes = 0;
                      for (NodeId x : stream) {
                          const LabelId pred = direct.predict(x);
                          if (pred != truth(x)) {
                              ++direct_mistakes;
                              direct.update(x, truth(x));
                          }
                      }

                      BaselineWrapper wrapped(&in,
                                              std::make_unique<SoaPointLearner>(&in, solver));
                      FixedHypothesisAdversary adv(&in, target, seed);
                      adv.set_nodes(stream);
                      GameConfig cfg;
                      cfg.setting = Setting::multiclass_full;
                      cfg.record_snapshots = false;
                      cfg.horizon = int(stream.size());  // play out the whole script
                      Transcript tr = run_game(in, wrapped, adv, cfg);

                      if (tr.total_mistakes != direct_mistakes) {
                          detail = "seed " + std::to_string(seed) + ": wrapped " +
                                   std::to_string(tr.total_mistakes) + " vs direct " +
                                   std::to_string(direct_mistakes);
                          return false;
                      }
                      ++checked;
                  }
                  detail = std::to_string(checked) + " streams, mistake counts identical";
                  return checked >= 50;
              });

    criterion(4, "the improvable-pairs family separates improvement from littlestone learning",
              [](std::string& detail) {
                  for (int n = 1; n <= 5; ++n) {
                      Instance in = fixtures::improvable_pairs(n);
                      auto solver = std::make_shared<DimensionSolver>(&in);
                      const int ildim = solver->dimension(DimensionKind::binary_improvement);
                      const int ldim = solver->dimension(DimensionKind::littlestone);
                      if (ildim != 0 || ldim != n) {
                          detail = "n=" + std::to_string(n) + ": improvement " +
                                   std::to_string(ildim) + ", littlestone " + std::to_string(ldim);
                          return false;
                      }
                      OptimalBinaryLearner learner(&in, solver);
                      OracleLimits lim;
                      lim.max_nodes = 12;  // the n=5 instance has ten nodes
                      const int worst =
                          worst_case_mistakes(in, Setting::binary_full, learner, lim).value;
                      if (worst != 0) {
                          detail = "n=" + std::to_string(n) + ": environment forces " +
                                   std::to_string(worst) + " mistakes";
                          return false;
                      }
                  }
                  detail = "n=1..5: dimensions 0/n, optimal play never errs";
                  return true;
              });

    criterion(5, "every optimal-learner mistake strictly shrinks its dimension",
              [](std::string& detail) {
                  long rounds = 0;
                  int mistakes = 0;
                  for (uint64_t seed = 1; rounds < 1000 || seed <= 20; ++seed) {
                      if (seed > 200) break;  // safety; never reached in practice
                      Instance in = small_instance(seed, 2 + int(seed % 2), seed % 4 == 0);
                      auto solver = std::make_shared<DimensionSolver>(&in);
                      for (Setting setting : applicable_settings(in)) {
                          auto learner = make_setting_learner(&in, solver, setting);
                          RandomAdversary adv(&in, setting, seed * 31);
                          GameConfig cfg;
                          cfg.setting = setting;
                          cfg.horizon = 25;
                          Transcript tr = run_game(in, *learner, adv, cfg);

                          int prev = tr.initial_dim;
                          for (const RoundRecord& r : tr.rounds) {
                              if (r.mistake && r.dim_after >= prev) {
                                  detail = "seed " + std::to_string(seed) + " " +
                                           to_string(setting) + ": dimension " +
                                           std::to_string(prev) + " -> " +
                                           std::to_string(r.dim_after) + " across a mistake";
                                  return false;
                              }
                              prev = r.dim_after;
                          }
                          for (const auto& v : check_transcript(in, tr)) {
                              detail = "seed " + std::to_string(seed) + ": " + v;
                              return false;
                          }
                          rounds += long(tr.rounds.size());
                          mistakes += tr.total_mistakes;
                      }
                  }
                  detail = std::to_string(rounds) + " fuzzed rounds, " +
                           std::to_string(mistakes) + " mistakes, all strict";
                  return rounds >= 1000 && mistakes > 0;
              });

    criterion(6, "the bandit reduction respects its mistake bound and weight-decay caps",
              [](std::string& detail) {
                  long runs = 0, mistake_rounds = 0;
                  for (uint64_t seed = 1; seed <= 40; ++seed) {
                      GenParams p;
                      p.num_nodes = 2 + int(seed % 4);
                      p.max_degree = 3;
                      p.num_labels = 2 + int(seed % 3);  // up to four labels
                      p.num_hypotheses = 2 + int((seed * 7) % 23);
                      p.seed = seed * 131;
                      Instance in = generate_instance(p);
                      auto solver = std::make_shared<DimensionSolver>(&in);

                      const int k = in.num_labels();
                      const int degp1 = in.graph.max_degree() + 1;
                      const int ildim =
                          solver->dimension(DimensionKind::multiclass_improvement);
                      const double bound =
                          ildim == 0 ? 0.0
                                     : 2.0 * k * degp1 * std::log(2.0 * (k - 1)) * ildim;
                      const double type1_cap = 1.0 - 1.0 / (2.0 * degp1);
                      const double type2_cap = 1.0 - 1.0 / (2.0 * k * degp1);

                      auto play = [&](Adversary&& adv, int horizon) {
                          auto pool = std::make_unique<BanditReductionLearner>(
                              BanditReductionLearner::wrapping_multiclass(&in, solver));
                          GameConfig cfg;
                          cfg.setting = Setting::multiclass_bandit;
                          cfg.record_snapshots = false;
                          cfg.horizon = horizon;
                          Transcript tr = run_game(in, *pool, adv, cfg);

                          if (double(tr.total_mistakes) > bound + kDecayTol) {
                              detail = "seed " + std::to_string(seed) + ": " +
                                       std::to_string(tr.total_mistakes) +
                                       " mistakes exceed the bound";
                              return false;
                          }
                          if (ildim == 0 && tr.total_mistakes != 0) {
                              detail = "seed " + std::to_string(seed) +
                                       ": mistakes despite a zero dimension";
                              return false;
                          }
                          for (const auto& ms : pool->mistake_history()) {
                              const double cap = ms.type == 1 ? type1_cap : type2_cap;
                              if ((ms.type != 1 && ms.type != 2) ||
                                  ms.weight_after / ms.weight_before > cap + kDecayTol) {
                                  detail = "seed " + std::to_string(seed) +
                                           ": weight decay misses its cap";
                                  return false;
                              }
                              ++mistake_rounds;
                          }
                          ++runs;
                          return true;
                      };
                      if (!play(RandomAdversary(&in, Setting::multiclass_bandit, seed), 300))
                          return false;
                      if (!play(TreeAdversary::for_instance(in,
                                                            DimensionKind::bandit_improvement),
                                1000))
                          return false;
                  }
                  detail = std::to_string(runs) + " runs, " + std::to_string(mistake_rounds) +
                           " decayed mistakes within tolerance " + "1e-9";
                  return runs == 80 && mistake_rounds > 100;
              });

    criterion(7, "the dimension recursion agrees with brute-force tree enumeration",
              [](std::string& detail) {
                  int checked = 0;
                  for (uint64_t seed = 1; seed <= 40; ++seed) {
                      GenParams p;
                      p.num_nodes = 2 + int(seed % 3);
                      p.max_degree = 3;
                      p.num_labels = 2 + int(seed % 2);
                      p.num_hypotheses = 2 + int((seed * 5) % 11);
                      p.weighted = seed % 5 == 0;
                      p.seed = seed * 313;
                      Instance in = generate_instance(p);
                      DimensionSolver solver(&in);
                      VersionSpace all(&in);

                      std::vector<DimensionKind> kinds{DimensionKind::littlestone,
                                                       DimensionKind::weighted_improvement};
                      if (in.graph.unweighted()) {
                          kinds.push_back(DimensionKind::multiclass_improvement);
                          kinds.push_back(DimensionKind::bandit_improvement);
                          if (in.num_labels() == 2)
                              kinds.push_back(DimensionKind::binary_improvement);
                      }
                      for (DimensionKind kind : kinds) {
                          const int d = solver.dimension(kind);
                          if (d > 3) continue;  // enumeration depth cap
                          const bool at_d = d == 0 || find_shattered_tree(all, kind, d).has_value();
                          const bool above = find_shattered_tree(all, kind, d + 1).has_value();
                          if (!at_d || above) {
                              detail = "seed " + std::to_string(seed) + " " + to_string(kind) +
                                       ": recursion says " + std::to_string(d) +
                                       (at_d ? ", but a deeper tree exists" : ", no tree found");
                              return false;
                          }
                          ++checked;
                      }
                  }
                  detail = std::to_string(checked) + " (instance, dimension) pairs certified";
                  return checked >= 100;
              });

    criterion(8, "dimension and value orderings hold across feedback models",
              [](std::string& detail) {
                  for (uint64_t seed = 1; seed <= 60; ++seed) {
                      Instance bin = small_instance(seed, 2, false);
                      DimensionSolver bs(&bin);
                      const int ildim = bs.dimension(DimensionKind::binary_improvement);
                      const int ldim = bs.dimension(DimensionKind::littlestone);
                      if (ildim > ldim ||
                          double(ldim) > std::log2(double(bin.num_hypotheses())) + kLog2Tol) {
                          detail = "seed " + std::to_string(seed) + ": binary ordering broken (" +
                                   std::to_string(ildim) + ", " + std::to_string(ldim) + ", log2 " +
                                   std::to_string(std::log2(double(bin.num_hypotheses()))) + ")";
                          return false;
                      }

                      Instance multi = small_instance(seed, 3, false);
                      DimensionSolver ms(&multi);
                      const int full_dim = ms.dimension(DimensionKind::multiclass_improvement);
                      const int bandit_dim = ms.dimension(DimensionKind::bandit_improvement);
                      if (full_dim > bandit_dim) {
                          detail = "seed " + std::to_string(seed) + ": full dimension " +
                                   std::to_string(full_dim) + " exceeds bandit dimension " +
                                   std::to_string(bandit_dim);
                          return false;
                      }
                      const int full_value = MinimaxSolver(&multi, Setting::multiclass_full).value();
                      const int bandit_value =
                          MinimaxSolver(&multi, Setting::multiclass_bandit).value();
                      if (full_value > bandit_value) {
                          detail = "seed " + std::to_string(seed) + ": full value " +
                                   std::to_string(full_value) + " exceeds bandit value " +
                                   std::to_string(bandit_value);
                          return false;
                      }
                  }
                  detail = "60 seeds: improvement <= littlestone <= log2, full <= bandit";
                  return true;
              });

    return failures == 0 ? 0 : 1;
}
