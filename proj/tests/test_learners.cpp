#include <catch2/catch_amalgamated.hpp>

#include "olimp/adversary.hpp"
#include "olimp/engine.hpp"
#include "olimp/learner.hpp"
#include "olimp/optimal_learners.hpp"
#include "olimp/oracle.hpp"

#include "support.hpp"

using namespace olimp;

TEST_CASE("binary learner herds agents instead of guessing") {
    Instance in = fixtures::improvable_pairs(3);
    auto solver = std::make_shared<DimensionSolver>(&in);

    SECTION("it never makes a mistake on the improvable pairs") {
        OptimalBinaryLearner learner(&in, solver);
        CHECK(worst_case_mistakes(in, Setting::binary_full, learner).value == 0);
    }

    SECTION("at an uncertain node it publishes the escape route only") {
        OptimalBinaryLearner learner(&in, solver);
        Publication pub = learner.publish(0);  // x0 is uncertain, x0' is not
        CHECK(pub.at(0) == kBottomLabel);
        CHECK(pub.at(1) == 1);
        // the agent takes the bait and the prediction there is always right
        auto dest = best_response_set(in, pub, 0);
        REQUIRE(dest == std::vector<NodeId>{1});
    }
}

TEST_CASE("optimal learners always have a publication available") {
    // Wander down random restriction chains; publish() must succeed on every
    // nonempty version space at every node.
    for (uint64_t seed : {81u, 82u, 83u, 84u}) {
        Instance in = fixtures::random_instance(seed, 4, 2 + int(seed % 2), 18);
        auto solver = std::make_shared<DimensionSolver>(&in);
        SplitMix64 rng(seed);
        CAPTURE(seed);

        auto drive = [&](auto make_learner, bool bandit) {
            auto learner = make_learner();
            for (int round = 0; round < 60; ++round) {
                for (NodeId x = 0; x < in.num_nodes(); ++x)
                    CHECK_NOTHROW(learner->clone()->publish(x));
                const auto& vs = learner->version_space();
                if (vs.count() <= 1) break;
                // feed one consistent mistake-flavored answer
                NodeId x = NodeId(rng.below(uint64_t(in.num_nodes())));
                Publication pub = learner->publish(x);
                NodeId d = best_response_set(in, pub, x).front();
                LabelId pred = pub.at(d);
                VersionSpace wrong = vs.without_label(d, pred);
                if (wrong.empty()) continue;  // prediction was forced; try again
                if (bandit)
                    learner->observe(Feedback{d, true, std::nullopt});
                else
                    learner->observe(Feedback{d, true, in.hclass.table[wrong.first_member()](d)});
            }
        };

        drive([&] { return std::make_unique<OptimalMulticlassLearner>(&in, solver); }, false);
        drive([&] { return std::make_unique<OptimalWeightedLearner>(&in, solver); }, false);
        drive([&] { return std::make_unique<OptimalBanditLearner>(&in, solver); }, true);
        if (in.num_labels() == 2)
            drive([&] { return std::make_unique<OptimalBinaryLearner>(&in, solver); }, false);
    }
}

TEST_CASE("single-target learners never publish two improvement targets") {
    for (uint64_t seed : {91u, 92u, 93u}) {
        Instance in = fixtures::random_instance(seed, 5, 3, 24);
        auto solver = std::make_shared<DimensionSolver>(&in);
        OptimalMulticlassLearner learner(&in, solver);
        FixedHypothesisAdversary adv(&in, HypId(seed % uint64_t(in.num_hypotheses())), seed);
        GameConfig cfg;
        cfg.setting = Setting::multiclass_full;
        Transcript tr = run_game(in, learner, adv, cfg);
        CAPTURE(seed);
        for (const RoundRecord& r : tr.rounds) {
            int non_bottom = 0;
            for (LabelId y : r.pub.labels) non_bottom += (y != kBottomLabel);
            CHECK(non_bottom <= 1);
        }
    }
}

TEST_CASE("mistakes shrink the version space, correct rounds leave it alone") {
    Instance in = fixtures::full_pair(3);
    auto solver = std::make_shared<DimensionSolver>(&in);
    OptimalMulticlassLearner learner(&in, solver);

    Publication pub = learner.publish(0);
    NodeId d = best_response_set(in, pub, 0).front();
    LabelId pred = pub.at(d);
    auto before = learner.version_space().mask();
    int dim_before = learner.dimension_snapshot();

    SECTION("correct answer: no change") {
        learner.observe(Feedback{d, false, pred});
        CHECK(learner.version_space().mask() == before);
    }

    SECTION("mistake: strictly fewer hypotheses and strictly smaller dimension") {
        VersionSpace wrong = learner.version_space().without_label(d, pred);
        REQUIRE_FALSE(wrong.empty());
        LabelId truth = in.hclass.table[wrong.first_member()](d);
        learner.observe(Feedback{d, true, truth});
        CHECK(learner.version_space().count() < VersionSpace(&in).count());
        CHECK(learner.dimension_snapshot() < dim_before);
    }

    SECTION("inconsistent feedback is rejected loudly") {
        // On the pairs fixture every hypothesis agrees at x0', so claiming a
        // mistake there contradicts the whole class.
        Instance pairs = fixtures::improvable_pairs(1);
        auto ps = std::make_shared<DimensionSolver>(&pairs);
        OptimalBanditLearner bl(&pairs, ps);
        Publication bp = bl.publish(1);
        REQUIRE(bp.at(1) == 1);
        CHECK_THROWS_AS(bl.observe(Feedback{1, true, std::nullopt}), NonRealizableError);
    }
}

TEST_CASE("bandit learner rules out exactly its prediction on a mistake") {
    Instance in = fixtures::full_pair(3);
    auto solver = std::make_shared<DimensionSolver>(&in);
    OptimalBanditLearner learner(&in, solver);

    Publication pub = learner.publish(1);
    NodeId d = best_response_set(in, pub, 1).front();
    LabelId pred = pub.at(d);
    const int holders = VersionSpace(&in).with_label(d, pred).count();
    REQUIRE(holders > 0);

    learner.observe(Feedback{d, true, std::nullopt});
    CHECK(learner.version_space().count() == 9 - holders);
    for (HypId h : learner.version_space().members())
        CHECK(in.hclass.table[h](d) != pred);
}

TEST_CASE("wrapped classic learners face exactly their classic stream") {
    int checked = 0;
    for (uint64_t seed = 101; seed < 131; ++seed) {
        Instance in = fixtures::random_instance(seed, 4, 2 + int(seed % 2), 16);
        auto solver = std::make_shared<DimensionSolver>(&in);
        HypId target = HypId(seed % uint64_t(in.num_hypotheses()));
        const Hypothesis& h = in.hclass.table[target];

        std::vector<NodeId> xs;
        SplitMix64 rng(seed * 3 + 1);
        for (int i = 0; i < 25; ++i) xs.push_back(NodeId(rng.below(uint64_t(in.num_nodes()))));

        BaselineWrapper wrap(&in, std::make_unique<SoaPointLearner>(&in, solver));
        FixedHypothesisAdversary adv(&in, target, 0);
        adv.set_nodes(xs);
        GameConfig cfg;
        cfg.setting = in.num_labels() == 2 ? Setting::binary_full : Setting::multiclass_full;
        cfg.horizon = 100;
        Transcript tr = run_game(in, wrap, adv, cfg);

        SoaPointLearner bare(&in, solver);
        int bare_mistakes = 0;
        for (NodeId x : xs) {
            LabelId pred = bare.predict(x);
            if (pred != h(x)) {
                ++bare_mistakes;
                bare.update(x, h(x));
            }
        }

        CAPTURE(seed);
        CHECK(tr.total_mistakes == bare_mistakes);
        for (const RoundRecord& r : tr.rounds) CHECK(r.final_node == r.x);  // nobody moves
        CHECK(bare_mistakes <= DimensionSolver(&in).dimension(DimensionKind::littlestone));
        ++checked;
    }
    CHECK(checked == 30);
}

TEST_CASE("deliberately weak learners still play legal games") {
    Instance in = fixtures::full_binary_pair();

    SECTION("publishing bottom everywhere pins every agent in place") {
        ConstantLearner learner(&in, kBottomLabel);
        FixedHypothesisAdversary adv(&in, 0, 5);
        GameConfig cfg;
        cfg.setting = Setting::binary_full;
        cfg.horizon = 12;
        Transcript tr = run_game(in, learner, adv, cfg);
        for (const RoundRecord& r : tr.rounds) CHECK(r.final_node == r.x);
        CHECK(check_transcript(in, tr).empty());
    }

    SECTION("random publications produce valid transcripts too") {
        RandomLearner learner(&in, 9);
        FixedHypothesisAdversary adv(&in, 2, 5);
        GameConfig cfg;
        cfg.setting = Setting::binary_full;
        cfg.horizon = 20;
        Transcript tr = run_game(in, learner, adv, cfg);
        CHECK(check_transcript(in, tr).empty());
    }
}
