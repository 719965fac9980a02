#include <catch2/catch_amalgamated.hpp>

#include "olimp/optimal_learners.hpp"
#include "olimp/oracle.hpp"

#include "support.hpp"

using namespace olimp;

TEST_CASE("exact game values of the reference instances") {
    SECTION("full binary pair: two mistakes in every setting") {
        Instance in = fixtures::full_binary_pair();
        CHECK(MinimaxSolver(&in, Setting::binary_full).value() == 2);
        CHECK(MinimaxSolver(&in, Setting::multiclass_full).value() == 2);
        CHECK(MinimaxSolver(&in, Setting::multiclass_bandit).value() == 2);
    }
    SECTION("improvable pairs: worthless to the environment") {
        Instance in = fixtures::improvable_pairs(2);
        CHECK(MinimaxSolver(&in, Setting::multiclass_full).value() == 0);
        CHECK(MinimaxSolver(&in, Setting::multiclass_bandit).value() == 0);
    }
    SECTION("full three-label pair: bandit feedback doubles the damage") {
        Instance in = fixtures::full_pair(3);
        CHECK(MinimaxSolver(&in, Setting::multiclass_full).value() == 2);
        CHECK(MinimaxSolver(&in, Setting::weighted_full).value() == 2);
        CHECK(MinimaxSolver(&in, Setting::multiclass_bandit).value() == 4);
    }
    SECTION("priced three-label pair") {
        Instance in = fixtures::priced_k3_pair();
        CHECK(MinimaxSolver(&in, Setting::weighted_full).value() == 2);
    }
    SECTION("a known hypothesis is worth nothing") {
        Instance in = fixtures::full_binary_pair();
        DynBitset one(in.num_hypotheses());
        one.set(2);
        MinimaxSolver game(&in, Setting::binary_full);
        CHECK(game.value(VersionSpace(&in, one)) == 0);
        CHECK(game.states_explored() > 0);
    }
}

TEST_CASE("game value never grows when hypotheses disappear") {
    for (uint64_t seed = 401; seed < 406; ++seed) {
        Instance in = fixtures::random_instance(seed, 4, 2 + int(seed % 2), 12);
        MinimaxSolver game(&in, Setting::multiclass_full);
        const int whole = game.value();
        for (HypId h = 0; h < in.num_hypotheses(); ++h) {
            DynBitset sub = in.full_mask();
            sub.reset(h);
            if (sub.none()) continue;
            CAPTURE(seed, h);
            CHECK(game.value(VersionSpace(&in, sub)) <= whole);
        }
    }
}

TEST_CASE("hiding the label never helps the learner") {
    for (uint64_t seed = 411; seed < 419; ++seed) {
        Instance in = fixtures::random_instance(seed, 4, 3, 14);
        const int full = MinimaxSolver(&in, Setting::multiclass_full).value();
        const int bandit = MinimaxSolver(&in, Setting::multiclass_bandit).value();
        CAPTURE(seed, full, bandit);
        CHECK(full <= bandit);
    }
}

TEST_CASE("dimension equals game value on the reference instances") {
    auto certified = [](const Instance& in, Setting setting) {
        CertifyReport rep = certify_dimension(in, setting);
        CAPTURE(to_string(setting), rep.dimension, rep.game_value, rep.detail);
        CHECK(rep.matches);
        return rep;
    };
    Instance f1 = fixtures::full_binary_pair();
    CHECK(certified(f1, Setting::binary_full).dimension == 2);
    CHECK(certified(f1, Setting::multiclass_bandit).dimension == 2);
    Instance f3 = fixtures::full_pair(3);
    CHECK(certified(f3, Setting::multiclass_full).dimension == 2);
    CHECK(certified(f3, Setting::multiclass_bandit).dimension == 4);
    Instance f4 = fixtures::priced_k3_pair();
    CHECK(certified(f4, Setting::weighted_full).dimension == 2);
    Instance f2 = fixtures::improvable_pairs(3);
    CHECK(certified(f2, Setting::multiclass_full).dimension == 0);
}

TEST_CASE("worst-case search matches the optimal learners on the references") {
    Instance in = fixtures::full_binary_pair();
    auto solver = std::make_shared<DimensionSolver>(&in);
    SECTION("binary") {
        OptimalBinaryLearner learner(&in, solver);
        WorstCaseResult r = worst_case_mistakes(in, Setting::binary_full, learner);
        CHECK(r.value == 2);
        CHECK(r.line.size() >= 2);
    }
    SECTION("weighted on the priced pair") {
        Instance priced = fixtures::priced_k3_pair();
        auto ps = std::make_shared<DimensionSolver>(&priced);
        OptimalWeightedLearner learner(&priced, ps);
        CHECK(worst_case_mistakes(priced, Setting::weighted_full, learner).value == 2);
    }
    SECTION("pairs cost the optimal learner nothing") {
        Instance pairs = fixtures::improvable_pairs(4);
        auto ps = std::make_shared<DimensionSolver>(&pairs);
        OptimalMulticlassLearner learner(&pairs, ps);
        WorstCaseResult r = worst_case_mistakes(pairs, Setting::multiclass_full, learner);
        CHECK(r.value == 0);
        CHECK(r.line.empty());
    }
}

TEST_CASE("learners that never commit are flagged, not looped over") {
    Instance in = fixtures::full_binary_pair();
    SECTION("a constant publisher can bleed forever in the bandit setting") {
        ConstantLearner learner(&in, kBottomLabel);
        CHECK_THROWS_AS(worst_case_mistakes(in, Setting::multiclass_bandit, learner),
                        ResourceLimitError);
    }
    SECTION("a learner without a state key cannot be searched") {
        RandomLearner learner(&in, 3);
        CHECK_THROWS_AS(worst_case_mistakes(in, Setting::binary_full, learner), ModelError);
    }
}

TEST_CASE("the search refuses instances beyond its caps") {
    Instance in = fixtures::full_pair(3);  // nine hypotheses
    OracleLimits lim;
    lim.max_hypotheses = 4;
    CHECK_THROWS_AS(MinimaxSolver(&in, Setting::multiclass_full, lim), ResourceLimitError);

    MinimaxSolver game(&in, Setting::multiclass_full);
    SECTION("empty version space has no value") {
        CHECK_THROWS_AS(game.value(VersionSpace(&in, DynBitset(in.num_hypotheses()))),
                        ModelError);
    }
    SECTION("binary solver wants two labels") {
        CHECK_THROWS_AS(MinimaxSolver(&in, Setting::binary_full), ModelError);
    }
    SECTION("foreign version space") {
        Instance other = fixtures::full_binary_pair();
        CHECK_THROWS_AS(game.value(VersionSpace(&other)), ModelError);
    }
}
