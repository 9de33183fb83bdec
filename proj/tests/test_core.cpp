#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cgame/common.hpp"
#include "cgame/instance.hpp"
#include "cgame/link.hpp"
#include "cgame/shrinkage.hpp"
#include "cgame/simulate.hpp"

using namespace cgame;

namespace {

GameInstance one_arm_discounted() {
    GameInstance inst;
    inst.arms.push_back(ArmSpec{0.8, 0.55, 0.5, ShrinkageFn::sqrt_decay(0.2, 0.4)});
    inst.T = 2;
    return inst;
}

}  // namespace

TEST_CASE("counter rng is deterministic and well distributed") {
    CHECK(uniform01(7, 3) == uniform01(7, 3));
    CHECK(uniform01(7, 3) != uniform01(7, 4));
    CHECK(uniform01(7, 3) != uniform01(8, 3));
    CHECK(uniform01(7, 3, 1) != uniform01(7, 3, 2));
    double mean = 0;
    for (int r = 0; r < 10000; ++r) {
        double u = uniform01(42, r);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        mean += u;
    }
    CHECK(mean / 10000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("sequential rng stays inside requested bounds") {
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        int v = rng.uniform_int(2, 5);
        CHECK(v >= 2);
        CHECK(v <= 5);
        double d = rng.uniform(-1.0, 1.0);
        CHECK(d >= -1.0);
        CHECK(d <= 1.0);
    }
}

TEST_CASE("format_double gives stable short strings") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-1.0) == "-1");
    CHECK(format_double(0.63513167019494865) == "0.6351316702");
    CHECK(format_double(1e-12) == "1e-12");
}

TEST_CASE("sqrt shrinkage closed form") {
    auto g = ShrinkageFn::sqrt_decay(0.1, 0.3);
    CHECK(g.eval(0) == doctest::Approx(0.3).epsilon(1e-12));
    // one full pull: computed independently from q / sqrt(n + (q/h)^2)
    CHECK(0.73 - g.eval(1) == doctest::Approx(0.63513167019494865).epsilon(1e-15));
    CHECK(g.lipschitz() == doctest::Approx(0.3 * 0.3 * 0.3 / (2 * 0.1 * 0.1)).epsilon(1e-12));
    // non-increasing in n
    CHECK(g.eval(2) < g.eval(1));
    CHECK(g.eval(1) < g.eval(0));
}

TEST_CASE("linear shrinkage") {
    auto g = ShrinkageFn::linear(0.6, 0.3);
    CHECK(g.eval(0) == doctest::Approx(0.6));
    CHECK(g.eval(1) == doctest::Approx(0.3));
    CHECK(g.eval(1.5) == doctest::Approx(0.15));
    CHECK(g.lipschitz() == doctest::Approx(0.3));
}

TEST_CASE("scaled shrinkage wraps the inner curve") {
    auto g = ShrinkageFn::scaled(0.5, ShrinkageFn::linear(0.6, 0.3));
    CHECK(g.eval(2) == doctest::Approx(0.6 - 0.3 * 1.0));  // inner(0.5 * 2)
    CHECK(g.lipschitz() == doctest::Approx(0.5 * 0.3));
}

TEST_CASE("table shrinkage interpolates and holds the tail") {
    auto g = ShrinkageFn::table({{0, 0.7}, {1, 0.3}, {2, 0.1}});
    CHECK(g.eval(0) == doctest::Approx(0.7));
    CHECK(g.eval(0.5) == doctest::Approx(0.5));
    CHECK(g.eval(1.5) == doctest::Approx(0.2));
    CHECK(g.eval(2) == doctest::Approx(0.1));
    CHECK(g.eval(10) == doctest::Approx(0.1));  // constant past the last point
    CHECK(g.lipschitz() == doctest::Approx(0.4));
}

TEST_CASE("table shrinkage rejects malformed point lists") {
    CHECK_THROWS_AS(ShrinkageFn::table({}), config_error);
    CHECK_THROWS_AS(ShrinkageFn::table({{1, 0.5}}), config_error);              // first n != 0
    CHECK_THROWS_AS(ShrinkageFn::table({{0, 0.5}, {0, 0.4}}), config_error);    // n not increasing
    CHECK_THROWS_AS(ShrinkageFn::table({{0, 0.3}, {1, 0.5}}), config_error);    // g increasing
}

TEST_CASE("bradley-terry link identities") {
    auto bt = LinkFn::bradley_terry();
    CHECK(bt.eval(0.4, 0.4) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bt.eval(0.9, 0.2) == doctest::Approx(1.0 / (1.0 + std::exp(0.2 - 0.9))).epsilon(1e-15));
    CHECK(bt.eval(0.9, 0.2) + bt.eval(0.2, 0.9) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bt.eval(0.8, 0.3) > bt.eval(0.7, 0.3));  // up in own quality
    CHECK(bt.eval(0.8, 0.4) < bt.eval(0.8, 0.3));  // down in rival quality
    CHECK(bt.lipschitz_second() == doctest::Approx(0.25));
    bt.assert_in_domain(5.0, -3.0);  // defined everywhere
}

TEST_CASE("piecewise gadget link rows") {
    auto link = LinkFn::piecewise_gadget(0.1, 0.9, 0.3);
    // bottom row is linear all the way
    CHECK(link.eval(0.1, 0.0) == doctest::Approx((1 + 0.1 - 0.0) / 2));
    CHECK(link.eval(0.1, 0.25) == doctest::Approx((1 + 0.1 - 0.25) / 2));
    // top row is flat below the knee, linear above it
    CHECK(link.eval(0.9, 0.0) == doctest::Approx((1 + 0.9 - 0.3) / 2));
    CHECK(link.eval(0.9, 0.3) == doctest::Approx((1 + 0.9 - 0.3) / 2));
    CHECK(link.eval(0.9, 0.2) == doctest::Approx(link.eval(0.9, 0.0)));
    CHECK(link.eval(0.9, 0.6) == doctest::Approx((1 + 0.9 - 0.6) / 2));
    // diagonal stays a coin flip
    CHECK(link.eval(0.9, 0.9) == doctest::Approx(0.5));
    CHECK(link.eval(0.1, 0.1) == doctest::Approx(0.5));
    CHECK_THROWS_AS(link.assert_in_domain(0.95, 0.2), std::logic_error);
    CHECK_THROWS_AS(link.assert_in_domain(0.9, 1.1), std::logic_error);
    link.assert_in_domain(0.9, 0.45);
}

TEST_CASE("table link bilinear interpolation and clamping") {
    auto link = LinkFn::table({0.0, 1.0}, {0.0, 1.0},
                              {{0.4, 0.2}, {0.8, 0.6}});
    CHECK(link.eval(0, 0) == doctest::Approx(0.4));
    CHECK(link.eval(1, 1) == doctest::Approx(0.6));
    CHECK(link.eval(0.5, 0.5) == doctest::Approx(0.5));
    CHECK(link.eval(0.25, 0.0) == doctest::Approx(0.5));
    CHECK(link.eval(-1.0, 0.0) == doctest::Approx(0.4));  // clamped
    CHECK(link.eval(2.0, 2.0) == doctest::Approx(0.6));
}

TEST_CASE("table link validation") {
    // value out of [0,1]
    CHECK_THROWS_AS(LinkFn::table({0, 1}, {0, 1}, {{0.4, 0.2}, {1.8, 0.6}}),
                    config_error);
    // decreasing along x
    CHECK_THROWS_AS(LinkFn::table({0, 1}, {0, 1}, {{0.8, 0.6}, {0.4, 0.2}}),
                    config_error);
    // increasing along y
    CHECK_THROWS_AS(LinkFn::table({0, 1}, {0, 1}, {{0.2, 0.4}, {0.6, 0.8}}),
                    config_error);
    // ragged rows
    CHECK_THROWS_AS(LinkFn::table({0, 1}, {0, 1}, {{0.4, 0.2}, {0.8}}),
                    config_error);
}

TEST_CASE("instance json round trip") {
    GameInstance inst;
    inst.arms.push_back(ArmSpec{0.9, 0.6, 1.0, ShrinkageFn::linear(0.6, 0.3)});
    inst.arms.push_back(ArmSpec{0.8, 0.5, 0.5, ShrinkageFn::sqrt_decay(0.2, 0.4)});
    inst.arms.push_back(
        ArmSpec{0.7, 0.5, 0.5, ShrinkageFn::scaled(0.4, ShrinkageFn::linear(0.7, 0.35))});
    inst.arms.push_back(
        ArmSpec{0.6, 0.5, 1.0, ShrinkageFn::table({{0, 0.4}, {1, 0.1}})});
    inst.T = 17;
    inst.link = LinkFn::piecewise_gadget(0.1, 0.9, 0.37);
    inst.utility_override = PauseThresholdOverride{0.1, -2.0, 0.0002, 0.0003};

    GameInstance back = instance_from_json(instance_to_json(inst));
    REQUIRE(back.k() == 4);
    CHECK(back.T == 17);
    CHECK(back.arms[0].mu == doctest::Approx(0.9));
    CHECK(back.arms[1].shrink.kind() == ShrinkageFn::Kind::SqrtDecay);
    CHECK(back.arms[2].shrink.kind() == ShrinkageFn::Kind::Scaled);
    CHECK(back.arms[3].shrink.kind() == ShrinkageFn::Kind::Table);
    CHECK(back.link.kind() == LinkFn::Kind::PiecewiseGadget);
    CHECK(back.link.knee() == doctest::Approx(0.37));
    REQUIRE(back.utility_override.has_value());
    CHECK(back.utility_override->nu_prime == doctest::Approx(-2.0));
    for (double n : {0.0, 0.3, 1.0, 2.5})
        CHECK(back.genmean(2, n) == doctest::Approx(inst.genmean(2, n)).epsilon(1e-15));

    GameInstance bt_back = instance_from_json(instance_to_json(one_arm_discounted()));
    CHECK(bt_back.link.kind() == LinkFn::Kind::BradleyTerry);
    CHECK(!bt_back.utility_override.has_value());
}

TEST_CASE("instance validation rejects bad configs") {
    CHECK_THROWS_AS(instance_from_json("{"), config_error);
    CHECK_THROWS_AS(instance_from_json(R"({"arms":[],"T":5,"link":{"type":"bradley_terry"}})"),
                    config_error);
    CHECK_THROWS_AS(
        instance_from_json(
            R"({"arms":[{"mu":0.5,"c":0.5,"gamma":0.5,"shrinkage":{"type":"sqrt","q":0.2,"h":0.4}}],"T":0,"link":{"type":"bradley_terry"}})"),
        config_error);
    CHECK_THROWS_AS(
        instance_from_json(
            R"({"arms":[{"mu":1.5,"c":0.5,"gamma":0.5,"shrinkage":{"type":"sqrt","q":0.2,"h":0.4}}],"T":5,"link":{"type":"bradley_terry"}})"),
        config_error);
    CHECK_THROWS_AS(
        instance_from_json(
            R"({"arms":[{"mu":0.5,"c":0.5,"gamma":1.25,"shrinkage":{"type":"sqrt","q":0.2,"h":0.4}}],"T":5,"link":{"type":"bradley_terry"}})"),
        config_error);
    CHECK_THROWS_AS(
        instance_from_json(
            R"({"arms":[{"mu":0.5,"c":0.5,"gamma":0.5,"shrinkage":{"type":"warp","q":0.2,"h":0.4}}],"T":5,"link":{"type":"bradley_terry"}})"),
        config_error);
}

TEST_CASE("discounted state advance and cap") {
    GameInstance inst = one_arm_discounted();
    GameState s(1);
    s.advance(inst, 0);
    CHECK(s.n[0] == doctest::Approx(0.5));
    s.advance(inst, kOptOut);
    CHECK(s.n[0] == doctest::Approx(0.25));
    // pulling forever approaches gamma / (1 - gamma) and never exceeds it
    for (int t = 0; t < 200; ++t) {
        s.advance(inst, 0);
        CHECK(s.n[0] <= 0.5 / (1 - 0.5) + 1e-12);
    }
    CHECK(s.n[0] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("two-round simulation golden values") {
    GameInstance inst = one_arm_discounted();
    FixedHuman human({0, 0});
    Trajectory traj = simulate(inst, human);
    REQUIRE(traj.rows.size() == 2);
    CHECK(traj.rows[0].max_genmean == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(traj.rows[0].round_utility ==
          doctest::Approx(0.048687660112451958).epsilon(1e-15));
    CHECK(traj.rows[1].max_genmean ==
          doctest::Approx(0.56905989232414966).epsilon(1e-15));
    CHECK(traj.rows[1].round_utility ==
          doctest::Approx(0.0074797879872462447).epsilon(1e-12));
    CHECK(traj.human_total == doctest::Approx(0.056167448099698203).epsilon(1e-12));
    CHECK(traj.rows[1].cum_utility == doctest::Approx(traj.human_total));
    // one arm: the AI serves it and wins with probability 1 - sigma
    CHECK(traj.rows[0].ai_arm == 0);
    CHECK(traj.rows[0].ai_prob ==
          doctest::Approx(1.0 - (0.048687660112451958 + 0.55)).epsilon(1e-12));
    CHECK(traj.ai_total == doctest::Approx(traj.rows[0].ai_prob + traj.rows[1].ai_prob));
}

TEST_CASE("opting out pays zero and the ai banks the round") {
    GameInstance inst = one_arm_discounted();
    FixedHuman human({kOptOut, kOptOut});
    Trajectory traj = simulate(inst, human);
    CHECK(traj.human_total == doctest::Approx(0.0));
    CHECK(traj.rows[0].ai_prob == doctest::Approx(1.0));
    CHECK(traj.ai_total == doctest::Approx(2.0));
}

TEST_CASE("myopic ai breaks genmean ties toward the lower index") {
    GameInstance inst;
    inst.arms.push_back(ArmSpec{0.9, 0.5, 1.0, ShrinkageFn::linear(0.5, 0.1)});
    inst.arms.push_back(ArmSpec{0.8, 0.5, 1.0, ShrinkageFn::linear(0.4, 0.1)});
    inst.T = 1;  // both genmeans are 0.4 at the fresh state
    FixedHuman human({kOptOut});
    Trajectory traj = simulate(inst, human);
    CHECK(traj.rows[0].ai_arm == 0);
}

TEST_CASE("trajectory csv layout") {
    GameInstance inst = one_arm_discounted();
    FixedHuman human({0, kOptOut});
    Trajectory traj = simulate(inst, human);
    std::ostringstream out;
    write_trajectory_csv(out, traj);
    std::string csv = out.str();
    CHECK(csv.find("round,human_action,ai_arm,max_genmean,round_utility,"
                   "cum_utility,ai_prob,genmean_0\n") == 0);
    CHECK(csv.find("\n1,0,0,0.4,") != std::string::npos);
    CHECK(csv.find("\n2,-1,0,") != std::string::npos);  // opt-out encodes as -1
    CHECK(csv.find(",0.04868766011,") != std::string::npos);
}

TEST_CASE("pause override replaces pull utilities") {
    GameInstance inst;
    inst.arms.push_back(ArmSpec{0.8, 0.55, 0.45, ShrinkageFn::sqrt_decay(0.2, 0.4)});
    inst.arms.push_back(ArmSpec{0.7, 0.55, 0.45, ShrinkageFn::sqrt_decay(0.2, 0.4)});
    inst.T = 4;
    inst.utility_override = PauseThresholdOverride{0.1, -2.0, 0.1, 0.4};
    FixedHuman human({0, 0, kOptOut, 0});
    Trajectory traj = simulate(inst, human);
    // round 1: fresh state, every count 0 <= n_low
    CHECK(traj.rows[0].round_utility == doctest::Approx(0.1));
    // round 2: n_0 = 0.45 >= n_high
    CHECK(traj.rows[1].round_utility == doctest::Approx(-2.0));
    // round 3: opt-out still pays 0 whatever the counts say
    CHECK(traj.rows[2].round_utility == doctest::Approx(0.0));
    // round 4: counts decayed to 0.29 (between the thresholds) -> penalty side
    CHECK(traj.rows[3].round_utility == doctest::Approx(-2.0));
}

TEST_CASE("sampled deviation with p=1 replays the myopic trajectory") {
    GameInstance inst;
    inst.arms.push_back(ArmSpec{0.75, 0.55, 0.5, ShrinkageFn::sqrt_decay(0.15, 0.4)});
    inst.arms.push_back(ArmSpec{0.8, 0.55, 0.55, ShrinkageFn::sqrt_decay(0.125, 0.4)});
    inst.T = 30;
    FixedHuman human(std::vector<int>(30, 0));
    Trajectory myo = simulate(inst, human, AiSpec::myopic());
    Trajectory dev = simulate(inst, human, AiSpec::deviating_sampled(1.0, 99));
    REQUIRE(myo.rows.size() == dev.rows.size());
    for (std::size_t i = 0; i < myo.rows.size(); ++i) {
        CHECK(myo.rows[i].ai_arm == dev.rows[i].ai_arm);
        CHECK(myo.rows[i].round_utility == doctest::Approx(dev.rows[i].round_utility));
    }
    // and the same seed replays itself at p = 0.7
    Trajectory a = simulate(inst, human, AiSpec::deviating_sampled(0.7, 5));
    Trajectory b = simulate(inst, human, AiSpec::deviating_sampled(0.7, 5));
    CHECK(a.human_total == b.human_total);
    Trajectory c = simulate(inst, human, AiSpec::deviating_sampled(0.7, 6));
    CHECK(a.human_total != c.human_total);
}

TEST_CASE("expectation deviation is linear in p") {
    GameInstance inst;
    inst.arms.push_back(ArmSpec{0.75, 0.55, 0.5, ShrinkageFn::sqrt_decay(0.15, 0.4)});
    inst.arms.push_back(ArmSpec{0.8, 0.55, 0.55, ShrinkageFn::sqrt_decay(0.125, 0.4)});
    inst.T = 25;
    std::vector<int> actions(25, 0);
    actions[3] = 1;
    actions[10] = kOptOut;
    auto value = [&](double p) {
        FixedHuman human(actions);
        return simulate(inst, human, AiSpec::deviating_expectation(p)).human_total;
    };
    double v0 = value(0.0), v1 = value(1.0);
    for (double p : {0.25, 0.5, 0.9})
        CHECK(value(p) == doctest::Approx(p * v1 + (1 - p) * v0).epsilon(1e-12));
    // deviation can only help the human: uniform play serves weaker content
    CHECK(v0 >= v1 - kTol);
}

TEST_CASE("fixed ai sequence must cover the horizon") {
    GameInstance inst = one_arm_discounted();
    FixedHuman human({0, 0});
    CHECK_THROWS_AS(simulate(inst, human, AiSpec::fixed({0})), config_error);
    Trajectory traj = simulate(inst, human, AiSpec::fixed({0, 0}));
    CHECK(traj.rows[1].ai_arm == 0);
}

TEST_CASE("myopic play is the ai optimum on a small instance") {
    GameInstance inst;
    inst.arms.push_back(ArmSpec{0.9, 0.6, 1.0, ShrinkageFn::linear(0.7, 0.3)});
    inst.arms.push_back(ArmSpec{0.8, 0.6, 1.0, ShrinkageFn::linear(0.6, 0.2)});
    inst.T = 4;
    std::vector<int> human = {0, 1, 0, kOptOut};
    CHECK(myopic_is_ai_optimal(inst, human));
    CHECK_THROWS_AS(myopic_is_ai_optimal(inst, human, 3), capacity_error);

    // scripted ai utility agrees with the simulator on the myopic arms
    FixedHuman h2(human);
    Trajectory traj = simulate(inst, h2);
    std::vector<int> myopic_arms;
    for (const auto& row : traj.rows) myopic_arms.push_back(row.ai_arm);
    CHECK(ai_utility_of_sequence(inst, human, myopic_arms) ==
          doctest::Approx(traj.ai_total).epsilon(1e-12));
}
