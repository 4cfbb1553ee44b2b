#include <gtest/gtest.h>

#include "crosslight/kernel.hpp"
#include "crosslight/scenarios.hpp"
#include "crosslight/trace.hpp"

using namespace crosslight;

TEST(Trace, SimulationIsDeterministic) {
    const ScenarioSpec spec = make_init("X", 5, 6, 2, 1, 1, 1, 2);
    const std::string a = write_trace(spec, simulate(spec, 300, 7));
    EXPECT_EQ(a, write_trace(spec, simulate(spec, 300, 7)));
    EXPECT_NE(a, write_trace(spec, simulate(spec, 300, 8)));
}

TEST(Trace, SimulatedRunReplays) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ScenarioSpec spec = make_init("X", 5, 6, seed % 3, static_cast<int>(seed % 3), static_cast<int>(seed % 2), 1, 3);
        if (seed % 4 == 0) spec.params.regime = Regime::european;
        const Trace t = simulate(spec, 200, seed);
        EXPECT_EQ(t.steps.size(), 200u);
        const ReplayResult r = replay_trace(write_trace(spec, t));
        EXPECT_TRUE(r.ok) << r.message;
        EXPECT_EQ(r.steps, 200u);
    }
}

TEST(Trace, FormatHeaderAndSteps) {
    const ScenarioSpec spec = make_init("X", 5, 6, 0, 0, 0, 1, 1);
    const std::string text = write_trace(spec, simulate(spec, 5, 1));
    EXPECT_EQ(text.rfind("# crosslight trace v1\n", 0), 0u);
    EXPECT_NE(text.find("#! xing = X\n"), std::string::npos);
    EXPECT_NE(text.find("\nt=0 rule=init\n"), std::string::npos);
    EXPECT_NE(text.find("\nt=0 rule=generateSubsetAndReset"), std::string::npos);
    EXPECT_EQ(text.find("CYCLE-START"), std::string::npos);
}

TEST(Trace, RenderStepShowsChanges) {
    const Configuration before = build_lights("X", Direction::NS, 5_tu, 6_tu, Params{});
    const Configuration after = tick(before, 4_tu);
    const std::string line = render_step(before, after, kTickRule, 4_tu, 4_tu);
    EXPECT_EQ(line.rfind("t=4 rule=tick(4)", 0), 0u);
    EXPECT_NE(line.find("timer=5→1"), std::string::npos);
    EXPECT_NE(line.find("timer=4→0"), std::string::npos);
}

TEST(Trace, ReplayDetectsDivergence) {
    const ScenarioSpec spec = make_init("X", 5, 6, 0, 0, 0, 1, 1);
    const std::string text = write_trace(spec, simulate(spec, 40, 3));
    ASSERT_TRUE(replay_trace(text).ok);

    // A tampered value on some step.
    std::string bad = text;
    const auto pos = bad.find("timer=");
    ASSERT_NE(pos, std::string::npos);
    const auto arrow = bad.find("→", pos);
    ASSERT_NE(arrow, std::string::npos);
    bad.insert(arrow + std::string("→").size(), "9");
    const ReplayResult r = replay_trace(bad);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.message.empty());

    // An unknown rule.
    std::string renamed = text;
    const auto rule = renamed.find("rule=generateSubsetAndReset");
    renamed.replace(rule, 27, "rule=fly");
    EXPECT_FALSE(replay_trace(renamed).ok);

    EXPECT_FALSE(replay_trace("not a trace").ok);
}
