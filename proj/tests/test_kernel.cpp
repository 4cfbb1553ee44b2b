#include <gtest/gtest.h>

#include "crosslight/kernel.hpp"
#include "crosslight/scenarios.hpp"
#include "properties.hpp"

using namespace crosslight;

namespace {

Configuration lights() { return build_lights("X", Direction::NS, 5_tu, 6_tu, Params{}); }

}  // namespace

TEST(Kernel, ElapseIsNearestDeadline) {
    // NS green for 5, EW red for 4, pedestrian lights idle.
    EXPECT_EQ(max_time_elapse(lights()), 4_tu);
}

TEST(Kernel, PendingMessageFreezesTime) {
    Configuration c = lights();
    c.send(Message::new_cars(Oid::approach("X", Direction::NS)));
    EXPECT_EQ(max_time_elapse(c), 0_tu);
}

TEST(Kernel, NoTimersMeansUnbounded) {
    Configuration c;
    c.add({Oid::approach("X", Direction::NS), ApproachState{}});
    EXPECT_TRUE(max_time_elapse(c).is_infinite());
    EXPECT_TRUE(all_successors(c, Params{}).empty());
}

TEST(Kernel, TickAdvancesFiniteTimers) {
    const Configuration after = tick(lights(), 3_tu);
    EXPECT_EQ(after.state_of<CarLightState>(Oid::car_light("X", Direction::NS))->timer, 2_tu);
    EXPECT_EQ(after.state_of<CarLightState>(Oid::car_light("X", Direction::EW))->timer, 1_tu);
    EXPECT_TRUE(after.state_of<PedLightState>(Oid::ped_light("X", Direction::NS))->timer.is_infinite());
}

TEST(Kernel, TickRejectsBadDurations) {
    EXPECT_THROW((void)tick(lights(), 0_tu), std::invalid_argument);
    EXPECT_THROW((void)tick(lights(), kInf), std::invalid_argument);
    EXPECT_THROW((void)tick(lights(), 5_tu), std::invalid_argument);
}

TEST(Kernel, MaximalTickIsTheOnlyTimeStep) {
    const auto succs = all_successors(lights(), Params{});
    ASSERT_EQ(succs.size(), 1u);
    EXPECT_EQ(succs[0].rule, kTickRule);
    EXPECT_EQ(succs[0].duration, 4_tu);
}

TEST(Kernel, SuccessorsSortedAndUnique) {
    const Configuration init = build_init(make_init("X", 5, 6, 2, 1, 1, 1, 1));
    const auto succs = all_successors(init, Params{});
    ASSERT_FALSE(succs.empty());
    for (std::size_t i = 1; i < succs.size(); ++i) {
        if (succs[i].rule == kTickRule) continue;
        const auto a = std::make_pair(succs[i - 1].rule, succs[i - 1].key);
        const auto b = std::make_pair(succs[i].rule, succs[i].key);
        EXPECT_LT(a, b);
    }
    for (const auto& s : succs) {
        EXPECT_TRUE(is_normalized(s.next));
        EXPECT_EQ(s.key, canonical_key(s.next));
        if (s.rule != kTickRule) EXPECT_TRUE(s.duration.is_zero());
    }
}

TEST(Kernel, InitialGeneratorOffersEverySubset) {
    const Configuration init = build_init(make_init("X", 5, 6, 0, 0, 0, 1, 1));
    const auto succs = instantaneous_successors(init, Params{});
    std::size_t subsets = 0;
    for (const auto& s : succs) subsets += s.rule == "generateSubsetAndReset";
    EXPECT_EQ(subsets, 16u);
}

TEST(Kernel, MaximalProgressOnReachableStates) {
    const auto r = props::maximal_progress(21, 5'000);
    EXPECT_TRUE(r.ok) << r.failure;
}

TEST(Kernel, PermutationInvarianceOnReachableStates) {
    const auto r = props::permutation_invariance(22, 3'000);
    EXPECT_TRUE(r.ok) << r.failure;
}
