#include "ionet/net.hpp"

#include <gtest/gtest.h>

#include "testutil.hpp"

using namespace ionet;
using testutil::make_net;
using testutil::mk;

namespace {

// net {a,b,c} with t = (src=a, obs=b, dst=c)
IONet abc_net() {
  return make_net({"a", "b", "c"}, {{"t", 0, 1, 2}});
}

TEST(ClassifyIO, UniqueDecomposition) {
  auto shape = classify_io({0, 1}, {2, 1});
  ASSERT_TRUE(shape.has_value());
  EXPECT_EQ(shape->src, 0u);
  EXPECT_EQ(shape->obs, 1u);
  EXPECT_EQ(shape->dst, 2u);
}

TEST(ClassifyIO, ForcedByMultisetEquality) {
  // pre = {a,a}, post = {c,a}
  auto shape = classify_io({0, 0}, {2, 0});
  ASSERT_TRUE(shape.has_value());
  EXPECT_EQ(shape->src, 0u);
  EXPECT_EQ(shape->obs, 0u);
  EXPECT_EQ(shape->dst, 2u);
}

TEST(ClassifyIO, NoSharedObservedPlace) {
  EXPECT_FALSE(classify_io({0, 1}, {2, 3}).has_value());
}

TEST(ClassifyIO, PrefersSrcEqualsDstThenLowestObs) {
  // pre = {a,b}, post = {a,b}: both decompositions keep src == dst; the
  // tie-break picks the lower observed index.
  auto shape = classify_io({0, 1}, {0, 1});
  ASSERT_TRUE(shape.has_value());
  EXPECT_EQ(shape->obs, 0u);
  EXPECT_EQ(shape->src, 1u);
  EXPECT_EQ(shape->dst, 1u);
}

TEST(ClassifyIO, RoundTripsEveryValidTransition) {
  testutil::Rng rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    IONet net = testutil::random_net(rng);
    for (const auto& t : net.transitions) {
      auto shape = classify_io({t.src, t.obs}, {t.dst, t.obs});
      ASSERT_TRUE(shape.has_value());
      // Decomposition agrees up to the documented tie-break: the pre/post
      // multisets must match the original transition's.
      auto sorted2 = [](PlaceIndex x, PlaceIndex y) {
        return x <= y ? std::make_pair(x, y) : std::make_pair(y, x);
      };
      EXPECT_EQ(sorted2(shape->src, shape->obs), sorted2(t.src, t.obs));
      EXPECT_EQ(sorted2(shape->dst, shape->obs), sorted2(t.dst, t.obs));
    }
  }
}

TEST(Enabled, Definition) {
  IONet net = abc_net();
  const auto& t = net.transitions[0];
  EXPECT_TRUE(enabled(mk({1, 1, 0}), t));
  EXPECT_FALSE(enabled(mk({1, 0, 0}), t));
}

TEST(Enabled, SelfObservationNeedsTwoTokens) {
  IONet net = make_net({"a", "b", "c"}, {{"t", 0, 0, 2}});
  const auto& t = net.transitions[0];
  EXPECT_FALSE(enabled(mk({1, 0, 0}), t));
  EXPECT_TRUE(enabled(mk({2, 0, 0}), t));
}

TEST(Fire, Definition) {
  IONet net = abc_net();
  EXPECT_EQ(fire(mk({1, 1, 0}), net.transitions[0]), mk({0, 1, 1}));
}

TEST(Fire, SrcEqualsDstIsNoOpOnCounts) {
  IONet net = make_net({"a", "b"}, {{"t", 0, 1, 0}});
  EXPECT_EQ(fire(mk({1, 1}), net.transitions[0]), mk({1, 1}));
}

TEST(Fire, SelfObservation) {
  IONet net = make_net({"a", "b", "c"}, {{"t", 0, 0, 2}});
  EXPECT_EQ(fire(mk({2, 0, 0}), net.transitions[0]), mk({1, 0, 1}));
}

TEST(Fire, ThrowsWhenDisabled) {
  IONet net = abc_net();
  EXPECT_THROW(fire(mk({0, 1, 0}), net.transitions[0]), NotEnabledError);
}

TEST(Fire, ConservesTokensOnRandomNets) {
  testutil::Rng rng(13);
  for (int iter = 0; iter < 2000; ++iter) {
    IONet net = testutil::random_net(rng);
    Marking m = testutil::random_marking(rng, net.place_count());
    for (const auto& t : net.transitions) {
      if (!enabled(m, t)) continue;
      Marking next = fire(m, t);
      EXPECT_EQ(next.total(), m.total());
      // determinism
      EXPECT_EQ(fire(m, t), next);
    }
  }
}

TEST(Replay, SingleStep) {
  IONet net = abc_net();
  ReplayResult r = replay(net, Trajectory{mk({1, 1, 0}), {"t"}});
  ASSERT_TRUE(r.ok);
  ASSERT_EQ(r.markings.size(), 2u);
  EXPECT_EQ(r.markings[0], mk({1, 1, 0}));
  EXPECT_EQ(r.markings[1], mk({0, 1, 1}));
}

TEST(Replay, ReportsFirstInvalidStep) {
  IONet net = abc_net();
  ReplayResult r = replay(net, Trajectory{mk({0, 1, 0}), {"t"}});
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failed_step, 0u);
}

TEST(Replay, TwoSteps) {
  IONet net = abc_net();
  ReplayResult r = replay(net, Trajectory{mk({2, 1, 0}), {"t", "t"}});
  ASSERT_TRUE(r.ok);
  ASSERT_EQ(r.markings.size(), 3u);
  EXPECT_EQ(r.markings[0], mk({2, 1, 0}));
  EXPECT_EQ(r.markings[1], mk({1, 1, 1}));
  EXPECT_EQ(r.markings[2], mk({0, 1, 2}));
}

TEST(Replay, UnknownTransitionIdIsInvalid) {
  IONet net = abc_net();
  ReplayResult r = replay(net, Trajectory{mk({1, 1, 0}), {"nope"}});
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failed_step, 0u);
}

TEST(IONetValidate, RejectsDuplicates) {
  IONet net;
  net.places = {"a", "a"};
  EXPECT_THROW(net.validate(), std::invalid_argument);
  IONet net2 = make_net({"a", "b"}, {{"t", 0, 1, 1}});
  net2.transitions.push_back(IOTransition{"t", 0, 1, 0});
  EXPECT_THROW(net2.validate(), std::invalid_argument);
}

TEST(Reversed, SwapsReachabilityDirection) {
  testutil::Rng rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    IONet net = testutil::random_net(rng);
    IONet rev = net.reversed();
    Marking m = testutil::random_marking(rng, net.place_count(), 3);
    for (const auto& t : net.transitions) {
      if (!enabled(m, t)) continue;
      Marking next = fire(m, t);
      const IOTransition* back = rev.find_transition(t.id);
      ASSERT_NE(back, nullptr);
      ASSERT_TRUE(enabled(next, *back));
      EXPECT_EQ(fire(next, *back), m);
    }
  }
}

}  // namespace
