#include "ionet/transformers.hpp"

#include <gtest/gtest.h>

#include "ionet/oracle.hpp"
#include "testutil.hpp"

using namespace ionet;
using testutil::cset;
using testutil::cube;
using testutil::make_net;
using testutil::mk;

namespace {

IONet abc_net() { return make_net({"a", "b", "c"}, {{"t", 0, 1, 2}}); }

TEST(PreStepT, SpecExample) {
  IONet net = abc_net();
  Cube target = cube({{0, std::nullopt}, {1, std::nullopt}, {1, std::nullopt}});
  Cube pre = pre_step_t(net, target, net.transitions[0]);
  EXPECT_EQ(pre, cube({{1, std::nullopt}, {1, std::nullopt}, {0, std::nullopt}}));
}

TEST(PreStepT, DstUpperZeroIsEmpty) {
  IONet net = abc_net();
  Cube target = cube({{0, std::nullopt}, {0, std::nullopt}, {0, 0}});
  EXPECT_TRUE(is_empty(pre_step_t(net, target, net.transitions[0])));
}

TEST(PreStepT, SelfLoopIsEnablednessFilter) {
  // t = (a, b, a): src == dst has zero net effect.
  IONet net = make_net({"a", "b"}, {{"t", 0, 1, 0}});
  Cube c = cube({{0, 4}, {0, std::nullopt}});
  Cube pre = pre_step_t(net, c, net.transitions[0]);
  EXPECT_EQ(pre, cube({{1, 4}, {1, std::nullopt}}));
}

TEST(PostStepT, SpecExample) {
  IONet net = abc_net();
  Cube c = cube({{1, 2}, {1, 1}, {0, 0}});
  Cube post = post_step_t(net, c, net.transitions[0]);
  EXPECT_EQ(post, cube({{0, 1}, {1, 1}, {1, 1}}));
}

TEST(PostStepT, ObservedPlaceForcedEmptyGivesEmptyImage) {
  IONet net = abc_net();
  Cube c = cube({{1, 2}, {0, 0}, {0, std::nullopt}});
  EXPECT_TRUE(is_empty(post_step_t(net, c, net.transitions[0])));
}

TEST(PostStepT, SelfLoopKeepsCube) {
  IONet net = make_net({"a", "b"}, {{"t", 0, 1, 0}});
  Cube c = cube({{1, std::nullopt}, {1, std::nullopt}});
  EXPECT_EQ(post_step_t(net, c, net.transitions[0]), c);
}

// Single-step exactness against brute force: member(M, pre_t(c)) iff
// enabled(M, t) and member(fire(M, t), c); dually for post.
TEST(StepExactness, FuzzAgainstDefinition) {
  testutil::Rng rng(101);
  for (int iter = 0; iter < 400; ++iter) {
    IONet net = testutil::random_net(rng);
    std::size_t n = net.place_count();
    Cube c = testutil::random_cube(rng, n);
    for (const auto& t : net.transitions) {
      Cube pre = pre_step_t(net, c, t);
      Cube post = post_step_t(net, c, t);
      for (std::uint64_t total = 0; total <= 6; ++total) {
        for (const Marking& m : enumerate_markings(n, total)) {
          bool pre_expect = enabled(m, t) && member(fire(m, t), c);
          EXPECT_EQ(member(m, pre), pre_expect);
          bool post_actual = member(m, post);
          bool post_expect = false;
          // m is a one-step successor iff some enabled predecessor in c fires to m
          for (const Marking& p : enumerate_markings(n, total)) {
            if (member(p, c) && enabled(p, t) && fire(p, t) == m) {
              post_expect = true;
              break;
            }
          }
          EXPECT_EQ(post_actual, post_expect);
        }
      }
    }
  }
}

TEST(StepOnSets, EmptyAndNoTransitionCases) {
  IONet net = abc_net();
  EXPECT_TRUE(is_empty(pre_step(net, CountingSet::empty())));
  EXPECT_TRUE(is_empty(post_step(net, CountingSet::empty())));
  IONet bare = make_net({"a", "b"}, {});
  CountingSet s = cset({cube({{0, 1}, {0, 1}})});
  EXPECT_TRUE(is_empty(pre_step(bare, s)));
  EXPECT_TRUE(is_empty(post_step(bare, s)));
}

TEST(StepOnSets, UnionCompatibility) {
  testutil::Rng rng(103);
  for (int iter = 0; iter < 150; ++iter) {
    IONet net = testutil::random_net(rng);
    std::size_t n = net.place_count();
    CountingSet a = testutil::random_set(rng, n);
    CountingSet b = testutil::random_set(rng, n);
    CountingSet lhs = pre_step(net, unite(a, b));
    CountingSet rhs = unite(pre_step(net, a), pre_step(net, b));
    for (int probe = 0; probe < 25; ++probe) {
      Marking m = testutil::random_marking(rng, n, 5);
      EXPECT_EQ(member(m, lhs), member(m, rhs));
    }
  }
}

TEST(PreStar, IncludesSeed) {
  testutil::Rng rng(104);
  for (int iter = 0; iter < 100; ++iter) {
    IONet net = testutil::random_net(rng);
    CountingSet s = testutil::random_set(rng, net.place_count());
    EXPECT_TRUE(includes(pre_star(net, s), normalize(s)));
  }
}

TEST(PreStar, SpecChainExample) {
  // net {a,b}, t = (src=a, obs=b, dst=b); pre* of {a=0, b>=1} is
  // {a unconstrained, b>=1}.
  IONet net = make_net({"a", "b"}, {{"t", 0, 1, 1}});
  CountingSet s = cset({cube({{0, 0}, {1, std::nullopt}})});
  CountingSet result = pre_star(net, s);
  CountingSet expected = cset({cube({{0, std::nullopt}, {1, std::nullopt}})});
  EXPECT_TRUE(testutil::sets_agree(result, expected, 2));
}

TEST(PostStar, SpecTotalThreeExample) {
  IONet net = make_net({"a", "b"}, {{"t", 0, 1, 1}});
  CountingSet s = cset({cube({{2, 2}, {1, 1}})});
  CountingSet result = post_star(net, s);
  EXPECT_TRUE(member(mk({2, 1}), result));
  EXPECT_TRUE(member(mk({1, 2}), result));
  EXPECT_TRUE(member(mk({0, 3}), result));
  for (std::uint64_t total = 0; total <= 8; ++total) {
    if (total == 3) continue;
    for (const Marking& m : enumerate_markings(2, total))
      EXPECT_FALSE(member(m, result));
  }
}

// Fixpoint soundness and completeness at desk scale: membership of
// pre*/post* agrees with explicit-state reachability for every marking of
// small total.
TEST(Fixpoint, AgreesWithOracleOnRandomInstances) {
  testutil::Rng rng(105);
  for (int iter = 0; iter < 60; ++iter) {
    IONet net = testutil::random_net(rng);
    std::size_t n = net.place_count();
    CountingSet s = testutil::random_set(rng, n);
    CountingSet pre = pre_star(net, s);
    CountingSet post = post_star(net, s);
    IONet rev = net.reversed();
    for (std::uint64_t total = 0; total <= 7; ++total) {
      Stratum st(n, total);
      auto can_reach_s = stratum_forward_closure(
          rev, st, [&](const Marking& x) { return member(x, s); });
      auto from_s = stratum_forward_closure(
          net, st, [&](const Marking& x) { return member(x, s); });
      for (std::uint64_t i = 0; i < st.size(); ++i) {
        Marking m = st.unrank(i);
        EXPECT_EQ(member(m, pre), can_reach_s[i] != 0)
            << "pre* mismatch at iter " << iter;
        EXPECT_EQ(member(m, post), from_s[i] != 0)
            << "post* mismatch at iter " << iter;
      }
    }
  }
}

TEST(Fixpoint, Monotone) {
  testutil::Rng rng(106);
  for (int iter = 0; iter < 60; ++iter) {
    IONet net = testutil::random_net(rng);
    std::size_t n = net.place_count();
    CountingSet s = testutil::random_set(rng, n);
    CountingSet s2 = testutil::random_set(rng, n);
    EXPECT_TRUE(includes(pre_star(net, unite(s, s2)), pre_star(net, s)));
  }
}

TEST(Fixpoint, Idempotent) {
  testutil::Rng rng(107);
  for (int iter = 0; iter < 40; ++iter) {
    IONet net = testutil::random_net(rng);
    std::size_t n = net.place_count();
    CountingSet s = testutil::random_set(rng, n);
    CountingSet once = pre_star(net, s);
    CountingSet twice = pre_star(net, once);
    for (int probe = 0; probe < 30; ++probe) {
      Marking m = testutil::random_marking(rng, n, 6);
      EXPECT_EQ(member(m, once), member(m, twice));
    }
  }
}

}  // namespace
