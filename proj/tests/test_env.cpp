#include "icx/env.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "icx/generators.hpp"
#include "oracles.hpp"

namespace icx {
namespace {

constexpr const char* kCycle3Text =
    "env c3\nstates 3\nactions 1\nt 0 0 1\nt 1 0 2\nt 2 0 0";

TEST(ParseEnv, SmallestCycle) {
  const Environment env = parse_env(kCycle3Text);
  EXPECT_EQ(env.name(), "c3");
  EXPECT_EQ(env.state_count(), 3u);
  EXPECT_EQ(env.action_count(), 1u);
  EXPECT_EQ(env.step(0, 0), 1u);
  EXPECT_EQ(env.step(1, 0), 2u);
  EXPECT_EQ(env.step(2, 0), 0u);
}

TEST(ParseEnv, MissingTransitionNamesThePair) {
  const char* text = "env c3\nstates 3\nactions 1\nt 0 0 1\nt 1 0 2";
  try {
    parse_env(text);
    FAIL() << "expected EnvParseError";
  } catch (const EnvParseError& e) {
    EXPECT_EQ(e.kind(), EnvParseErrorKind::MissingTransition);
    EXPECT_NE(std::string(e.what()).find("state 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("action 0"), std::string::npos);
  }
}

TEST(ParseEnv, DuplicateTransition) {
  const char* text =
      "env d\nstates 2\nactions 1\nt 0 0 1\nt 1 0 0\nt 0 0 0";
  try {
    parse_env(text);
    FAIL() << "expected EnvParseError";
  } catch (const EnvParseError& e) {
    EXPECT_EQ(e.kind(), EnvParseErrorKind::DuplicateTransition);
    EXPECT_EQ(e.line(), 5);
  }
}

TEST(ParseEnv, IndexOutOfRange) {
  const char* text = "env d\nstates 2\nactions 1\nt 0 0 5\nt 1 0 0";
  try {
    parse_env(text);
    FAIL() << "expected EnvParseError";
  } catch (const EnvParseError& e) {
    EXPECT_EQ(e.kind(), EnvParseErrorKind::IndexOutOfRange);
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(ParseEnv, MalformedLine) {
  const char* text = "env d\nstates 2\nactions 1\nt 0 zero 1\nt 1 0 0";
  try {
    parse_env(text);
    FAIL() << "expected EnvParseError";
  } catch (const EnvParseError& e) {
    EXPECT_EQ(e.kind(), EnvParseErrorKind::MalformedLine);
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(ParseEnv, CommentsAndBlankLines) {
  const char* text =
      "# comment\nenv c1  # trailing\n\nstates 1\nactions 1\n"
      "t 0 0 0 # loop\n";
  const Environment env = parse_env(text);
  EXPECT_EQ(env.state_count(), 1u);
}

TEST(ParseEnv, SerializeRoundTripsGeneratedEnvs) {
  const Environment corridor = gated_corridor("101");
  EXPECT_EQ(parse_env(serialize_env(corridor)), corridor);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Environment env =
        random_env(1 + seed % 7, 1 + seed % 3, seed);
    EXPECT_EQ(parse_env(serialize_env(env)), env);
  }
}

TEST(Reachability, CycleIsStronglyConnected) {
  const Environment env = parse_env(kCycle3Text);
  EXPECT_EQ(reachable_set(env, 0), (std::vector<StateId>{0, 1, 2}));
}

TEST(Reachability, CorridorFailStateIsAbsorbing) {
  const Environment env = gated_corridor("1");
  const StateId fail = corridor_states(1).fail;
  EXPECT_EQ(reachable_set(env, fail), std::vector<StateId>{fail});
}

TEST(Reachability, MatchesBruteForceClosure) {
  const Environment env = random_env(5, 2, 7);
  const auto expected = testing::brute_reachable(env, 0, 5);
  const auto got = reachable_set(env, 0);
  EXPECT_TRUE(std::equal(got.begin(), got.end(), expected.begin(),
                         expected.end()));
}

TEST(Reachability, SetIsAFixedPoint) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Environment env = random_env(2 + seed % 6, 1 + seed % 3, seed);
    for (StateId s = 0; s < env.state_count(); ++s) {
      const auto reach = reachable_set(env, s);
      for (StateId u : reach) {
        for (ActionId a = 0; a < env.action_count(); ++a) {
          EXPECT_TRUE(std::binary_search(reach.begin(), reach.end(),
                                         env.step(u, a)));
        }
      }
    }
  }
}

TEST(Diameter, KnownValues) {
  EXPECT_EQ(diameter(parse_env(kCycle3Text)), 2u);
  EXPECT_EQ(diameter(parse_env("env one\nstates 1\nactions 1\nt 0 0 0")), 0u);
  // A corridor of n gates takes n+1 actions start to goal.
  EXPECT_EQ(diameter(gated_corridor("1")), 2u);
  EXPECT_EQ(diameter(gated_corridor("10110")), 6u);
}

TEST(ShortestActionSeq, LexicographicSmallestAmongShortest) {
  // Both actions of the last corridor cell reach the goal; the witness must
  // take action 0 there.
  const Environment env = gated_corridor("10");
  const auto seq = shortest_action_seq(env, 0, corridor_states(2).goal);
  ASSERT_TRUE(seq.has_value());
  EXPECT_EQ(*seq, (ActionSeq{1, 0, 0}));
}

TEST(ShortestActionSeq, UnreachableIsNullopt) {
  const Environment env = gated_corridor("1");
  EXPECT_FALSE(
      shortest_action_seq(env, corridor_states(1).fail, 0).has_value());
}

TEST(ApplyActions, FollowsTable) {
  const Environment env = parse_env(kCycle3Text);
  EXPECT_EQ(apply_actions(env, 0, {0, 0}), 2u);
  EXPECT_EQ(apply_actions(env, 0, {}), 0u);
  EXPECT_THROW(apply_actions(env, 7, {}), DomainError);
  EXPECT_THROW(apply_actions(env, 0, {3}), DomainError);
}

}  // namespace
}  // namespace icx
