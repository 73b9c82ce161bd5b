#include "icx/vm.hpp"

#include <gtest/gtest.h>

#include <set>

#include "icx/generators.hpp"
#include "oracles.hpp"

namespace icx {
namespace {

TEST(Gamma, KnownCodes) {
  EXPECT_EQ(gamma_code(1), "1");
  EXPECT_EQ(gamma_code(2), "010");
  EXPECT_EQ(gamma_code(3), "011");
  EXPECT_EQ(gamma_code(4), "00100");
  EXPECT_EQ(gamma_code(13), "0001101");
  EXPECT_EQ(gamma_len(1), 1u);
  EXPECT_EQ(gamma_len(4), 5u);
}

TEST(Bits, Widths) {
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(5), 3u);
  EXPECT_EQ(action_bits(1), 1u);  // addresses are at least one bit wide
  EXPECT_EQ(action_bits(2), 1u);
  EXPECT_EQ(action_bits(3), 2u);
  EXPECT_EQ(state_bits(5), 3u);
}

TEST(Decode, HaltOnly) {
  const auto code = decode("00", {3, 2});
  ASSERT_EQ(code.size(), 1u);
  EXPECT_EQ(code[0].kind, Instruction::Kind::Halt);
}

TEST(Decode, EmitThenHalt) {
  // m=2 gives one address bit: 01|1 00 = EMIT 1, HALT in five bits.
  const auto code = decode("01100", {3, 2});
  ASSERT_EQ(code.size(), 2u);
  EXPECT_EQ(code[0].kind, Instruction::Kind::Emit);
  EXPECT_EQ(code[0].arg, 1u);
  EXPECT_EQ(code[1].kind, Instruction::Kind::Halt);
}

TEST(Decode, TruncatedEmit) {
  EXPECT_THROW(decode("01", {3, 2}), DecodeError);
}

TEST(Decode, TrailingBitsRejected) {
  EXPECT_THROW(decode("0000", {3, 2}), DecodeError);
}

TEST(Decode, EmitAddressOutOfRange) {
  // m=3 uses two address bits; action 3 does not exist.
  EXPECT_THROW(decode("011100", {3, 3}), DecodeError);
}

TEST(Decode, GotoTargetOutOfRange) {
  // n=3 uses two address bits; target 3 does not exist.
  EXPECT_THROW(decode("111100", {3, 2}), DecodeError);
}

TEST(Decode, BodyMustCloseBeforeHalt) {
  // REPEAT 2 1 with no body instruction before HALT.
  EXPECT_THROW(decode("101100", {3, 2}), DecodeError);
}

TEST(Execute, HaltLeavesStateAlone) {
  const Environment env = cycle_env(3);
  const Program p = make_program("00", EnvDims::of(env));
  const ExecOutcome out = execute(p, env, Regime::Bare, 1, 100);
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(out.actions.empty());
  EXPECT_EQ(out.end_state, 1u);
}

TEST(Execute, RepeatUnrollsOnCycle) {
  // REPEAT 2 1, EMIT 0, HALT = 10|1|1 01|0 00 (nine bits, m=1).
  const Environment env = cycle_env(3);
  const Program p = make_program("101101000", EnvDims::of(env));
  ASSERT_EQ(p.code.size(), 3u);
  EXPECT_EQ(p.code[0].kind, Instruction::Kind::Repeat);
  EXPECT_EQ(p.code[0].arg, 2u);
  EXPECT_EQ(p.code[0].body_len, 1u);
  const ExecOutcome out = execute(p, env, Regime::Bare, 0, 100);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.actions, (ActionSeq{0, 0}));
  EXPECT_EQ(out.end_state, 2u);
}

TEST(Execute, NestedRepeat) {
  // REPEAT 2 2 [ REPEAT 2 1 [ EMIT 0 ] ] HALT -> four actions.
  const Environment env = cycle_env(5);
  std::string bits = "10";
  append_gamma(bits, 1);  // count-1
  append_gamma(bits, 2);  // body
  bits += "10";
  append_gamma(bits, 1);
  append_gamma(bits, 1);
  bits += "010";  // EMIT 0
  bits += "00";
  const Program p = make_program(bits, EnvDims::of(env));
  const ExecOutcome out = execute(p, env, Regime::Bare, 0, 100);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out.actions.size(), 4u);
  EXPECT_EQ(out.end_state, 4u);
}

TEST(Execute, OracleGotoEmitsShortestPath) {
  const Environment env = gated_corridor("10");
  const auto ids = corridor_states(2);
  std::string bits = "11";
  append_fixed(bits, ids.goal, state_bits(env.state_count()));
  bits += "00";
  const Program p = make_program(bits, EnvDims::of(env));
  EXPECT_EQ(p.length_bits(), 7);

  const ExecOutcome oracle = execute(p, env, Regime::Oracle, 0, 100);
  ASSERT_TRUE(oracle.ok());
  EXPECT_EQ(oracle.actions, (ActionSeq{1, 0, 0}));
  EXPECT_EQ(oracle.end_state, ids.goal);

  const ExecOutcome bare = execute(p, env, Regime::Bare, 0, 100);
  EXPECT_EQ(bare.fault, Fault::OracleInBare);
}

TEST(Execute, GotoUnreachableTargetFaults) {
  const Environment env = gated_corridor("1");
  const auto ids = corridor_states(1);
  std::string bits = "11";
  append_fixed(bits, 0, state_bits(env.state_count()));
  bits += "00";
  const Program p = make_program(bits, EnvDims::of(env));
  const ExecOutcome out = execute(p, env, Regime::Oracle, ids.fail, 100);
  EXPECT_EQ(out.fault, Fault::UnreachableTarget);
}

TEST(Execute, StepBudgetExceeded) {
  // REPEAT 9 1 [EMIT 0]: 9 dispatches + 9 actions + 1 > 10.
  const Environment env = cycle_env(3);
  std::string bits = "10";
  append_gamma(bits, 8);
  append_gamma(bits, 1);
  bits += "010";
  bits += "00";
  const Program p = make_program(bits, EnvDims::of(env));
  const ExecOutcome out = execute(p, env, Regime::Bare, 0, 10);
  EXPECT_EQ(out.fault, Fault::StepBudgetExceeded);
  EXPECT_LE(out.steps_used, 10);
}

TEST(Execute, Deterministic) {
  const Environment env = random_env(6, 2, 11);
  const auto programs = enumerate_programs(EnvDims::of(env), 9, Regime::Oracle);
  for (const Program& p : programs) {
    const ExecOutcome a = execute(p, env, Regime::Oracle, 2, 50);
    const ExecOutcome b = execute(p, env, Regime::Oracle, 2, 50);
    EXPECT_EQ(a.fault, b.fault);
    EXPECT_EQ(a.actions, b.actions);
    EXPECT_EQ(a.steps_used, b.steps_used);
    if (a.ok()) EXPECT_EQ(a.end_state, b.end_state);
  }
}

TEST(Enumerate, OnlyHaltAtTwoBits) {
  const auto programs = enumerate_programs({3, 2}, 2, Regime::Bare);
  ASSERT_EQ(programs.size(), 1u);
  EXPECT_EQ(programs[0].bits, "00");
}

TEST(Enumerate, FiveBitBareProgramsContainBothEmits) {
  const auto programs = enumerate_programs({3, 2}, 5, Regime::Bare);
  std::set<std::string> bits;
  for (const Program& p : programs) {
    bits.insert(p.bits);
    EXPECT_FALSE(p.uses_oracle());
  }
  EXPECT_TRUE(bits.count("01000"));
  EXPECT_TRUE(bits.count("01100"));
}

TEST(Enumerate, MatchesBruteForceDecodeInOrder) {
  // Completeness, validity and (length, lex) ordering in one comparison,
  // against decoding every bit string.
  const std::vector<EnvDims> dims_set = {{3, 2}, {3, 3}, {2, 1}, {5, 2}};
  for (const EnvDims dims : dims_set) {
    for (const Regime regime : {Regime::Bare, Regime::Oracle}) {
      const auto expected = testing::brute_valid_programs(dims, 10, regime);
      const auto got = enumerate_programs(dims, 10, regime);
      ASSERT_EQ(got.size(), expected.size())
          << "dims " << dims.states << "x" << dims.actions;
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].bits, expected[i]);
      }
    }
  }
}

TEST(Enumerate, NoValidProgramIsAPrefixOfAnother) {
  const EnvDims dims{3, 2};
  const auto programs = testing::brute_valid_programs(dims, 12, Regime::Oracle);
  std::set<std::string> valid(programs.begin(), programs.end());
  for (const std::string& p : programs) {
    for (std::size_t len = 2; len < p.size(); ++len) {
      EXPECT_FALSE(valid.count(p.substr(0, len)))
          << p << " has a valid proper prefix";
    }
  }
}

TEST(Enumerate, BareProgramsAreOracleValidWithIdenticalOutput) {
  const Environment env = random_env(4, 2, 3);
  const EnvDims dims = EnvDims::of(env);
  const auto bare = enumerate_programs(dims, 10, Regime::Bare);
  const auto oracle = enumerate_programs(dims, 10, Regime::Oracle);
  std::set<std::string> oracle_bits;
  for (const Program& p : oracle) oracle_bits.insert(p.bits);
  for (const Program& p : bare) {
    EXPECT_TRUE(oracle_bits.count(p.bits));
    const ExecOutcome a = execute(p, env, Regime::Bare, 0, 1000);
    const ExecOutcome b = execute(p, env, Regime::Oracle, 0, 1000);
    EXPECT_EQ(a.fault, b.fault);
    EXPECT_EQ(a.actions, b.actions);
  }
}

TEST(CompileActionSeq, CanonicalEmitChain) {
  const Program p = compile_action_seq({1, 0}, {3, 2});
  EXPECT_EQ(p.bits, "01101000");
  EXPECT_EQ(p.length_bits(), 8);
  const auto roundtrip = decode(p.bits, {3, 2});
  EXPECT_EQ(roundtrip, p.code);
}

TEST(Disassemble, Mnemonics) {
  const Program p = make_program("101101000", {3, 1});
  EXPECT_EQ(disassemble(p), "REPEAT 2 1\nEMIT 0\nHALT\n");
}

}  // namespace
}  // namespace icx
