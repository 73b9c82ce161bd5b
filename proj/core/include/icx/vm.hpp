#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "icx/env.hpp"

namespace icx {

/// Dimensions a program is decoded against; address widths derive from them.
struct EnvDims {
  std::uint32_t states = 1;
  std::uint32_t actions = 1;

  static EnvDims of(const Environment& env) {
    return {env.state_count(), env.action_count()};
  }
  bool operator==(const EnvDims&) const = default;
};

/// Smallest b with 2^b >= x (x >= 1). ceil_log2(1) == 0.
std::uint32_t ceil_log2(std::uint32_t x);

/// Address width of an EMIT operand: ceil_log2(max(m, 2)).
std::uint32_t action_bits(std::uint32_t actions);
/// Address width of a GOTO operand: ceil_log2(max(n, 2)).
std::uint32_t state_bits(std::uint32_t states);

/// Elias gamma code of v >= 1, appended as '0'/'1' characters.
void append_gamma(std::string& bits, std::uint64_t v);
std::string gamma_code(std::uint64_t v);
/// Code length in bits: 2*floor(log2 v) + 1.
std::uint32_t gamma_len(std::uint64_t v);

void append_fixed(std::string& bits, std::uint32_t value, std::uint32_t width);

/// Bare programs carry all knowledge in their own bits; Oracle programs may
/// additionally query the transition function while running (GOTO).
enum class Regime { Bare, Oracle };

struct Instruction {
  enum class Kind : std::uint8_t { Halt, Emit, Repeat, Goto };
  Kind kind = Kind::Halt;
  std::uint64_t arg = 0;       // Emit: action. Goto: target. Repeat: count.
  std::uint32_t body_len = 0;  // Repeat: number of following instructions.

  bool operator==(const Instruction&) const = default;
};

/// Instruction encoding ('A' = action_bits, 'S' = state_bits):
///   00                      HALT (terminates the program; exactly one, last)
///   01 a:A                  EMIT action a
///   10 gamma(count-1) gamma(body_len)   REPEAT, count >= 2, body_len >= 1
///   11 t:S                  GOTO target t (oracle regime only)
/// A program's bits must be consumed exactly, ending at HALT. REPEAT bodies
/// are the next body_len decoded instructions and must close before HALT;
/// nesting is allowed but bodies may not cross.
struct Program {
  std::string bits;               // '0'/'1' characters
  std::vector<Instruction> code;  // decoded form, ends with Halt

  int length_bits() const { return static_cast<int>(bits.size()); }
  bool uses_oracle() const;

  bool operator==(const Program&) const = default;
};

class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::size_t position, const std::string& reason)
      : std::runtime_error("decode error at bit " + std::to_string(position) +
                           ": " + reason),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Decode a bit string against env dimensions. Throws DecodeError.
std::vector<Instruction> decode(std::string_view bits, EnvDims dims);

/// Non-throwing variant for hot loops; returns false on any decode error.
bool try_decode(std::string_view bits, EnvDims dims,
                std::vector<Instruction>& out);

Program make_program(std::string bits, EnvDims dims);

/// The canonical compilation of a plain action sequence: one EMIT per
/// action, then HALT.
Program compile_action_seq(const ActionSeq& actions, EnvDims dims);

/// One instruction per line, e.g. "EMIT 1", "REPEAT 3 2", "GOTO 4", "HALT".
std::string disassemble(const Program& program);

enum class Fault : std::uint8_t {
  None,
  OracleInBare,        // GOTO dispatched under the bare regime
  StepBudgetExceeded,  // ran out of steps
  UnreachableTarget,   // GOTO to a state unreachable from the current one
};

std::string_view fault_name(Fault fault);

struct ExecOutcome {
  Fault fault = Fault::None;
  ActionSeq actions;       // valid only when ok()
  StateId end_state = 0;   // valid only when ok()
  std::int64_t steps_used = 0;

  bool ok() const { return fault == Fault::None; }
};

/// Run a decoded program from `start`. Every instruction dispatch costs one
/// step and every emitted action costs one more. Both regimes track the
/// simulated current state; only the oracle regime may plan with it (GOTO
/// appends the BFS-shortest action sequence to its target).
ExecOutcome execute(const Program& program, const Environment& env,
                    Regime regime, StateId start, std::int64_t step_budget);

enum class EnumControl { Continue, Stop };

/// Visit every valid program of length 2..max_bits in (length ascending,
/// bits lexicographic, 0 < 1) order. The bare regime excludes programs
/// containing GOTO. Generation walks the code tree directly instead of
/// scanning all bit strings, so cost is proportional to the number of valid
/// programs, not 2^max_bits.
void for_each_program(EnvDims dims, int max_bits, Regime regime,
                      const std::function<EnumControl(const Program&)>& visit);

std::vector<Program> enumerate_programs(EnvDims dims, int max_bits,
                                        Regime regime);

}  // namespace icx
