#include "icx/vm.hpp"

#include <algorithm>
#include <optional>

namespace icx {

std::uint32_t ceil_log2(std::uint32_t x) {
  std::uint32_t bits = 0;
  while ((1u << bits) < x) ++bits;
  return bits;
}

std::uint32_t action_bits(std::uint32_t actions) {
  return ceil_log2(std::max(actions, 2u));
}

std::uint32_t state_bits(std::uint32_t states) {
  return ceil_log2(std::max(states, 2u));
}

void append_gamma(std::string& bits, std::uint64_t v) {
  std::uint32_t klass = 0;
  while ((v >> (klass + 1)) != 0) ++klass;
  bits.append(klass, '0');
  for (std::uint32_t i = klass + 1; i-- > 0;) {
    bits.push_back(((v >> i) & 1) ? '1' : '0');
  }
}

std::string gamma_code(std::uint64_t v) {
  std::string bits;
  append_gamma(bits, v);
  return bits;
}

std::uint32_t gamma_len(std::uint64_t v) {
  std::uint32_t klass = 0;
  while ((v >> (klass + 1)) != 0) ++klass;
  return 2 * klass + 1;
}

void append_fixed(std::string& bits, std::uint32_t value, std::uint32_t width) {
  for (std::uint32_t i = width; i-- > 0;) {
    bits.push_back(((value >> i) & 1) ? '1' : '0');
  }
}

bool Program::uses_oracle() const {
  return std::any_of(code.begin(), code.end(), [](const Instruction& ins) {
    return ins.kind == Instruction::Kind::Goto;
  });
}

namespace {

// Sequential decoder shared by decode() and try_decode().
struct Decoder {
  std::string_view bits;
  std::size_t pos = 0;
  std::size_t error_pos = 0;
  std::string error;

  bool fail(std::size_t at, std::string why) {
    error_pos = at;
    error = std::move(why);
    return false;
  }

  bool read_bit(bool& out) {
    if (pos >= bits.size()) return fail(pos, "truncated: expected more bits");
    const char c = bits[pos];
    if (c != '0' && c != '1') return fail(pos, "invalid character in bit string");
    out = (c == '1');
    ++pos;
    return true;
  }

  bool read_fixed(std::uint32_t width, std::uint32_t& out) {
    out = 0;
    for (std::uint32_t i = 0; i < width; ++i) {
      bool b = false;
      if (!read_bit(b)) return false;
      out = (out << 1) | (b ? 1u : 0u);
    }
    return true;
  }

  bool read_gamma(std::uint64_t& out) {
    const std::size_t at = pos;
    std::uint32_t klass = 0;
    bool b = false;
    while (true) {
      if (!read_bit(b)) return false;
      if (b) break;
      if (++klass > 60) return fail(at, "gamma code too long");
    }
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < klass; ++i) {
      if (!read_bit(b)) return false;
      v = (v << 1) | (b ? 1u : 0u);
    }
    out = v;
    return true;
  }

  bool run(EnvDims dims, std::vector<Instruction>& out) {
    out.clear();
    const std::uint32_t abits = action_bits(dims.actions);
    const std::uint32_t sbits = state_bits(dims.states);
    // Open REPEAT bodies as flat end indices, innermost (smallest) last.
    std::vector<std::size_t> body_ends;

    while (true) {
      const std::size_t at = pos;
      std::uint32_t op = 0;
      if (!read_fixed(2, op)) return false;
      const std::size_t idx = out.size();
      switch (op) {
        case 0b00: {  // HALT
          if (!body_ends.empty()) {
            return fail(at, "REPEAT body extends past HALT");
          }
          out.push_back({Instruction::Kind::Halt, 0, 0});
          if (pos != bits.size()) {
            return fail(pos, "trailing bits after HALT");
          }
          return true;
        }
        case 0b01: {  // EMIT
          std::uint32_t a = 0;
          if (!read_fixed(abits, a)) return false;
          if (a >= dims.actions) {
            return fail(at, "EMIT action " + std::to_string(a) +
                                " out of range");
          }
          out.push_back({Instruction::Kind::Emit, a, 0});
          break;
        }
        case 0b10: {  // REPEAT
          std::uint64_t count_minus_1 = 0;
          std::uint64_t body = 0;
          if (!read_gamma(count_minus_1)) return false;
          if (!read_gamma(body)) return false;
          if (body > (1u << 30)) {
            return fail(at, "REPEAT body length implausibly large");
          }
          const std::size_t end = idx + static_cast<std::size_t>(body);
          if (!body_ends.empty() && end > body_ends.back()) {
            return fail(at, "REPEAT body crosses enclosing body");
          }
          out.push_back({Instruction::Kind::Repeat, count_minus_1 + 1,
                         static_cast<std::uint32_t>(body)});
          body_ends.push_back(end);
          continue;  // the REPEAT itself never closes a body
        }
        case 0b11: {  // GOTO
          std::uint32_t t = 0;
          if (!read_fixed(sbits, t)) return false;
          if (t >= dims.states) {
            return fail(at, "GOTO target " + std::to_string(t) +
                                " out of range");
          }
          out.push_back({Instruction::Kind::Goto, t, 0});
          break;
        }
      }
      while (!body_ends.empty() && body_ends.back() == idx) {
        body_ends.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<Instruction> decode(std::string_view bits, EnvDims dims) {
  Decoder dec;
  dec.bits = bits;
  std::vector<Instruction> out;
  if (!dec.run(dims, out)) throw DecodeError(dec.error_pos, dec.error);
  return out;
}

bool try_decode(std::string_view bits, EnvDims dims,
                std::vector<Instruction>& out) {
  Decoder dec;
  dec.bits = bits;
  return dec.run(dims, out);
}

Program make_program(std::string bits, EnvDims dims) {
  Program p;
  p.code = decode(bits, dims);
  p.bits = std::move(bits);
  return p;
}

Program compile_action_seq(const ActionSeq& actions, EnvDims dims) {
  const std::uint32_t abits = action_bits(dims.actions);
  Program p;
  p.bits.reserve(actions.size() * (2 + abits) + 2);
  for (ActionId a : actions) {
    p.bits += "01";
    append_fixed(p.bits, a, abits);
    p.code.push_back({Instruction::Kind::Emit, a, 0});
  }
  p.bits += "00";
  p.code.push_back({Instruction::Kind::Halt, 0, 0});
  return p;
}

std::string disassemble(const Program& program) {
  std::string out;
  for (const Instruction& ins : program.code) {
    switch (ins.kind) {
      case Instruction::Kind::Halt:
        out += "HALT\n";
        break;
      case Instruction::Kind::Emit:
        out += "EMIT " + std::to_string(ins.arg) + "\n";
        break;
      case Instruction::Kind::Repeat:
        out += "REPEAT " + std::to_string(ins.arg) + " " +
               std::to_string(ins.body_len) + "\n";
        break;
      case Instruction::Kind::Goto:
        out += "GOTO " + std::to_string(ins.arg) + "\n";
        break;
    }
  }
  return out;
}

std::string_view fault_name(Fault fault) {
  switch (fault) {
    case Fault::None: return "None";
    case Fault::OracleInBare: return "OracleInBare";
    case Fault::StepBudgetExceeded: return "StepBudgetExceeded";
    case Fault::UnreachableTarget: return "UnreachableTarget";
  }
  return "Unknown";
}

ExecOutcome execute(const Program& program, const Environment& env,
                    Regime regime, StateId start, std::int64_t step_budget) {
  check_state(env, start, "start");
  if (step_budget < 1) {
    throw std::invalid_argument("step budget must be at least 1");
  }

  ExecOutcome outcome;
  StateId cur = start;

  struct Frame {
    std::size_t first;
    std::size_t last;
    std::uint64_t remaining;
  };
  std::vector<Frame> frames;

  const auto charge = [&](std::int64_t k) {
    if (outcome.steps_used + k > step_budget) {
      outcome.steps_used = step_budget;
      return false;
    }
    outcome.steps_used += k;
    return true;
  };

  std::size_t pc = 0;
  while (true) {
    const Instruction& ins = program.code[pc];
    if (!charge(1)) {
      outcome.fault = Fault::StepBudgetExceeded;
      return outcome;
    }
    switch (ins.kind) {
      case Instruction::Kind::Halt:
        outcome.end_state = cur;
        return outcome;
      case Instruction::Kind::Emit: {
        if (!charge(1)) {
          outcome.fault = Fault::StepBudgetExceeded;
          return outcome;
        }
        const auto a = static_cast<ActionId>(ins.arg);
        outcome.actions.push_back(a);
        cur = env.step(cur, a);
        ++pc;
        break;
      }
      case Instruction::Kind::Repeat:
        frames.push_back({pc + 1, pc + ins.body_len, ins.arg});
        ++pc;
        break;
      case Instruction::Kind::Goto: {
        if (regime == Regime::Bare) {
          outcome.fault = Fault::OracleInBare;
          return outcome;
        }
        const auto path =
            shortest_action_seq(env, cur, static_cast<StateId>(ins.arg));
        if (!path) {
          outcome.fault = Fault::UnreachableTarget;
          return outcome;
        }
        for (ActionId a : *path) {
          if (!charge(1)) {
            outcome.fault = Fault::StepBudgetExceeded;
            return outcome;
          }
          outcome.actions.push_back(a);
          cur = env.step(cur, a);
        }
        ++pc;
        break;
      }
    }
    while (!frames.empty() && pc > frames.back().last) {
      Frame& top = frames.back();
      if (--top.remaining > 0) {
        pc = top.first;
        break;
      }
      frames.pop_back();
    }
  }
}

namespace {

// Depth-first generation of valid programs of one exact bit length, visiting
// instruction alternatives in the lexicographic order of their encodings.
// The encoding set at any boundary is prefix-free, so this equals bit-string
// lexicographic order over the completed programs.
class Generator {
 public:
  Generator(EnvDims dims, Regime regime,
            const std::function<EnumControl(const Program&)>& visit)
      : dims_(dims), regime_(regime), visit_(visit),
        abits_(action_bits(dims.actions)), sbits_(state_bits(dims.states)) {
    fill_min_ = 2 + static_cast<std::size_t>(abits_);
    if (regime == Regime::Oracle) {
      fill_min_ = std::min(fill_min_, 2 + static_cast<std::size_t>(sbits_));
    }
  }

  /// Returns false when the visitor asked to stop.
  bool run(int target_bits) {
    target_ = static_cast<std::size_t>(target_bits);
    program_.bits.clear();
    program_.code.clear();
    body_ends_.clear();
    return dfs();
  }

 private:
  // Flat instructions still owed before every open body is closed.
  std::size_t owed() const {
    if (body_ends_.empty()) return 0;
    return body_ends_.front() - program_.code.size() + 1;
  }

  bool dfs() {
    const std::size_t used = program_.bits.size();
    const std::size_t remaining = target_ - used;
    if (owed() * fill_min_ + 2 > remaining) return true;  // cannot complete

    // HALT: only legal completion, and only with exactly two bits left.
    if (body_ends_.empty() && remaining == 2) {
      program_.bits += "00";
      program_.code.push_back({Instruction::Kind::Halt, 0, 0});
      const bool keep_going = visit_(program_) == EnumControl::Continue;
      program_.bits.resize(used);
      program_.code.pop_back();
      return keep_going;
    }

    const std::size_t idx = program_.code.size();

    // EMIT a, ascending.
    if (2 + abits_ + 2 <= remaining) {
      for (std::uint32_t a = 0; a < dims_.actions; ++a) {
        program_.bits += "01";
        append_fixed(program_.bits, a, abits_);
        program_.code.push_back({Instruction::Kind::Emit, a, 0});
        const auto closed = close_bodies(idx);
        const bool keep_going = dfs();
        reopen_bodies(closed);
        program_.code.pop_back();
        program_.bits.resize(used);
        if (!keep_going) return false;
      }
    }

    // REPEAT (count, body_len), ordered by the code bits of
    // gamma(count-1) then gamma(body_len): longer gamma classes first,
    // values ascending within a class.
    const std::size_t max_klass = remaining / 2;
    for (std::size_t jc = max_klass + 1; jc-- > 0;) {
      const std::size_t clen = 2 * jc + 1;
      if (2 + clen + 1 + fill_min_ + 2 > remaining) continue;
      for (std::uint64_t cm1 = std::uint64_t{1} << jc;
           cm1 < (std::uint64_t{2} << jc); ++cm1) {
        for (std::size_t jb = max_klass + 1; jb-- > 0;) {
          const std::size_t blen = 2 * jb + 1;
          const std::size_t header = 2 + clen + blen;
          if (header + fill_min_ + 2 > remaining) continue;
          // Body must close inside the innermost open body.
          std::uint64_t b_max =
              body_ends_.empty()
                  ? std::uint64_t(target_)  // bounded by length below
                  : std::uint64_t(body_ends_.back() - idx);
          // Instructions still owed after this one: the enclosing body's
          // remainder if any, otherwise the new body itself.
          if (body_ends_.empty()) {
            const std::uint64_t by_len =
                (remaining - header - 2) / fill_min_;
            b_max = std::min(b_max, by_len);
          } else if (header + (owed() - 1) * fill_min_ + 2 > remaining) {
            continue;
          }
          const std::uint64_t b_lo = std::uint64_t{1} << jb;
          const std::uint64_t b_hi =
              std::min((std::uint64_t{2} << jb) - 1, b_max);
          for (std::uint64_t b = b_lo; b <= b_hi; ++b) {
            program_.bits += "10";
            append_gamma(program_.bits, cm1);
            append_gamma(program_.bits, b);
            program_.code.push_back({Instruction::Kind::Repeat, cm1 + 1,
                                     static_cast<std::uint32_t>(b)});
            body_ends_.push_back(idx + static_cast<std::size_t>(b));
            const bool keep_going = dfs();
            body_ends_.pop_back();
            program_.code.pop_back();
            program_.bits.resize(used);
            if (!keep_going) return false;
          }
        }
      }
    }

    // GOTO t, ascending; oracle regime only.
    if (regime_ == Regime::Oracle && 2 + sbits_ + 2 <= remaining) {
      for (std::uint32_t t = 0; t < dims_.states; ++t) {
        program_.bits += "11";
        append_fixed(program_.bits, t, sbits_);
        program_.code.push_back({Instruction::Kind::Goto, t, 0});
        const auto closed = close_bodies(idx);
        const bool keep_going = dfs();
        reopen_bodies(closed);
        program_.code.pop_back();
        program_.bits.resize(used);
        if (!keep_going) return false;
      }
    }

    return true;
  }

  std::vector<std::size_t> close_bodies(std::size_t idx) {
    std::vector<std::size_t> closed;
    while (!body_ends_.empty() && body_ends_.back() == idx) {
      closed.push_back(body_ends_.back());
      body_ends_.pop_back();
    }
    return closed;
  }

  void reopen_bodies(const std::vector<std::size_t>& closed) {
    for (auto it = closed.rbegin(); it != closed.rend(); ++it) {
      body_ends_.push_back(*it);
    }
  }

  EnvDims dims_;
  Regime regime_;
  const std::function<EnumControl(const Program&)>& visit_;
  std::uint32_t abits_;
  std::uint32_t sbits_;
  std::size_t fill_min_;
  std::size_t target_ = 0;
  Program program_;
  std::vector<std::size_t> body_ends_;
};

}  // namespace

void for_each_program(EnvDims dims, int max_bits, Regime regime,
                      const std::function<EnumControl(const Program&)>& visit) {
  if (max_bits < 2) {
    throw std::invalid_argument("max_bits must be at least 2");
  }
  Generator gen(dims, regime, visit);
  for (int length = 2; length <= max_bits; ++length) {
    if (!gen.run(length)) return;
  }
}

std::vector<Program> enumerate_programs(EnvDims dims, int max_bits,
                                        Regime regime) {
  std::vector<Program> out;
  for_each_program(dims, max_bits, regime, [&](const Program& p) {
    out.push_back(p);
    return EnumControl::Continue;
  });
  return out;
}

}  // namespace icx
