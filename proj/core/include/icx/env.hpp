#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace icx {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
using ActionSeq = std::vector<ActionId>;

/// A deterministic finite transition system (S, A, T) with dense integer
/// states and actions. Immutable after construction; safe to share across
/// threads.
class Environment {
 public:
  /// `table` is row-major: table[s * action_count + a] = T(s, a).
  /// Throws std::invalid_argument on dimension or range violations.
  Environment(std::string name, std::uint32_t state_count,
              std::uint32_t action_count, std::vector<StateId> table);

  const std::string& name() const { return name_; }
  std::uint32_t state_count() const { return n_; }
  std::uint32_t action_count() const { return m_; }

  StateId step(StateId s, ActionId a) const { return table_[s * m_ + a]; }
  const std::vector<StateId>& table() const { return table_; }

  bool operator==(const Environment& other) const = default;

 private:
  std::string name_;
  std::uint32_t n_ = 0;
  std::uint32_t m_ = 0;
  std::vector<StateId> table_;
};

enum class EnvParseErrorKind {
  MalformedLine,
  MissingTransition,
  DuplicateTransition,
  IndexOutOfRange,
};

/// Parse failure; `line` is 1-based (0 when no single line is at fault,
/// e.g. a missing transition).
class EnvParseError : public std::runtime_error {
 public:
  EnvParseError(EnvParseErrorKind kind, int line, const std::string& msg)
      : std::runtime_error(msg), kind_(kind), line_(line) {}
  EnvParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  EnvParseErrorKind kind_;
  int line_;
};

/// Raised when a state/action index is outside the environment it is used
/// with (distinct from parse errors for the CLI's exit-code mapping).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Environment file format, line based, '#' starts a comment:
///   env <name>
///   states <n>
///   actions <m>
///   t <s> <a> <s'>     (exactly n*m of these, any order, no duplicates)
Environment parse_env(std::string_view text);

/// Canonical serialization: header plus `t` lines ordered by (s, a).
/// parse_env(serialize_env(e)) == e.
std::string serialize_env(const Environment& env);

/// BFS distance sentinel for unreachable states.
inline constexpr std::int64_t kUnreachable = -1;

/// Shortest-path action counts from `s` to every state.
std::vector<std::int64_t> distances_from(const Environment& env, StateId s);

/// Shortest-path action counts from every state to `t` (reverse BFS).
std::vector<std::int64_t> distances_to(const Environment& env, StateId t);

/// States with a finite action path from `s`, ascending. Always contains s.
std::vector<StateId> reachable_set(const Environment& env, StateId s);

/// Max BFS distance over reachable pairs. Always finite (every state
/// reaches itself in 0 steps).
std::uint32_t diameter(const Environment& env);

/// The lexicographically smallest among the shortest action sequences from
/// s to t, or nullopt when t is unreachable. Deterministic; shared by the
/// BFS planners and the oracle instruction.
std::optional<ActionSeq> shortest_action_seq(const Environment& env,
                                             StateId s, StateId t);

/// dist[s][t] with kUnreachable sentinels; n reverse-BFS sweeps.
std::vector<std::vector<std::int64_t>> all_pairs_distances(
    const Environment& env);

/// Final state after applying the sequence from s.
StateId apply_actions(const Environment& env, StateId s,
                      const ActionSeq& actions);

void check_state(const Environment& env, StateId s, const char* what);
void check_action(const Environment& env, ActionId a, const char* what);

}  // namespace icx
