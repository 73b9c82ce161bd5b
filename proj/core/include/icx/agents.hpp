#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "icx/env.hpp"
#include "icx/vm.hpp"

namespace icx {

struct Task {
  StateId start = 0;
  StateId target = 0;
  bool operator==(const Task&) const = default;
};

struct Transition {
  StateId state = 0;
  ActionId action = 0;
  StateId next = 0;
  bool operator==(const Transition&) const = default;
};

struct AgentPlan {
  ActionSeq actions;
  /// The agent's own accounting (action count); the harness recomputes the
  /// authoritative cost under its bias.
  double claimed_cost = 0;
};

/// An agent maps tasks to action sequences using whatever it has observed.
/// plan() is a pure query (shadow planning must not disturb the agent), so
/// repeated calls with the same task and experience return the same plan.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string_view name() const = 0;

  /// Produce an intervention for the task, or give up (nullopt). Giving up
  /// is recorded as infinite cost by the harness.
  virtual std::optional<AgentPlan> plan(const Task& task) const = 0;

  /// Record transitions that really happened; idempotent per triple.
  virtual void observe(std::span<const Transition> transitions) {
    (void)transitions;
  }

  /// Self-directed evaluation: choose the next task, starting from where
  /// the previous trajectory ended.
  virtual Task propose_task(StateId current) = 0;
};

/// Knows the true environment; plans shortest action sequences, so its
/// measured action-count cost equals the minimum on every reachable task.
class OracleAgent final : public Agent {
 public:
  OracleAgent(const Environment& env, std::uint64_t seed);

  std::string_view name() const override { return "oracle"; }
  std::optional<AgentPlan> plan(const Task& task) const override;
  Task propose_task(StateId current) override;

 private:
  Environment env_;
  std::vector<Task> reachable_pairs_;
  std::uint64_t rng_state_;
};

/// Ignores observations; emits a pseudorandom action sequence derived from
/// (seed, task), so planning is repeatable per task.
class RandomAgent final : public Agent {
 public:
  RandomAgent(EnvDims dims, std::uint64_t seed);

  std::string_view name() const override { return "random"; }
  std::optional<AgentPlan> plan(const Task& task) const override;
  Task propose_task(StateId current) override;

 private:
  EnvDims dims_;
  std::uint64_t seed_;
  std::uint64_t rng_state_;
};

/// Learns the transition table from observations. Planning policy:
///  - start == target: empty plan;
///  - while its table is incomplete and a state with an unobserved action is
///    reachable through observed edges, head for the nearest such state and
///    try its smallest unobserved action (the task itself usually fails, but
///    every such episode reveals at least one new table entry);
///  - otherwise answer with the shortest path over observed edges, or give
///    up when the target is not reachable through them.
/// It never routes through an unobserved transition as if it were known.
class TabularAgent final : public Agent {
 public:
  TabularAgent(EnvDims dims, std::uint64_t seed);

  std::string_view name() const override { return "tabular"; }
  std::optional<AgentPlan> plan(const Task& task) const override;
  void observe(std::span<const Transition> transitions) override;
  Task propose_task(StateId current) override;

  /// Pure exploitation: shortest path over observed edges only (empty plan
  /// when start == target), never an exploration move.
  std::optional<AgentPlan> answer_plan(const Task& task) const;

  bool knows(StateId s, ActionId a) const;
  std::size_t observed_count() const { return observed_; }
  bool fully_observed() const {
    return observed_ == static_cast<std::size_t>(dims_.states) * dims_.actions;
  }

 private:
  std::vector<std::int64_t> known_distances_to(StateId target) const;
  std::optional<ActionSeq> known_path(StateId from, StateId to) const;
  /// Nearest state (over observed edges from `from`) with an unobserved
  /// action; ties broken by smaller state id.
  std::optional<StateId> nearest_frontier(StateId from) const;

  EnvDims dims_;
  std::vector<std::int64_t> table_;  // -1 = unobserved
  std::size_t observed_ = 0;
  std::uint64_t rng_state_;
};

/// Agent factory keyed by CLI name: "oracle", "random", "tabular".
/// Throws DomainError for unknown names.
std::unique_ptr<Agent> make_agent(std::string_view name,
                                  const Environment& env, std::uint64_t seed);

}  // namespace icx
