#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icx/agents.hpp"
#include "icx/env.hpp"
#include "icx/ic.hpp"

namespace icx {

/// Right-continuous step function over difficulty levels: value_at(k) is
/// steps[i].second for the largest steps[i].first <= k, and 0 below the
/// first breakpoint. Breakpoints are the environment's distinct finite IC
/// values over reachable non-identity pairs.
struct CompetenceCurve {
  std::vector<std::pair<double, double>> steps;  // (k, gamma), k ascending

  double value_at(double k) const;
  bool operator==(const CompetenceCurve&) const = default;
};

/// The harness-recomputed cost of a plan on a task: simulate the actions
/// from the start state; if the trajectory does not end at the target (or
/// the agent gave up) the cost is infinite. Otherwise the cost is the bias
/// cost of the produced intervention (program-length biases cost the
/// canonical EMIT-compiled form of the action sequence).
double plan_cost(const Environment& env, const Task& task,
                 const std::optional<AgentPlan>& plan,
                 const ResourceBias& bias);

/// IC over all ordered pairs under the bias. Action count is n BFS sweeps;
/// program-length biases run one budgeted search per pair.
std::vector<std::vector<double>> ic_cost_matrix(const Environment& env,
                                                const ResourceBias& bias,
                                                SearchBudget budget);

/// Mean of IC^2 / C over reachable non-identity pairs of difficulty <= k,
/// for each distinct finite IC level k. Failed tasks contribute zero. The
/// agent's history is frozen; planning queries must not mutate it.
CompetenceCurve competence_curve(const Agent& agent, const Environment& env,
                                 const ResourceBias& bias,
                                 SearchBudget budget);

/// Pointwise weighted sum of curves (weights from an ensemble).
CompetenceCurve weighted_curve(
    const std::vector<std::pair<CompetenceCurve, double>>& members);

/// Exact integral of 2^-k * curve(k) over [0, inf), evaluated piecewise in
/// closed form.
double scalar_competence(const CompetenceCurve& curve);

enum class Scheme { A, B, C };  // self-directed, adversarial, uniform tasks
Scheme parse_scheme(std::string_view token);

struct EvalConfig {
  Scheme scheme = Scheme::B;
  int horizon = 50;
  double discount = 0.95;
  std::uint64_t seed = 0;
  ResourceBias bias = ResourceBias::action_count();
};

struct TaskRecord {
  int t = 0;  // 1-based task index
  Task task;
  double agent_cost = kInfCost;  // raw; infinite on failure
  double ic = 0;
  bool failed = false;
  double delta = 0;      // capped excess cost, always finite
  double cumulative = 0;  // running sum of capped deltas
  std::optional<double> gap;  // scheme C: generalization gap after this task
};

struct RegretTrace {
  std::vector<TaskRecord> records;
  /// First 1-based task index after which the agent had observed every
  /// transition, if that happened within the horizon.
  std::optional<int> coverage_task;
};

/// Capped stand-in for an infinite excess cost, so cumulative sums stay
/// finite: diameter+1 under action count, max_bits+1 under program length,
/// and the alpha/beta combination of the two under the combined bias.
double failure_delta_cap(const Environment& env, const ResourceBias& bias,
                         SearchBudget budget);

/// Greedy adversary: the reachable pair maximizing the agent's shadow
/// regret (plan cost minus IC, infinite for failed plans), ties broken by
/// smallest (start, target). Deterministic given the agent's state.
Task adversary_next_task(const Agent& agent, const Environment& env,
                         const ResourceBias& bias, SearchBudget budget);

/// Run `horizon` tasks against the true environment. Tasks come from the
/// agent (scheme A, unreachable proposals resampled up to 100 times, then
/// the lexicographic minimum reachable pair), a greedy adversary (scheme B),
/// or a seeded uniform draw over reachable pairs (scheme C, which also
/// records the generalization gap after each task). Executed transitions
/// are fed back to the agent.
RegretTrace run_regret(Agent& agent, const Environment& env,
                       const EvalConfig& config, SearchBudget budget);

/// Mean capped excess cost over all reachable pairs with the agent's
/// history frozen: how well the learned model generalizes beyond the tasks
/// actually seen.
double generalization_gap(const Agent& agent, const Environment& env,
                          const ResourceBias& bias, SearchBudget budget);

struct Ensemble {
  struct Member {
    Environment env;
    double weight = 0;  // in (0, 1], normalized over the ensemble
  };
  std::vector<Member> members;
};

/// Weight members by 2^(-proxy/tau), normalized. The proxy is the run-length
/// description surrogate from generators; tau keeps small proxies from
/// underflowing and is 8 bits by default.
Ensemble make_ensemble(std::vector<Environment> envs, double tau = 8.0);

using AgentFactory = std::function<std::unique_ptr<Agent>(
    const Environment& env, std::uint64_t seed)>;

/// Ensemble-weighted negative discounted cumulative regret: sum over
/// members of weight * -(sum_t discount^t * delta_t), with a fresh agent per
/// environment. 0 is maximal (the oracle's score).
double learning_efficiency(const AgentFactory& factory,
                           const Ensemble& ensemble, const EvalConfig& config,
                           SearchBudget budget);

std::string curve_to_csv(const CompetenceCurve& curve);
std::string trace_to_csv(const RegretTrace& trace);

}  // namespace icx
