#include "icx/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "icx/generators.hpp"

namespace icx {

double CompetenceCurve::value_at(double k) const {
  double value = 0;
  for (const auto& [level, gamma] : steps) {
    if (level > k) break;
    value = gamma;
  }
  return value;
}

double plan_cost(const Environment& env, const Task& task,
                 const std::optional<AgentPlan>& plan,
                 const ResourceBias& bias) {
  if (!plan) return kInfCost;
  if (apply_actions(env, task.start, plan->actions) != task.target) {
    return kInfCost;
  }
  const double len = static_cast<double>(plan->actions.size());
  switch (bias.kind) {
    case BiasKind::ActionCount:
      return len;
    case BiasKind::ProgramLength:
      return static_cast<double>(
          compile_action_seq(plan->actions, EnvDims::of(env)).length_bits());
    case BiasKind::Combined:
      return bias.alpha *
                 compile_action_seq(plan->actions, EnvDims::of(env))
                     .length_bits() +
             bias.beta * len;
  }
  throw std::logic_error("unknown bias kind");
}

std::vector<std::vector<double>> ic_cost_matrix(const Environment& env,
                                                const ResourceBias& bias,
                                                SearchBudget budget) {
  if (bias.kind == BiasKind::ActionCount) {
    return ic_all_pairs_action_count(env);
  }
  const std::uint32_t n = env.state_count();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, kInfCost));
  for (StateId s = 0; s < n; ++s) {
    for (StateId t = 0; t < n; ++t) {
      cost[s][t] = intervention_complexity(env, s, t, bias, budget).cost;
    }
  }
  return cost;
}

CompetenceCurve competence_curve(const Agent& agent, const Environment& env,
                                 const ResourceBias& bias,
                                 SearchBudget budget) {
  const auto reach = all_pairs_distances(env);
  const auto ic = ic_cost_matrix(env, bias, budget);

  // (ic, contribution) over reachable non-identity pairs; pairs whose IC is
  // unknown at this budget carry no difficulty level and are skipped.
  std::vector<std::pair<double, double>> tasks;
  for (StateId s = 0; s < env.state_count(); ++s) {
    for (StateId t = 0; t < env.state_count(); ++t) {
      if (s == t || reach[s][t] == kUnreachable) continue;
      if (ic[s][t] == kInfCost) continue;
      const double cost = plan_cost(env, {s, t}, agent.plan({s, t}), bias);
      double contribution = 0;
      if (cost < kInfCost && ic[s][t] > 0) {
        contribution = ic[s][t] * ic[s][t] / cost;
      }
      tasks.emplace_back(ic[s][t], contribution);
    }
  }
  std::sort(tasks.begin(), tasks.end());

  CompetenceCurve curve;
  double sum = 0;
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < tasks.size()) {
    const double level = tasks[i].first;
    while (i < tasks.size() && tasks[i].first == level) {
      sum += tasks[i].second;
      ++count;
      ++i;
    }
    curve.steps.emplace_back(level, sum / static_cast<double>(count));
  }
  return curve;
}

CompetenceCurve weighted_curve(
    const std::vector<std::pair<CompetenceCurve, double>>& members) {
  std::vector<double> levels;
  for (const auto& [curve, weight] : members) {
    for (const auto& [k, gamma] : curve.steps) levels.push_back(k);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  CompetenceCurve out;
  for (double k : levels) {
    double gamma = 0;
    for (const auto& [curve, weight] : members) {
      gamma += weight * curve.value_at(k);
    }
    out.steps.emplace_back(k, gamma);
  }
  return out;
}

double scalar_competence(const CompetenceCurve& curve) {
  // Integral of gamma_i * 2^-k over each [k_i, k_{i+1}) plus the open tail.
  double total = 0;
  for (std::size_t i = 0; i < curve.steps.size(); ++i) {
    const auto [k, gamma] = curve.steps[i];
    const double upper = (i + 1 < curve.steps.size())
                             ? std::exp2(-curve.steps[i + 1].first)
                             : 0.0;
    total += gamma * (std::exp2(-k) - upper);
  }
  return total / std::numbers::ln2;
}

Scheme parse_scheme(std::string_view token) {
  if (token == "A" || token == "a") return Scheme::A;
  if (token == "B" || token == "b") return Scheme::B;
  if (token == "C" || token == "c") return Scheme::C;
  throw DomainError("unknown scheme '" + std::string(token) +
                    "' (expected A, B, or C)");
}

double failure_delta_cap(const Environment& env, const ResourceBias& bias,
                         SearchBudget budget) {
  const double by_actions = static_cast<double>(diameter(env)) + 1;
  const double by_bits = static_cast<double>(budget.max_bits) + 1;
  switch (bias.kind) {
    case BiasKind::ActionCount: return by_actions;
    case BiasKind::ProgramLength: return by_bits;
    case BiasKind::Combined:
      return bias.alpha * by_bits + bias.beta * by_actions;
  }
  throw std::logic_error("unknown bias kind");
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::vector<Task> reachable_pair_list(
    const std::vector<std::vector<std::int64_t>>& dist) {
  const auto n = static_cast<StateId>(dist.size());
  std::vector<Task> pairs;
  for (StateId s = 0; s < n; ++s) {
    for (StateId t = 0; t < n; ++t) {
      if (dist[s][t] != kUnreachable) pairs.push_back({s, t});
    }
  }
  return pairs;
}

Task greedy_adversary(const Agent& agent, const Environment& env,
                      const std::vector<Task>& reachable,
                      const std::vector<std::vector<double>>& ic,
                      const ResourceBias& bias) {
  Task best_task = reachable.front();
  double best_delta = -1;
  for (const Task& task : reachable) {
    if (ic[task.start][task.target] == kInfCost) continue;
    const double cost = plan_cost(env, task, agent.plan(task), bias);
    const double delta =
        cost == kInfCost ? kInfCost : cost - ic[task.start][task.target];
    if (delta > best_delta) {
      best_delta = delta;
      best_task = task;
    }
  }
  return best_task;
}

double gap_with_matrices(const Agent& agent, const Environment& env,
                         const std::vector<Task>& reachable,
                         const std::vector<std::vector<double>>& ic,
                         const ResourceBias& bias, double cap) {
  double sum = 0;
  std::size_t count = 0;
  for (const Task& task : reachable) {
    if (ic[task.start][task.target] == kInfCost) continue;
    const double cost = plan_cost(env, task, agent.plan(task), bias);
    const double delta =
        cost == kInfCost ? cap : cost - ic[task.start][task.target];
    sum += delta;
    ++count;
  }
  return count == 0 ? 0 : sum / static_cast<double>(count);
}

}  // namespace

Task adversary_next_task(const Agent& agent, const Environment& env,
                         const ResourceBias& bias, SearchBudget budget) {
  const auto reachable = reachable_pair_list(all_pairs_distances(env));
  const auto ic = ic_cost_matrix(env, bias, budget);
  return greedy_adversary(agent, env, reachable, ic, bias);
}

RegretTrace run_regret(Agent& agent, const Environment& env,
                       const EvalConfig& config, SearchBudget budget) {
  if (config.horizon < 1) {
    throw std::invalid_argument("horizon must be at least 1");
  }
  const auto dist = all_pairs_distances(env);
  const auto reachable = reachable_pair_list(dist);
  const auto ic = ic_cost_matrix(env, config.bias, budget);
  const double cap = failure_delta_cap(env, config.bias, budget);
  const std::size_t full_table =
      static_cast<std::size_t>(env.state_count()) * env.action_count();

  std::uint64_t rng_state = mix64(config.seed ^ 0xc0ffee);
  RegretTrace trace;
  StateId current = 0;
  double cumulative = 0;

  for (int t = 1; t <= config.horizon; ++t) {
    Task task{};
    switch (config.scheme) {
      case Scheme::A: {
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
          task = agent.propose_task(current);
          ok = task.start < env.state_count() &&
               task.target < env.state_count() &&
               dist[task.start][task.target] != kUnreachable;
        }
        if (!ok) task = reachable.front();  // lexicographic minimum
        break;
      }
      case Scheme::B:
        task = greedy_adversary(agent, env, reachable, ic, config.bias);
        break;
      case Scheme::C:
        rng_state = mix64(rng_state);
        task = reachable[rng_state % reachable.size()];
        break;
    }

    const auto plan = agent.plan(task);
    const double cost = plan_cost(env, task, plan, config.bias);

    TaskRecord record;
    record.t = t;
    record.task = task;
    record.agent_cost = cost;
    record.ic = ic[task.start][task.target];
    record.failed = cost == kInfCost;
    if (record.ic == kInfCost) {
      record.delta = 0;  // minimum unknown at this budget; excess undefined
    } else if (record.failed) {
      record.delta = cap;
    } else {
      record.delta = cost - record.ic;
    }
    cumulative += record.delta;
    record.cumulative = cumulative;

    // Execute: the trajectory happens whether or not it reaches the target,
    // and everything the agent saw becomes experience.
    if (plan) {
      std::vector<Transition> seen;
      seen.reserve(plan->actions.size());
      StateId cur = task.start;
      for (ActionId a : plan->actions) {
        const StateId next = env.step(cur, a);
        seen.push_back({cur, a, next});
        cur = next;
      }
      agent.observe(seen);
      current = cur;
    }

    if (config.scheme == Scheme::C) {
      record.gap = gap_with_matrices(agent, env, reachable, ic, config.bias,
                                     cap);
    }
    trace.records.push_back(std::move(record));

    if (!trace.coverage_task) {
      if (const auto* tabular = dynamic_cast<const TabularAgent*>(&agent);
          tabular && tabular->observed_count() == full_table) {
        trace.coverage_task = t;
      }
    }
  }
  return trace;
}

double generalization_gap(const Agent& agent, const Environment& env,
                          const ResourceBias& bias, SearchBudget budget) {
  const auto reachable = reachable_pair_list(all_pairs_distances(env));
  const auto ic = ic_cost_matrix(env, bias, budget);
  return gap_with_matrices(agent, env, reachable, ic, bias,
                           failure_delta_cap(env, bias, budget));
}

Ensemble make_ensemble(std::vector<Environment> envs, double tau) {
  if (envs.empty()) {
    throw std::invalid_argument("ensemble needs at least one environment");
  }
  if (!(tau > 0)) throw std::invalid_argument("tau must be positive");
  Ensemble ensemble;
  double total = 0;
  for (auto& env : envs) {
    const double raw =
        std::exp2(-static_cast<double>(complexity_proxy(env)) / tau);
    ensemble.members.push_back({std::move(env), raw});
    total += raw;
  }
  for (auto& member : ensemble.members) member.weight /= total;
  return ensemble;
}

double learning_efficiency(const AgentFactory& factory,
                           const Ensemble& ensemble, const EvalConfig& config,
                           SearchBudget budget) {
  double total = 0;
  std::uint64_t member_index = 0;
  for (const auto& member : ensemble.members) {
    auto agent = factory(member.env, config.seed + member_index);
    const RegretTrace trace = run_regret(*agent, member.env, config, budget);
    double summary = 0;
    double weight_t = 1;
    for (const TaskRecord& record : trace.records) {
      weight_t *= config.discount;
      summary -= weight_t * record.delta;
    }
    total += member.weight * summary;
    ++member_index;
  }
  return total;
}

std::string curve_to_csv(const CompetenceCurve& curve) {
  std::string out = "k,gamma\n";
  for (const auto& [k, gamma] : curve.steps) {
    out += format_double(k) + "," + format_double(gamma) + "\n";
  }
  return out;
}

std::string trace_to_csv(const RegretTrace& trace) {
  const bool with_gap = !trace.records.empty() &&
                        trace.records.front().gap.has_value();
  std::string out = "t,start,target,cost,ic,delta,cum,failed";
  if (with_gap) out += ",gap";
  out += "\n";
  for (const TaskRecord& r : trace.records) {
    out += std::to_string(r.t) + "," + std::to_string(r.task.start) + "," +
           std::to_string(r.task.target) + "," + format_double(r.agent_cost) +
           "," + format_double(r.ic) + "," + format_double(r.delta) + "," +
           format_double(r.cumulative) + "," + (r.failed ? "1" : "0");
    if (with_gap) out += "," + format_double(r.gap.value_or(0));
    out += "\n";
  }
  return out;
}

}  // namespace icx
