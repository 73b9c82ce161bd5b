#include "icx/ic.hpp"

#include <cmath>
#include <cstdio>

namespace icx {

ResourceBias ResourceBias::combined(double alpha, double beta, Regime regime) {
  if (!(alpha > 0) || !(beta > 0)) {
    throw std::invalid_argument("combined bias needs alpha > 0 and beta > 0");
  }
  return {BiasKind::Combined, regime, alpha, beta};
}

std::string bias_label(const ResourceBias& bias) {
  switch (bias.kind) {
    case BiasKind::ActionCount:
      return "action";
    case BiasKind::ProgramLength:
      return bias.regime == Regime::Bare ? "pl:bare" : "pl:oracle";
    case BiasKind::Combined:
      return "comb(a=" + format_double(bias.alpha) +
             ",b=" + format_double(bias.beta) + "):" +
             (bias.regime == Regime::Bare ? "bare" : "oracle");
  }
  return "?";
}

std::string format_double(double value) {
  if (value == kInfCost) return "inf";
  char buf[64];
  // Round-trippable and stable; trims to the shortest exact form.
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  double parsed = 0;
  std::sscanf(buf, "%lf", &parsed);
  for (int precision = 1; precision < 17; ++precision) {
    char shorter[64];
    std::snprintf(shorter, sizeof(shorter), "%.*g", precision, value);
    std::sscanf(shorter, "%lf", &parsed);
    if (parsed == value) return shorter;
  }
  return buf;
}

std::string exactness_label(const ICResult& result) {
  if (result.exact) return "Exact";
  return "ExactUpToBudget(max_bits=" + std::to_string(result.budget.max_bits) +
         ",step_budget=" + std::to_string(result.budget.step_budget) + ")";
}

ICResult ic_action_count(const Environment& env, StateId s, StateId t) {
  check_state(env, s, "source");
  check_state(env, t, "target");
  ICResult result;
  result.exact = true;
  auto path = shortest_action_seq(env, s, t);
  if (!path) return result;  // unreachable, cost stays infinite
  result.cost = static_cast<double>(path->size());
  result.witness_actions = std::move(*path);
  return result;
}

std::vector<std::vector<double>> ic_all_pairs_action_count(
    const Environment& env) {
  const auto dist = all_pairs_distances(env);
  const std::uint32_t n = env.state_count();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, kInfCost));
  for (StateId s = 0; s < n; ++s) {
    for (StateId t = 0; t < n; ++t) {
      if (dist[s][t] != kUnreachable) {
        cost[s][t] = static_cast<double>(dist[s][t]);
      }
    }
  }
  return cost;
}

namespace {

void validate_budget(const SearchBudget& budget) {
  if (budget.max_bits < 2) {
    throw std::invalid_argument("max_bits must be at least 2");
  }
  if (budget.step_budget < 1) {
    throw std::invalid_argument("step_budget must be at least 1");
  }
}

/// Minimize alpha*bits + beta*output_length over enumerated programs.
/// ProgramLength is the beta = 0 special case.
ICResult search_min_program(const Environment& env, StateId s, StateId t,
                            Regime regime, SearchBudget budget, double alpha,
                            double beta) {
  check_state(env, s, "source");
  check_state(env, t, "target");
  validate_budget(budget);

  ICResult result;
  result.budget = budget;

  double best = kInfCost;
  double min_faulted_floor = kInfCost;  // alpha*bits of budget-faulted runs
  bool stopped_by_cost = false;

  for_each_program(
      EnvDims::of(env), budget.max_bits, regime, [&](const Program& p) {
        const double alpha_bits = alpha * p.length_bits();
        if (alpha_bits >= best) {
          // Lengths only grow from here; nothing can beat the incumbent.
          stopped_by_cost = true;
          return EnumControl::Stop;
        }
        const ExecOutcome run = execute(p, env, regime, s, budget.step_budget);
        if (run.fault == Fault::StepBudgetExceeded) {
          min_faulted_floor = std::min(min_faulted_floor, alpha_bits);
          return EnumControl::Continue;
        }
        if (run.ok() && run.end_state == t) {
          const double cost =
              alpha_bits + beta * static_cast<double>(run.actions.size());
          if (cost < best) {
            best = cost;
            result.witness_program = p;
          }
        }
        return EnumControl::Continue;
      });

  result.cost = best;
  if (best < kInfCost) {
    // The minimum is certified when every program that could still beat it
    // was either enumerated and fully run, or is too long to matter.
    const bool tail_covered =
        stopped_by_cost || alpha * (budget.max_bits + 1) >= best;
    result.exact = tail_covered && min_faulted_floor >= best;
  } else {
    result.exact = false;  // longer programs might still succeed
  }
  return result;
}

}  // namespace

ICResult ic_program_length(const Environment& env, StateId s, StateId t,
                           Regime regime, SearchBudget budget) {
  return search_min_program(env, s, t, regime, budget, 1.0, 0.0);
}

ICResult ic_combined(const Environment& env, StateId s, StateId t,
                     double alpha, double beta, Regime regime,
                     SearchBudget budget) {
  if (!(alpha > 0) || !(beta > 0)) {
    throw std::invalid_argument("combined bias needs alpha > 0 and beta > 0");
  }
  return search_min_program(env, s, t, regime, budget, alpha, beta);
}

ICResult intervention_complexity(const Environment& env, StateId s, StateId t,
                                 const ResourceBias& bias,
                                 SearchBudget budget) {
  switch (bias.kind) {
    case BiasKind::ActionCount:
      return ic_action_count(env, s, t);
    case BiasKind::ProgramLength:
      return ic_program_length(env, s, t, bias.regime, budget);
    case BiasKind::Combined:
      return ic_combined(env, s, t, bias.alpha, bias.beta, bias.regime,
                         budget);
  }
  throw std::logic_error("unknown bias kind");
}

KnowledgeCost knowledge_cost(const Environment& env, StateId s, StateId t,
                             SearchBudget budget) {
  const ICResult bare = ic_program_length(env, s, t, Regime::Bare, budget);
  const ICResult oracle = ic_program_length(env, s, t, Regime::Oracle, budget);
  KnowledgeCost k;
  k.bare_exact = bare.exact;
  k.oracle_exact = oracle.exact;
  if (!bare.reachable() && !oracle.reachable()) {
    k.value = 0;
    k.inf_minus_inf = true;
  } else if (!bare.reachable()) {
    k.value = kInfCost;
  } else {
    k.value = bare.cost - oracle.cost;
  }
  return k;
}

double reward(const Environment& env, StateId s, StateId t,
              const ResourceBias& bias, RewardMap g, SearchBudget budget) {
  const double ic = intervention_complexity(env, s, t, bias, budget).cost;
  switch (g) {
    case RewardMap::Identity: return ic;
    case RewardMap::Log1p: return std::log1p(ic);
  }
  throw std::logic_error("unknown reward map");
}

QuasimetricReport quasimetric_report(const Environment& env,
                                     const ResourceBias& bias, double slack,
                                     SearchBudget budget) {
  const std::uint32_t n = env.state_count();
  QuasimetricReport report;
  report.bias = bias;
  report.slack = slack;

  std::vector<std::vector<double>> cost;
  if (bias.kind == BiasKind::ActionCount) {
    cost = ic_all_pairs_action_count(env);
  } else {
    cost.assign(n, std::vector<double>(n, kInfCost));
    for (StateId s = 0; s < n; ++s) {
      for (StateId t = 0; t < n; ++t) {
        const ICResult r = intervention_complexity(env, s, t, bias, budget);
        cost[s][t] = r.cost;
        report.all_exact = report.all_exact && r.exact;
      }
    }
  }

  // Cost the empty intervention pays under this bias.
  double self_cost = 0;
  if (bias.kind == BiasKind::ProgramLength) self_cost = 2;
  if (bias.kind == BiasKind::Combined) self_cost = 2 * bias.alpha;

  report.identity_ok = true;
  report.nonnegative_ok = true;
  for (StateId s = 0; s < n; ++s) {
    if (cost[s][s] != self_cost) report.identity_ok = false;
    for (StateId t = 0; t < n; ++t) {
      if (!(cost[s][t] >= 0)) report.nonnegative_ok = false;
      if (!report.asymmetry_witness && cost[s][t] != cost[t][s]) {
        report.asymmetry_witness = {s, t};
      }
    }
  }

  for (StateId s = 0; s < n; ++s) {
    for (StateId mid = 0; mid < n; ++mid) {
      if (cost[s][mid] == kInfCost) continue;  // mid not reachable from s
      for (StateId u = 0; u < n; ++u) {
        if (cost[mid][u] == kInfCost) continue;  // u not reachable from mid
        ++report.triples_checked;
        if (cost[s][u] > cost[s][mid] + cost[mid][u] + slack) {
          ++report.triangle_violations;
          if (!report.first_violation) {
            report.first_violation = {{s, mid, u}};
          }
        }
      }
    }
  }
  return report;
}

namespace {

std::string json_escape(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string ic_result_json_line(const std::string& env_name, StateId s,
                                StateId t, const ResourceBias& bias,
                                const ICResult& result) {
  std::string line = "{\"env\":\"" + json_escape(env_name) + "\"";
  line += ",\"s\":" + std::to_string(s);
  line += ",\"t\":" + std::to_string(t);
  line += ",\"bias\":\"" + bias_label(bias) + "\"";
  if (result.reachable()) {
    line += ",\"cost\":" + format_double(result.cost);
  } else {
    line += ",\"cost\":\"inf\"";
  }
  line += ",\"exactness\":\"" + exactness_label(result) + "\"";
  if (result.witness_program) {
    line += ",\"witness\":\"0b" + result.witness_program->bits + "\"";
  } else if (result.witness_actions) {
    line += ",\"witness\":[";
    for (std::size_t i = 0; i < result.witness_actions->size(); ++i) {
      if (i > 0) line += ",";
      line += std::to_string((*result.witness_actions)[i]);
    }
    line += "]";
  } else {
    line += ",\"witness\":null";
  }
  line += "}";
  return line;
}

}  // namespace icx
