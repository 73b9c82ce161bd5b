#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icx/env.hpp"
#include "icx/vm.hpp"

namespace icx {

/// Unreachability / failure sentinel. Compares greater than every finite
/// cost; adding or subtracting a finite value keeps it infinite.
inline constexpr double kInfCost = std::numeric_limits<double>::infinity();

enum class BiasKind { ActionCount, ProgramLength, Combined };

/// The resource bias a cost is measured under. ActionCount charges the
/// length of the emitted action sequence (regime-independent); ProgramLength
/// charges program bits; Combined charges alpha*bits + beta*output_length.
struct ResourceBias {
  BiasKind kind = BiasKind::ActionCount;
  Regime regime = Regime::Bare;  // used by ProgramLength and Combined
  double alpha = 1.0;            // Combined only; > 0
  double beta = 1.0;             // Combined only; > 0

  static ResourceBias action_count() { return {BiasKind::ActionCount, Regime::Bare, 1, 1}; }
  static ResourceBias program_length(Regime regime) {
    return {BiasKind::ProgramLength, regime, 1, 0};
  }
  static ResourceBias combined(double alpha, double beta, Regime regime);
};

/// Short label used in reports and JSON records, e.g. "action", "pl:bare",
/// "comb(a=1,b=2):oracle".
std::string bias_label(const ResourceBias& bias);

/// Enumeration bounds standing in for the untestable unbounded search: the
/// result is a certified minimum over all programs of at most max_bits bits,
/// each run for at most step_budget steps.
struct SearchBudget {
  int max_bits = 24;
  std::int64_t step_budget = 10000;
};

struct ICResult {
  double cost = kInfCost;
  /// True when the value is the true minimum: a witness was found and every
  /// program cheap enough to beat it was fully executed within the step
  /// budget. Otherwise the value is exact up to `budget` (an upper bound).
  bool exact = false;
  SearchBudget budget;
  std::optional<Program> witness_program;   // program-length searches
  std::optional<ActionSeq> witness_actions; // action-count results

  bool reachable() const { return cost < kInfCost; }
};

std::string exactness_label(const ICResult& result);

/// Minimum action count from s to t: the BFS shortest-path distance, with a
/// witness sequence. Always exact. O(n*m).
ICResult ic_action_count(const Environment& env, StateId s, StateId t);

/// Cost matrix of ic_action_count over all ordered pairs; entry [s][t]
/// equals ic_action_count(env, s, t).cost. kInfCost marks unreachable pairs.
std::vector<std::vector<double>> ic_all_pairs_action_count(
    const Environment& env);

/// Minimum program bit length over enumerated programs (2..max_bits) whose
/// execution from s ends at t. Witness is the first such program in
/// (length, lex) order.
ICResult ic_program_length(const Environment& env, StateId s, StateId t,
                           Regime regime, SearchBudget budget);

/// Minimizes alpha*bits + beta*output_length; alpha, beta > 0. Enumeration
/// prunes once alpha*bits alone can no longer beat the incumbent.
ICResult ic_combined(const Environment& env, StateId s, StateId t,
                     double alpha, double beta, Regime regime,
                     SearchBudget budget);

/// Dispatch on bias kind.
ICResult intervention_complexity(const Environment& env, StateId s, StateId t,
                                 const ResourceBias& bias,
                                 SearchBudget budget);

struct KnowledgeCost {
  double value = 0;        // bare minus oracle program-length cost
  bool bare_exact = false;
  bool oracle_exact = false;
  /// Both searches exhausted the budget without a witness; the difference is
  /// reported as 0 with this flag set.
  bool inf_minus_inf = false;
};

/// Bits of environment knowledge needed to plan s -> t: bare cost minus
/// oracle cost under matched budgets. Infinity minus a finite value stays
/// infinite.
KnowledgeCost knowledge_cost(const Environment& env, StateId s, StateId t,
                             SearchBudget budget);

enum class RewardMap { Identity, Log1p };

/// g(IC) for a strictly increasing g; preserves the order of finite costs.
double reward(const Environment& env, StateId s, StateId t,
              const ResourceBias& bias, RewardMap g, SearchBudget budget);

struct QuasimetricReport {
  ResourceBias bias;
  double slack = 0;
  /// Self-transitions all cost exactly the empty intervention (0 under
  /// action count, one HALT under program length).
  bool identity_ok = false;
  bool nonnegative_ok = false;
  std::uint64_t triples_checked = 0;
  std::uint64_t triangle_violations = 0;
  std::optional<std::array<StateId, 3>> first_violation;
  /// First ordered pair with IC(s,t) != IC(t,s), if any.
  std::optional<std::pair<StateId, StateId>> asymmetry_witness;
  bool all_exact = true;  // program-length searches only
};

/// Checks non-negativity, the identity cost, and the triangle inequality
/// with the given slack over all triples (s, s', s'') where s' is reachable
/// from s and s'' from s'. Slack 0 is the right choice for action count;
/// program-length costs compose by body concatenation in this machine, so
/// slack 0 holds there too.
QuasimetricReport quasimetric_report(const Environment& env,
                                     const ResourceBias& bias, double slack,
                                     SearchBudget budget);

/// One JSON object per line: {"env":...,"s":...,"t":...,"bias":...,
/// "cost":...,"exactness":...,"witness":...}. Infinite cost prints as the
/// string "inf".
std::string ic_result_json_line(const std::string& env_name, StateId s,
                                StateId t, const ResourceBias& bias,
                                const ICResult& result);

/// Deterministic shortest representation for doubles in text output.
std::string format_double(double value);

}  // namespace icx
