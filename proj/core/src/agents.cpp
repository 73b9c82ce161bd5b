#include "icx/agents.hpp"

#include <algorithm>
#include <deque>

namespace icx {

namespace {

// splitmix64; stable across platforms, unlike <random> distributions.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t next_u64(std::uint64_t& state) {
  state = mix64(state);
  return state;
}

}  // namespace

OracleAgent::OracleAgent(const Environment& env, std::uint64_t seed)
    : env_(env), rng_state_(mix64(seed ^ 0x5eedull)) {
  const auto dist = all_pairs_distances(env_);
  for (StateId s = 0; s < env_.state_count(); ++s) {
    for (StateId t = 0; t < env_.state_count(); ++t) {
      if (dist[s][t] != kUnreachable) reachable_pairs_.push_back({s, t});
    }
  }
}

std::optional<AgentPlan> OracleAgent::plan(const Task& task) const {
  auto path = shortest_action_seq(env_, task.start, task.target);
  if (!path) return std::nullopt;
  AgentPlan p;
  p.claimed_cost = static_cast<double>(path->size());
  p.actions = std::move(*path);
  return p;
}

Task OracleAgent::propose_task(StateId current) {
  (void)current;  // the oracle has nothing left to learn anywhere
  return reachable_pairs_[next_u64(rng_state_) % reachable_pairs_.size()];
}

RandomAgent::RandomAgent(EnvDims dims, std::uint64_t seed)
    : dims_(dims), seed_(seed), rng_state_(mix64(seed ^ 0xabcdull)) {}

std::optional<AgentPlan> RandomAgent::plan(const Task& task) const {
  // Derived from (seed, task) only, so shadow queries are repeatable.
  std::uint64_t state =
      mix64(seed_ ^ (static_cast<std::uint64_t>(task.start) << 32 ^
                     static_cast<std::uint64_t>(task.target)));
  const std::uint64_t max_len = 2ull * dims_.states;
  const std::size_t len = next_u64(state) % (max_len + 1);
  AgentPlan p;
  p.actions.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    p.actions.push_back(
        static_cast<ActionId>(next_u64(state) % dims_.actions));
  }
  p.claimed_cost = static_cast<double>(len);
  return p;
}

Task RandomAgent::propose_task(StateId current) {
  (void)current;
  return {static_cast<StateId>(next_u64(rng_state_) % dims_.states),
          static_cast<StateId>(next_u64(rng_state_) % dims_.states)};
}

TabularAgent::TabularAgent(EnvDims dims, std::uint64_t seed)
    : dims_(dims),
      table_(static_cast<std::size_t>(dims.states) * dims.actions, -1),
      rng_state_(mix64(seed ^ 0x7ab1ull)) {}

bool TabularAgent::knows(StateId s, ActionId a) const {
  return table_[static_cast<std::size_t>(s) * dims_.actions + a] >= 0;
}

void TabularAgent::observe(std::span<const Transition> transitions) {
  for (const Transition& tr : transitions) {
    auto& slot = table_[static_cast<std::size_t>(tr.state) * dims_.actions +
                        tr.action];
    if (slot < 0) {
      slot = tr.next;
      ++observed_;
    }
  }
}

std::vector<std::int64_t> TabularAgent::known_distances_to(
    StateId target) const {
  // Reverse BFS over observed edges only.
  const std::uint32_t n = dims_.states;
  const std::uint32_t m = dims_.actions;
  std::vector<std::vector<StateId>> preds(n);
  for (StateId s = 0; s < n; ++s) {
    for (ActionId a = 0; a < m; ++a) {
      const std::int64_t next = table_[static_cast<std::size_t>(s) * m + a];
      if (next >= 0) preds[static_cast<std::size_t>(next)].push_back(s);
    }
  }
  std::vector<std::int64_t> dist(n, kUnreachable);
  std::deque<StateId> queue;
  dist[target] = 0;
  queue.push_back(target);
  while (!queue.empty()) {
    const StateId v = queue.front();
    queue.pop_front();
    for (StateId u : preds[v]) {
      if (dist[u] == kUnreachable) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::optional<ActionSeq> TabularAgent::known_path(StateId from,
                                                  StateId to) const {
  const auto dist = known_distances_to(to);
  if (dist[from] == kUnreachable) return std::nullopt;
  ActionSeq seq;
  StateId cur = from;
  while (dist[cur] > 0) {
    for (ActionId a = 0; a < dims_.actions; ++a) {
      const std::int64_t next =
          table_[static_cast<std::size_t>(cur) * dims_.actions + a];
      if (next >= 0 && dist[static_cast<std::size_t>(next)] == dist[cur] - 1) {
        seq.push_back(a);
        cur = static_cast<StateId>(next);
        break;
      }
    }
  }
  return seq;
}

std::optional<StateId> TabularAgent::nearest_frontier(StateId from) const {
  const std::uint32_t n = dims_.states;
  const std::uint32_t m = dims_.actions;
  std::vector<std::int64_t> dist(n, kUnreachable);
  std::deque<StateId> queue;
  dist[from] = 0;
  queue.push_back(from);
  while (!queue.empty()) {
    const StateId u = queue.front();
    queue.pop_front();
    for (ActionId a = 0; a < m; ++a) {
      const std::int64_t next = table_[static_cast<std::size_t>(u) * m + a];
      if (next >= 0 && dist[static_cast<std::size_t>(next)] == kUnreachable) {
        dist[static_cast<std::size_t>(next)] = dist[u] + 1;
        queue.push_back(static_cast<StateId>(next));
      }
    }
  }
  std::optional<StateId> best;
  std::int64_t best_dist = 0;
  for (StateId s = 0; s < n; ++s) {
    if (dist[s] == kUnreachable) continue;
    bool has_unknown = false;
    for (ActionId a = 0; a < m; ++a) {
      if (table_[static_cast<std::size_t>(s) * m + a] < 0) has_unknown = true;
    }
    if (!has_unknown) continue;
    if (!best || dist[s] < best_dist) {
      best = s;
      best_dist = dist[s];
    }
  }
  return best;
}

std::optional<AgentPlan> TabularAgent::answer_plan(const Task& task) const {
  if (task.start == task.target) return AgentPlan{};
  auto path = known_path(task.start, task.target);
  if (!path) return std::nullopt;
  AgentPlan p;
  p.claimed_cost = static_cast<double>(path->size());
  p.actions = std::move(*path);
  return p;
}

std::optional<AgentPlan> TabularAgent::plan(const Task& task) const {
  if (task.start == task.target) return AgentPlan{};
  if (!fully_observed()) {
    if (const auto frontier = nearest_frontier(task.start)) {
      auto path = known_path(task.start, *frontier);
      ActionId probe = 0;
      for (ActionId a = 0; a < dims_.actions; ++a) {
        if (!knows(*frontier, a)) {
          probe = a;
          break;
        }
      }
      path->push_back(probe);
      if (path->size() > 4ull * dims_.states) return std::nullopt;
      AgentPlan p;
      p.claimed_cost = static_cast<double>(path->size());
      p.actions = std::move(*path);
      return p;
    }
  }
  return answer_plan(task);
}

Task TabularAgent::propose_task(StateId current) {
  if (!fully_observed()) {
    if (const auto frontier = nearest_frontier(current)) {
      return {current, *frontier};
    }
  }
  // Nothing learnable from here: propose among pairs its model can reach.
  std::vector<Task> pairs;
  for (StateId s = 0; s < dims_.states; ++s) {
    const auto dist = known_distances_to(s);
    for (StateId from = 0; from < dims_.states; ++from) {
      if (dist[from] != kUnreachable) pairs.push_back({from, s});
    }
  }
  return pairs[next_u64(rng_state_) % pairs.size()];
}

std::unique_ptr<Agent> make_agent(std::string_view name,
                                  const Environment& env, std::uint64_t seed) {
  if (name == "oracle") return std::make_unique<OracleAgent>(env, seed);
  if (name == "random") {
    return std::make_unique<RandomAgent>(EnvDims::of(env), seed);
  }
  if (name == "tabular") {
    return std::make_unique<TabularAgent>(EnvDims::of(env), seed);
  }
  throw DomainError("unknown agent '" + std::string(name) +
                    "' (expected oracle, random, or tabular)");
}

}  // namespace icx
