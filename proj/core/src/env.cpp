#include "icx/env.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>

namespace icx {

Environment::Environment(std::string name, std::uint32_t state_count,
                         std::uint32_t action_count,
                         std::vector<StateId> table)
    : name_(std::move(name)), n_(state_count), m_(action_count),
      table_(std::move(table)) {
  if (n_ < 1 || m_ < 1) {
    throw std::invalid_argument("environment needs at least one state and one action");
  }
  if (table_.size() != static_cast<std::size_t>(n_) * m_) {
    throw std::invalid_argument("transition table must have n*m entries");
  }
  for (StateId target : table_) {
    if (target >= n_) {
      throw std::invalid_argument("transition target out of range");
    }
  }
}

namespace {

struct Line {
  int number;  // 1-based
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    ++number;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    std::istringstream iss{std::string(raw)};
    std::vector<std::string> tokens;
    for (std::string tok; iss >> tok;) tokens.push_back(std::move(tok));
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return lines;
}

std::uint32_t parse_u32(const std::string& tok, int line, const char* what) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw EnvParseError(EnvParseErrorKind::MalformedLine, line,
                        "line " + std::to_string(line) + ": expected " + what +
                            ", got '" + tok + "'");
  }
  return value;
}

}  // namespace

Environment parse_env(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.size() < 3) {
    throw EnvParseError(EnvParseErrorKind::MalformedLine,
                        lines.empty() ? 1 : lines.back().number,
                        "expected 'env', 'states' and 'actions' header lines");
  }

  const Line& header = lines[0];
  if (header.tokens.size() != 2 || header.tokens[0] != "env") {
    throw EnvParseError(EnvParseErrorKind::MalformedLine, header.number,
                        "line " + std::to_string(header.number) +
                            ": expected 'env <name>'");
  }
  const Line& states_line = lines[1];
  if (states_line.tokens.size() != 2 || states_line.tokens[0] != "states") {
    throw EnvParseError(EnvParseErrorKind::MalformedLine, states_line.number,
                        "line " + std::to_string(states_line.number) +
                            ": expected 'states <n>'");
  }
  const Line& actions_line = lines[2];
  if (actions_line.tokens.size() != 2 || actions_line.tokens[0] != "actions") {
    throw EnvParseError(EnvParseErrorKind::MalformedLine, actions_line.number,
                        "line " + std::to_string(actions_line.number) +
                            ": expected 'actions <m>'");
  }

  const std::string name = header.tokens[1];
  const std::uint32_t n = parse_u32(states_line.tokens[1], states_line.number,
                                    "state count");
  const std::uint32_t m = parse_u32(actions_line.tokens[1],
                                    actions_line.number, "action count");
  if (n < 1 || m < 1) {
    throw EnvParseError(EnvParseErrorKind::MalformedLine, states_line.number,
                        "state and action counts must be at least 1");
  }

  std::vector<StateId> table(static_cast<std::size_t>(n) * m, 0);
  std::vector<bool> seen(table.size(), false);

  for (std::size_t i = 3; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (line.tokens.size() != 4 || line.tokens[0] != "t") {
      throw EnvParseError(EnvParseErrorKind::MalformedLine, line.number,
                          "line " + std::to_string(line.number) +
                              ": expected 't <s> <a> <s_next>'");
    }
    const std::uint32_t s = parse_u32(line.tokens[1], line.number, "state");
    const std::uint32_t a = parse_u32(line.tokens[2], line.number, "action");
    const std::uint32_t next = parse_u32(line.tokens[3], line.number, "state");
    if (s >= n || a >= m || next >= n) {
      throw EnvParseError(EnvParseErrorKind::IndexOutOfRange, line.number,
                          "line " + std::to_string(line.number) +
                              ": index out of range in 't " +
                              std::to_string(s) + " " + std::to_string(a) +
                              " " + std::to_string(next) + "'");
    }
    const std::size_t slot = static_cast<std::size_t>(s) * m + a;
    if (seen[slot]) {
      throw EnvParseError(EnvParseErrorKind::DuplicateTransition, line.number,
                          "line " + std::to_string(line.number) +
                              ": duplicate transition for state " +
                              std::to_string(s) + ", action " +
                              std::to_string(a));
    }
    seen[slot] = true;
    table[slot] = next;
  }

  for (std::uint32_t s = 0; s < n; ++s) {
    for (std::uint32_t a = 0; a < m; ++a) {
      if (!seen[static_cast<std::size_t>(s) * m + a]) {
        throw EnvParseError(EnvParseErrorKind::MissingTransition, 0,
                            "missing transition for state " +
                                std::to_string(s) + ", action " +
                                std::to_string(a));
      }
    }
  }

  return Environment(name, n, m, std::move(table));
}

std::string serialize_env(const Environment& env) {
  std::ostringstream out;
  out << "env " << env.name() << "\n";
  out << "states " << env.state_count() << "\n";
  out << "actions " << env.action_count() << "\n";
  for (StateId s = 0; s < env.state_count(); ++s) {
    for (ActionId a = 0; a < env.action_count(); ++a) {
      out << "t " << s << " " << a << " " << env.step(s, a) << "\n";
    }
  }
  return out.str();
}

void check_state(const Environment& env, StateId s, const char* what) {
  if (s >= env.state_count()) {
    throw DomainError(std::string(what) + " state " + std::to_string(s) +
                      " out of range for environment '" + env.name() +
                      "' with " + std::to_string(env.state_count()) +
                      " states");
  }
}

void check_action(const Environment& env, ActionId a, const char* what) {
  if (a >= env.action_count()) {
    throw DomainError(std::string(what) + " action " + std::to_string(a) +
                      " out of range for environment '" + env.name() +
                      "' with " + std::to_string(env.action_count()) +
                      " actions");
  }
}

std::vector<std::int64_t> distances_from(const Environment& env, StateId s) {
  check_state(env, s, "source");
  std::vector<std::int64_t> dist(env.state_count(), kUnreachable);
  std::deque<StateId> queue;
  dist[s] = 0;
  queue.push_back(s);
  while (!queue.empty()) {
    const StateId u = queue.front();
    queue.pop_front();
    for (ActionId a = 0; a < env.action_count(); ++a) {
      const StateId v = env.step(u, a);
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::vector<std::int64_t> distances_to(const Environment& env, StateId t) {
  check_state(env, t, "target");
  // Reverse adjacency, built flat: offsets per state into a predecessor list.
  const std::uint32_t n = env.state_count();
  const std::uint32_t m = env.action_count();
  std::vector<std::uint32_t> indegree(n, 0);
  for (StateId s = 0; s < n; ++s) {
    for (ActionId a = 0; a < m; ++a) indegree[env.step(s, a)]++;
  }
  std::vector<std::size_t> offset(n + 1, 0);
  for (StateId v = 0; v < n; ++v) offset[v + 1] = offset[v] + indegree[v];
  std::vector<StateId> preds(offset[n]);
  std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
  for (StateId s = 0; s < n; ++s) {
    for (ActionId a = 0; a < m; ++a) preds[cursor[env.step(s, a)]++] = s;
  }

  std::vector<std::int64_t> dist(n, kUnreachable);
  std::deque<StateId> queue;
  dist[t] = 0;
  queue.push_back(t);
  while (!queue.empty()) {
    const StateId v = queue.front();
    queue.pop_front();
    for (std::size_t i = offset[v]; i < offset[v + 1]; ++i) {
      const StateId u = preds[i];
      if (dist[u] == kUnreachable) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

std::vector<StateId> reachable_set(const Environment& env, StateId s) {
  const auto dist = distances_from(env, s);
  std::vector<StateId> result;
  for (StateId v = 0; v < env.state_count(); ++v) {
    if (dist[v] != kUnreachable) result.push_back(v);
  }
  return result;
}

std::uint32_t diameter(const Environment& env) {
  std::int64_t best = 0;
  for (StateId s = 0; s < env.state_count(); ++s) {
    for (std::int64_t d : distances_from(env, s)) best = std::max(best, d);
  }
  return static_cast<std::uint32_t>(best);
}

std::optional<ActionSeq> shortest_action_seq(const Environment& env,
                                             StateId s, StateId t) {
  check_state(env, s, "source");
  const auto dist = distances_to(env, t);
  if (dist[s] == kUnreachable) return std::nullopt;
  // Greedy descent on distance-to-target; picking the smallest action at
  // each step yields the lexicographically smallest shortest sequence.
  ActionSeq seq;
  StateId cur = s;
  while (dist[cur] > 0) {
    for (ActionId a = 0; a < env.action_count(); ++a) {
      const StateId next = env.step(cur, a);
      if (dist[next] == dist[cur] - 1) {
        seq.push_back(a);
        cur = next;
        break;
      }
    }
  }
  return seq;
}

std::vector<std::vector<std::int64_t>> all_pairs_distances(
    const Environment& env) {
  const std::uint32_t n = env.state_count();
  std::vector<std::vector<std::int64_t>> dist(
      n, std::vector<std::int64_t>(n, kUnreachable));
  for (StateId s = 0; s < n; ++s) {
    auto row = distances_from(env, s);
    for (StateId t = 0; t < n; ++t) dist[s][t] = row[t];
  }
  return dist;
}

StateId apply_actions(const Environment& env, StateId s,
                      const ActionSeq& actions) {
  check_state(env, s, "start");
  StateId cur = s;
  for (ActionId a : actions) {
    check_action(env, a, "applied");
    cur = env.step(cur, a);
  }
  return cur;
}

}  // namespace icx
