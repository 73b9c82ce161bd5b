#include "icx/generators.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "icx/vm.hpp"

namespace icx {

CorridorStates corridor_states(std::size_t x_len) {
  const auto n = static_cast<StateId>(x_len);
  return {0, n + 1, n + 2};
}

Environment gated_corridor(std::string_view x) {
  if (x.empty()) {
    throw std::invalid_argument("gated corridor needs a non-empty bit string");
  }
  for (char c : x) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("gated corridor key must be over {0,1}");
    }
  }
  const std::uint32_t n = static_cast<std::uint32_t>(x.size());
  const CorridorStates ids = corridor_states(n);
  const std::uint32_t states = n + 3;
  std::vector<StateId> table(static_cast<std::size_t>(states) * 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    const ActionId good = (x[i] == '1') ? 1 : 0;
    table[i * 2 + good] = i + 1;
    table[i * 2 + (1 - good)] = ids.fail;
  }
  table[n * 2 + 0] = ids.goal;
  table[n * 2 + 1] = ids.goal;
  table[ids.goal * 2 + 0] = ids.goal;
  table[ids.goal * 2 + 1] = ids.goal;
  table[ids.fail * 2 + 0] = ids.fail;
  table[ids.fail * 2 + 1] = ids.fail;
  return Environment("corridor_" + std::string(x), states, 2,
                     std::move(table));
}

Environment random_env(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  if (n < 1 || m < 1) {
    throw std::invalid_argument("random_env needs n >= 1 and m >= 1");
  }
  std::mt19937_64 rng(seed);
  std::vector<StateId> table(static_cast<std::size_t>(n) * m);
  for (auto& target : table) {
    // rng() % n rather than uniform_int_distribution: the distribution's
    // algorithm is implementation-defined, and outputs must be stable.
    target = static_cast<StateId>(rng() % n);
  }
  return Environment("random_" + std::to_string(n) + "x" + std::to_string(m) +
                         "_s" + std::to_string(seed),
                     n, m, std::move(table));
}

Environment cycle_env(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("cycle_env needs n >= 1");
  std::vector<StateId> table(n);
  for (std::uint32_t i = 0; i < n; ++i) table[i] = (i + 1) % n;
  return Environment("cycle_" + std::to_string(n), n, 1, std::move(table));
}

Environment grid_env(std::uint32_t w, std::uint32_t h) {
  if (w < 1 || h < 1) throw std::invalid_argument("grid_env needs w,h >= 1");
  const std::uint32_t n = w * h;
  std::vector<StateId> table(static_cast<std::size_t>(n) * 4);
  for (std::uint32_t r = 0; r < h; ++r) {
    for (std::uint32_t c = 0; c < w; ++c) {
      const StateId s = r * w + c;
      const std::uint32_t rn = (r > 0) ? r - 1 : r;      // N
      const std::uint32_t ce = (c + 1 < w) ? c + 1 : c;  // E
      const std::uint32_t rs = (r + 1 < h) ? r + 1 : r;  // S
      const std::uint32_t cw = (c > 0) ? c - 1 : c;      // W
      table[s * 4 + 0] = rn * w + c;
      table[s * 4 + 1] = r * w + ce;
      table[s * 4 + 2] = rs * w + c;
      table[s * 4 + 3] = r * w + cw;
    }
  }
  return Environment("grid_" + std::to_string(w) + "x" + std::to_string(h), n,
                     4, std::move(table));
}

std::uint32_t complexity_proxy(const Environment& env) {
  const std::uint32_t n = env.state_count();
  const std::uint32_t m = env.action_count();
  const std::uint32_t value_bits = state_bits(n);

  std::uint32_t bits = gamma_len(n) + gamma_len(m);

  // Per-action column of (target - state) mod n, run-length coded. The
  // delta view makes "shift" structure (cycles, corridors) collapse into
  // long runs that a raw target listing would miss.
  std::uint64_t run_len = 0;
  std::uint32_t run_value = 0;
  bool in_run = false;
  const auto flush = [&] {
    if (in_run) bits += gamma_len(run_len) + value_bits;
  };
  for (ActionId a = 0; a < m; ++a) {
    for (StateId s = 0; s < n; ++s) {
      const std::uint32_t delta = (env.step(s, a) + n - s) % n;
      if (in_run && delta == run_value) {
        ++run_len;
      } else {
        flush();
        in_run = true;
        run_value = delta;
        run_len = 1;
      }
    }
  }
  flush();
  return bits;
}

}  // namespace icx
