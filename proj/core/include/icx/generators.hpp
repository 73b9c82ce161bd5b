#pragma once

#include <cstdint>
#include <string_view>

#include "icx/env.hpp"

namespace icx {

/// State layout of gated_corridor(x) with |x| = n: corridor cells are
/// 0..n, the goal is n+1, the absorbing failure sink is n+2.
struct CorridorStates {
  StateId start = 0;
  StateId goal = 0;
  StateId fail = 0;
};

CorridorStates corridor_states(std::size_t x_len);

/// The corridor keyed by a bit string x: from cell i, action x[i] advances,
/// the other action drops into the absorbing fail state. Both actions lead
/// from the last cell to the goal; goal and fail are absorbing. The only way
/// to reach the goal from the start is to spell x and then take one more
/// action.
Environment gated_corridor(std::string_view x);

/// Uniform random transition table, deterministic in (n, m, seed).
Environment random_env(std::uint32_t n, std::uint32_t m, std::uint64_t seed);

/// One action, T(i) = i+1 mod n. Distances are (j - i) mod n.
Environment cycle_env(std::uint32_t n);

/// w*h cells, four actions (N, E, S, W), moves clamp at the edges.
/// State index is row * w + col; distances are Manhattan.
Environment grid_env(std::uint32_t w, std::uint32_t h);

/// Description-length surrogate used for ensemble weighting: bit length of
/// a run-length code of the transition table (per action, the sequence of
/// (target - state) mod n values). Deterministic and positive. This is an
/// upper-bound stand-in for descriptive complexity, not Kolmogorov
/// complexity; regular structure (cycles, uniform corridors) codes shorter
/// than scrambled tables.
std::uint32_t complexity_proxy(const Environment& env);

}  // namespace icx
