#pragma once

// Brute-force reference implementations used as test oracles. Everything
// here is deliberately independent of the library's BFS / enumeration /
// closed-form code paths: sequences are enumerated exhaustively, programs
// are found by decoding every bit string, and integrals are done by
// adaptive quadrature.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "icx/env.hpp"
#include "icx/evaluation.hpp"
#include "icx/vm.hpp"

namespace icx::testing {

/// Minimum length over all action strings of length <= max_len whose
/// trajectory from s ends at t. Enumerates all m^L strings per length.
inline std::optional<std::size_t> brute_min_actions(const Environment& env,
                                                    StateId s, StateId t,
                                                    std::size_t max_len) {
  if (s == t) return 0;
  const std::uint32_t m = env.action_count();
  std::vector<ActionId> seq;
  for (std::size_t len = 1; len <= max_len; ++len) {
    seq.assign(len, 0);
    while (true) {
      StateId cur = s;
      for (ActionId a : seq) cur = env.step(cur, a);
      if (cur == t) return len;
      // Odometer increment over the action alphabet.
      std::size_t i = 0;
      for (; i < len; ++i) {
        if (++seq[i] < m) break;
        seq[i] = 0;
      }
      if (i == len) break;
    }
  }
  return std::nullopt;
}

/// Closure of {s} under all action strings of length <= max_len.
inline std::set<StateId> brute_reachable(const Environment& env, StateId s,
                                         std::size_t max_len) {
  std::set<StateId> seen{s};
  const std::uint32_t m = env.action_count();
  std::vector<ActionId> seq;
  for (std::size_t len = 1; len <= max_len; ++len) {
    seq.assign(len, 0);
    while (true) {
      StateId cur = s;
      for (ActionId a : seq) cur = env.step(cur, a);
      seen.insert(cur);
      std::size_t i = 0;
      for (; i < len; ++i) {
        if (++seq[i] < m) break;
        seq[i] = 0;
      }
      if (i == len) break;
    }
  }
  return seen;
}

/// Every valid program of length exactly `bits`, found by decoding all 2^bits
/// strings in ascending (lexicographic) order.
inline std::vector<std::string> brute_valid_programs_of_length(
    EnvDims dims, int bits, Regime regime) {
  std::vector<std::string> valid;
  std::vector<Instruction> code;
  std::string candidate(static_cast<std::size_t>(bits), '0');
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t value = 0; value < total; ++value) {
    for (int i = 0; i < bits; ++i) {
      candidate[static_cast<std::size_t>(i)] =
          ((value >> (bits - 1 - i)) & 1) ? '1' : '0';
    }
    if (!try_decode(candidate, dims, code)) continue;
    if (regime == Regime::Bare) {
      bool has_goto = false;
      for (const Instruction& ins : code) {
        if (ins.kind == Instruction::Kind::Goto) has_goto = true;
      }
      if (has_goto) continue;
    }
    valid.push_back(candidate);
  }
  return valid;
}

/// All valid programs of length 2..max_bits in (length, lex) order.
inline std::vector<std::string> brute_valid_programs(EnvDims dims,
                                                     int max_bits,
                                                     Regime regime) {
  std::vector<std::string> valid;
  for (int bits = 2; bits <= max_bits; ++bits) {
    auto layer = brute_valid_programs_of_length(dims, bits, regime);
    valid.insert(valid.end(), layer.begin(), layer.end());
  }
  return valid;
}

/// Adaptive Simpson quadrature of f over [lo, hi].
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double lo, double hi, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double flo = f(lo), fmid = f(mid), fhi = f(hi);
  const double whole = (hi - lo) / 6.0 * (flo + 4 * fmid + fhi);

  const std::function<double(double, double, double, double, double, double,
                             int)>
      recurse = [&](double a, double b, double fa, double fb, double fm,
                    double s, int d) -> double {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
    if (d <= 0 || std::abs(left + right - s) < 15 * tol) {
      return left + right + (left + right - s) / 15.0;
    }
    return recurse(a, m, fa, fm, flm, left, d - 1) +
           recurse(m, b, fm, fb, frm, right, d - 1);
  };
  return recurse(lo, hi, flo, fhi, fmid, whole, depth);
}

/// Numeric integral of 2^-k * curve(k) over [0, inf): quadrature up to the
/// last breakpoint, analytic constant tail beyond it.
inline double quadrature_scalar_competence(const CompetenceCurve& curve) {
  if (curve.steps.empty()) return 0;
  const double k_last = curve.steps.back().first;
  const double tail =
      curve.steps.back().second * std::exp2(-k_last) / std::log(2.0);
  if (k_last <= 0) return tail;
  const auto integrand = [&](double k) {
    return std::exp2(-k) * curve.value_at(k);
  };
  return adaptive_simpson(integrand, 0.0, k_last, 1e-13, 48) + tail;
}

}  // namespace icx::testing
