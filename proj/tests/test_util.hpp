#pragma once

// Shared helpers for the test suites: terse constructors for exact values and
// deterministic random generators (fixed seeds live in the test cases).

#include "dynflow/rational.hpp"
#include "dynflow/time_algebra.hpp"

#include <random>
#include <vector>

namespace testutil {

using dynflow::Interval;
using dynflow::MonotoneMap;
using dynflow::PiecewiseLinear;
using dynflow::Rational;
using dynflow::StepFunction;

inline Rational rat(const std::string& s) { return dynflow::parse_rational(s); }

inline StepFunction sf(std::vector<std::string> bps, std::vector<std::string> vals) {
  std::vector<Rational> b, v;
  for (const auto& s : bps) b.push_back(rat(s));
  for (const auto& s : vals) v.push_back(rat(s));
  return StepFunction::from_cells(std::move(b), std::move(v));
}

inline PiecewiseLinear pwl(std::vector<std::string> bps, std::vector<std::string> vals) {
  std::vector<Rational> b, v;
  for (const auto& s : bps) b.push_back(rat(s));
  for (const auto& s : vals) v.push_back(rat(s));
  return PiecewiseLinear::from_points(std::move(b), std::move(v));
}

// Random rational in [0, max_num] with denominator 1, 2, or 4.
inline Rational rnd_rat(std::mt19937& rng, int max_num = 6) {
  static const int dens[] = {1, 2, 4};
  std::uniform_int_distribution<int> den_pick(0, 2);
  const int den = dens[den_pick(rng)];
  std::uniform_int_distribution<int> num_pick(0, max_num * den);
  return Rational(num_pick(rng), den);
}

// Random nonnegative step function on [0, horizon] with up to max_cells cells.
inline StepFunction rnd_step(std::mt19937& rng, const Rational& horizon, int max_cells = 4,
                             int max_value = 4) {
  std::uniform_int_distribution<int> n_pick(1, max_cells);
  const int n = n_pick(rng);
  std::vector<Rational> bps{Rational(0)};
  for (int i = 0; i < n - 1; ++i) {
    Rational t = rnd_rat(rng);
    // Rescale into (0, horizon).
    t = t * horizon / 7 + horizon / 13;
    if (t > 0 && t < horizon) bps.push_back(t);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  bps.push_back(horizon);
  std::vector<Rational> vals;
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) vals.push_back(rnd_rat(rng, max_value));
  return StepFunction::from_cells(std::move(bps), std::move(vals));
}

// Random monotone map [0, horizon] -> [0, horizon] (may contain plateaus).
inline MonotoneMap rnd_monotone(std::mt19937& rng, const Rational& horizon, int max_kinks = 3) {
  std::uniform_int_distribution<int> n_pick(0, max_kinks);
  const int kinks = n_pick(rng);
  std::vector<Rational> bps{Rational(0)};
  for (int i = 0; i < kinks; ++i) {
    Rational t = rnd_rat(rng) * horizon / 7 + horizon / 11;
    if (t > 0 && t < horizon) bps.push_back(t);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  bps.push_back(horizon);
  std::vector<Rational> vals;
  Rational cur = rnd_rat(rng) * horizon / 13;
  std::uniform_int_distribution<int> plateau_pick(0, 2);
  for (std::size_t i = 0; i < bps.size(); ++i) {
    vals.push_back(cur);
    if (i + 1 < bps.size() && plateau_pick(rng) != 0) {
      cur += rnd_rat(rng) * (horizon - cur) / 8;
    }
    if (cur > horizon) cur = horizon;
  }
  return PiecewiseLinear::from_points(std::move(bps), std::move(vals));
}

}  // namespace testutil
