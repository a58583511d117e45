#pragma once

// Exact algebra over piecewise-constant densities on [0, t_f], monotone
// piecewise-linear time maps, and the finite signed measures obtained by
// pushing densities forward through such maps. Every value is immutable
// after construction and every operation is a pure function.

#include "dynflow/rational.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace dynflow {

// ---------------------------------------------------------------------------
// Interval

// A bounded interval with per-end open/closed flags; the carrier for the
// (finite unions of) intervals the algorithms quantify over.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  Rational length() const { return empty() ? Rational(0) : Rational(hi - lo); }
  bool contains(const Rational& x) const;

  static Interval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }
  static Interval open_closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, true}; }
  static Interval closed_open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, false}; }
  static Interval point(const Rational& x) { return {x, x, true, true}; }

  bool operator==(const Interval&) const = default;
};

// ---------------------------------------------------------------------------
// StepFunction

// A piecewise-constant function on [0, t_f]: value values[i] on the half-open
// cell [breakpoints[i], breakpoints[i+1]), and values.back() at t_f itself.
// Canonical form (strictly increasing breakpoints starting at 0, no two
// adjacent cells with equal value) makes equality decidable and equal to
// a.e.-equality of the represented densities.
struct StepFunction {
  std::vector<Rational> breakpoints;  // size n+1, breakpoints[0] == 0
  std::vector<Rational> values;       // size n >= 1

  Rational horizon() const { return breakpoints.back(); }
  Rational value_at(const Rational& t) const;  // cell value; values.back() at t_f
  bool is_zero() const { return values.size() == 1 && values[0] == 0; }
  bool nonnegative() const;
  // Support endpoints: smallest/largest time bounding {t : f(t) != 0}; nullopt if f == 0.
  std::optional<Rational> support_end() const;

  static StepFunction zero(const Rational& horizon);
  static StepFunction constant(const Rational& value, const Rational& horizon);
  // Canonicalizes (merges equal adjacent cells); validates shape.
  static StepFunction from_cells(std::vector<Rational> breakpoints, std::vector<Rational> values);
  // Indicator-times-constant: value on [a,b) (intersected with [0,horizon]), 0 elsewhere.
  static StepFunction box(const Rational& value, const Rational& a, const Rational& b,
                          const Rational& horizon);

  bool operator==(const StepFunction&) const = default;
};

// ---------------------------------------------------------------------------
// PiecewiseLinear / MonotoneMap

// A continuous piecewise-linear function on [0, t_f], stored as values at
// strictly increasing breakpoints with linear interpolation between them.
// Canonical form removes collinear interior breakpoints.
//
// MonotoneMap is the same representation with the additional invariant that
// the values are non-decreasing and stay inside [0, t_f]; functions that
// require it (compose, preimage, pushforward) check is_monotone().
struct PiecewiseLinear {
  std::vector<Rational> breakpoints;  // size n+1, breakpoints[0] == 0
  std::vector<Rational> values;       // size n+1, value at each breakpoint

  Rational horizon() const { return breakpoints.back(); }
  Rational eval(const Rational& t) const;
  bool is_monotone() const;  // non-decreasing values
  bool nonnegative() const;
  // Slope on the open cell (breakpoints[i], breakpoints[i+1]).
  Rational slope(std::size_t i) const;

  static PiecewiseLinear identity(const Rational& horizon);
  static PiecewiseLinear constant(const Rational& value, const Rational& horizon);
  // Canonicalizes (drops collinear interior points); validates shape.
  static PiecewiseLinear from_points(std::vector<Rational> breakpoints, std::vector<Rational> values);

  bool operator==(const PiecewiseLinear&) const = default;
};

using MonotoneMap = PiecewiseLinear;

// ---------------------------------------------------------------------------
// TimeMeasure

// A finite signed measure on [0, t_f]: an absolutely continuous part given by
// a StepFunction density plus finitely many atoms (distinct locations, all
// with nonzero mass, sorted by location).
struct TimeMeasure {
  StepFunction density;
  std::vector<std::pair<Rational, Rational>> atoms;  // (location, mass)

  Rational horizon() const { return density.horizon(); }
  Rational measure_of(const Interval& over) const;
  Rational total() const { return measure_of(Interval::closed(Rational(0), horizon())); }
  bool is_zero() const { return density.is_zero() && atoms.empty(); }
  bool nonnegative_setwise() const;  // density >= 0 and all atom masses >= 0
  bool nonpositive_setwise() const;

  static TimeMeasure from_density(StepFunction density) { return {std::move(density), {}}; }
  static TimeMeasure zero(const Rational& horizon) { return {StepFunction::zero(horizon), {}}; }

  bool operator==(const TimeMeasure&) const = default;
};

// Error value for absolutely_continuous_part on a measure with atoms; the
// computational form of "walk inflow mass arrives during a null set of times".
struct HasAtoms {
  std::vector<Rational> locations;
};

// ---------------------------------------------------------------------------
// Operations

enum class CombineOp { Add, Sub, Min, Max };

// Exact Lebesgue integral over the interval (endpoint flags are irrelevant).
Rational integrate(const StepFunction& f, const Interval& over);
Rational integrate(const PiecewiseLinear& f, const Interval& over);
// Integral over all of [0, t_f].
Rational integrate(const StepFunction& f);
// Exact \int f*g over the interval (f piecewise linear, g piecewise constant).
Rational integrate_product(const PiecewiseLinear& f, const StepFunction& g, const Interval& over);
// Exact \int t * f(t) dt over all of [0, t_f].
Rational integrate_id_times(const StepFunction& f);
// Exact \int -t dm for a measure (used by the node-balance travel-time route).
Rational integrate_neg_id(const TimeMeasure& m);

// Exact pointwise combination on the common breakpoint refinement.
StepFunction pointwise_combine(CombineOp op, const StepFunction& f, const StepFunction& g);
StepFunction scale(const StepFunction& f, const Rational& c);
StepFunction pw_add(const StepFunction& f, const StepFunction& g);
StepFunction pw_sub(const StepFunction& f, const StepFunction& g);
StepFunction pw_min(const StepFunction& f, const StepFunction& g);
StepFunction pw_max(const StepFunction& f, const StepFunction& g);
// f <= g pointwise (on the canonical refinement).
bool pw_le(const StepFunction& f, const StepFunction& g);

// f * 1_T where T is the union of the intervals.
StepFunction restrict_to(const StepFunction& f, const std::vector<Interval>& to);
StepFunction restrict_to(const StepFunction& f, const Interval& to);

// Exact composition outer(inner(t)); both maps must be monotone. Values are
// clamped into [0, outer horizon] (a no-op when the range invariant holds).
MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner);

// Exact preimage A^{-1}(of) of an interval under a monotone map; by
// monotonicity the result is a single (possibly empty) interval, returned as
// a list for uniformity with finite unions.
std::vector<Interval> preimage(const MonotoneMap& A, const Interval& of);

// Maximal intervals on which A is constant (only those with positive length).
std::vector<Interval> plateaus(const MonotoneMap& A);

// The image measure (h * Lebesgue) о A^{-1}: density value/slope on images of
// positive-slope cells; an atom per plateau carrying nonzero h-mass.
TimeMeasure pushforward(const StepFunction& h, const MonotoneMap& A);

// The density when the measure has no atoms, HasAtoms otherwise.
std::variant<StepFunction, HasAtoms> absolutely_continuous_part(const TimeMeasure& m);

// Measure arithmetic (exact, re-canonicalized).
TimeMeasure measure_add(const TimeMeasure& a, const TimeMeasure& b);
TimeMeasure measure_sub(const TimeMeasure& a, const TimeMeasure& b);
TimeMeasure measure_negate(const TimeMeasure& a);
// a <= b on every interval and atom (checked on the canonical refinement).
bool measure_le_setwise(const TimeMeasure& a, const TimeMeasure& b);

// Sorted union of all breakpoints of the given functions (must share a
// horizon); always contains 0 and t_f. Empty input yields {0, horizon_hint}.
std::vector<Rational> refine(const std::vector<const StepFunction*>& fs,
                             const std::vector<const PiecewiseLinear*>& gs,
                             const std::optional<Rational>& horizon_hint = std::nullopt);

// Zero-extends a step function to a larger horizon (identity if equal).
StepFunction extend_horizon(const StepFunction& f, const Rational& new_horizon);

}  // namespace dynflow
