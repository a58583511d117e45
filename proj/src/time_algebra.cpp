#include "dynflow/time_algebra.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace dynflow {

namespace {

void check(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::vector<Rational> sorted_unique(std::vector<Rational> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Clamps an interval to [0, horizon]; endpoint flags are preserved.
Interval clamp_interval(const Interval& over, const Rational& horizon) {
  check(over.lo >= 0 && over.hi <= horizon, "interval outside horizon");
  return over;
}

}  // namespace

// ---------------------------------------------------------------------------
// Interval

bool Interval::contains(const Rational& x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

// ---------------------------------------------------------------------------
// StepFunction

Rational StepFunction::value_at(const Rational& t) const {
  check(t >= 0 && t <= horizon(), "time outside horizon");
  // Last cell's value also serves as the value at t_f itself.
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  std::size_t cell = static_cast<std::size_t>(it - breakpoints.begin());
  if (cell > 0) --cell;
  if (cell >= values.size()) cell = values.size() - 1;
  return values[cell];
}

bool StepFunction::nonnegative() const {
  return std::all_of(values.begin(), values.end(), [](const Rational& v) { return v >= 0; });
}

std::optional<Rational> StepFunction::support_end() const {
  for (std::size_t i = values.size(); i-- > 0;) {
    if (values[i] != 0) return breakpoints[i + 1];
  }
  return std::nullopt;
}

StepFunction StepFunction::zero(const Rational& horizon) {
  return constant(Rational(0), horizon);
}

StepFunction StepFunction::constant(const Rational& value, const Rational& horizon) {
  check(horizon > 0, "horizon must be positive");
  return {{Rational(0), horizon}, {value}};
}

StepFunction StepFunction::from_cells(std::vector<Rational> breakpoints, std::vector<Rational> values) {
  check(breakpoints.size() >= 2, "need at least one cell");
  check(values.size() + 1 == breakpoints.size(), "breakpoint/value count mismatch");
  check(breakpoints.front() == 0, "breakpoints must start at 0");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    check(breakpoints[i] < breakpoints[i + 1], "breakpoints must be strictly increasing");
  }
  StepFunction f;
  f.breakpoints.push_back(breakpoints[0]);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!f.values.empty() && f.values.back() == values[i]) {
      f.breakpoints.back() = breakpoints[i + 1];  // merge with previous cell
    } else {
      f.values.push_back(values[i]);
      f.breakpoints.push_back(breakpoints[i + 1]);
    }
  }
  return f;
}

StepFunction StepFunction::box(const Rational& value, const Rational& a, const Rational& b,
                               const Rational& horizon) {
  check(horizon > 0, "horizon must be positive");
  const Rational lo = std::max(a, Rational(0));
  const Rational hi = std::min(b, horizon);
  if (lo >= hi || value == 0) return zero(horizon);
  std::vector<Rational> bps{Rational(0)};
  std::vector<Rational> vals;
  if (lo > 0) {
    vals.push_back(0);
    bps.push_back(lo);
  }
  vals.push_back(value);
  bps.push_back(hi);
  if (hi < horizon) {
    vals.push_back(0);
    bps.push_back(horizon);
  }
  return from_cells(std::move(bps), std::move(vals));
}

// ---------------------------------------------------------------------------
// PiecewiseLinear

Rational PiecewiseLinear::eval(const Rational& t) const {
  check(t >= 0 && t <= horizon(), "time outside horizon");
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
  std::size_t i = static_cast<std::size_t>(it - breakpoints.begin());
  if (i > 0) --i;
  if (i + 1 >= breakpoints.size()) return values.back();
  const Rational& a = breakpoints[i];
  const Rational& b = breakpoints[i + 1];
  return values[i] + (values[i + 1] - values[i]) * (t - a) / (b - a);
}

bool PiecewiseLinear::is_monotone() const {
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] > values[i + 1]) return false;
  }
  return true;
}

bool PiecewiseLinear::nonnegative() const {
  return std::all_of(values.begin(), values.end(), [](const Rational& v) { return v >= 0; });
}

Rational PiecewiseLinear::slope(std::size_t i) const {
  return (values[i + 1] - values[i]) / (breakpoints[i + 1] - breakpoints[i]);
}

PiecewiseLinear PiecewiseLinear::identity(const Rational& horizon) {
  check(horizon > 0, "horizon must be positive");
  return {{Rational(0), horizon}, {Rational(0), horizon}};
}

PiecewiseLinear PiecewiseLinear::constant(const Rational& value, const Rational& horizon) {
  check(horizon > 0, "horizon must be positive");
  return {{Rational(0), horizon}, {value, value}};
}

PiecewiseLinear PiecewiseLinear::from_points(std::vector<Rational> breakpoints,
                                             std::vector<Rational> values) {
  check(breakpoints.size() >= 2, "need at least one segment");
  check(values.size() == breakpoints.size(), "breakpoint/value count mismatch");
  check(breakpoints.front() == 0, "breakpoints must start at 0");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    check(breakpoints[i] < breakpoints[i + 1], "breakpoints must be strictly increasing");
  }
  PiecewiseLinear f;
  f.breakpoints.push_back(breakpoints[0]);
  f.values.push_back(values[0]);
  for (std::size_t i = 1; i + 1 < breakpoints.size(); ++i) {
    // Drop interior points where the incoming and outgoing slopes agree.
    const Rational left = (values[i] - f.values.back()) / (breakpoints[i] - f.breakpoints.back());
    const Rational right = (values[i + 1] - values[i]) / (breakpoints[i + 1] - breakpoints[i]);
    if (left != right) {
      f.breakpoints.push_back(breakpoints[i]);
      f.values.push_back(values[i]);
    }
  }
  f.breakpoints.push_back(breakpoints.back());
  f.values.push_back(values.back());
  return f;
}

// ---------------------------------------------------------------------------
// TimeMeasure

Rational TimeMeasure::measure_of(const Interval& over) const {
  Rational total = integrate(density, over);
  for (const auto& [loc, mass] : atoms) {
    if (over.contains(loc)) total += mass;
  }
  return total;
}

bool TimeMeasure::nonnegative_setwise() const {
  return density.nonnegative() &&
         std::all_of(atoms.begin(), atoms.end(), [](const auto& a) { return a.second >= 0; });
}

bool TimeMeasure::nonpositive_setwise() const {
  return std::all_of(density.values.begin(), density.values.end(),
                     [](const Rational& v) { return v <= 0; }) &&
         std::all_of(atoms.begin(), atoms.end(), [](const auto& a) { return a.second <= 0; });
}

// ---------------------------------------------------------------------------
// Integration

Rational integrate(const StepFunction& f, const Interval& over) {
  const Interval iv = clamp_interval(over, f.horizon());
  if (iv.empty()) return Rational(0);
  Rational total(0);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const Rational a = std::max(f.breakpoints[i], iv.lo);
    const Rational b = std::min(f.breakpoints[i + 1], iv.hi);
    if (a < b) total += f.values[i] * (b - a);
  }
  return total;
}

Rational integrate(const StepFunction& f) {
  return integrate(f, Interval::closed(Rational(0), f.horizon()));
}

Rational integrate(const PiecewiseLinear& f, const Interval& over) {
  const Interval iv = clamp_interval(over, f.horizon());
  if (iv.empty()) return Rational(0);
  Rational total(0);
  for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
    const Rational a = std::max(f.breakpoints[i], iv.lo);
    const Rational b = std::min(f.breakpoints[i + 1], iv.hi);
    if (a < b) total += (f.eval(a) + f.eval(b)) * (b - a) / 2;  // exact trapezoid
  }
  return total;
}

Rational integrate_product(const PiecewiseLinear& f, const StepFunction& g, const Interval& over) {
  check(f.horizon() == g.horizon(), "horizon mismatch");
  const Interval iv = clamp_interval(over, f.horizon());
  if (iv.empty()) return Rational(0);
  std::vector<Rational> pts = sorted_unique([&] {
    std::vector<Rational> all = f.breakpoints;
    all.insert(all.end(), g.breakpoints.begin(), g.breakpoints.end());
    all.push_back(iv.lo);
    all.push_back(iv.hi);
    return all;
  }());
  Rational total(0);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational& a = pts[i];
    const Rational& b = pts[i + 1];
    if (a < iv.lo || b > iv.hi) continue;
    total += g.value_at(a) * (f.eval(a) + f.eval(b)) * (b - a) / 2;
  }
  return total;
}

Rational integrate_id_times(const StepFunction& f) {
  Rational total(0);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const Rational& a = f.breakpoints[i];
    const Rational& b = f.breakpoints[i + 1];
    total += f.values[i] * (b * b - a * a) / 2;
  }
  return total;
}

Rational integrate_neg_id(const TimeMeasure& m) {
  Rational total = -integrate_id_times(m.density);
  for (const auto& [loc, mass] : m.atoms) total -= loc * mass;
  return total;
}

// ---------------------------------------------------------------------------
// Pointwise combination / restriction

StepFunction pointwise_combine(CombineOp op, const StepFunction& f, const StepFunction& g) {
  check(f.horizon() == g.horizon(), "horizon mismatch");
  std::vector<Rational> pts = sorted_unique([&] {
    std::vector<Rational> all = f.breakpoints;
    all.insert(all.end(), g.breakpoints.begin(), g.breakpoints.end());
    return all;
  }());
  std::vector<Rational> vals;
  vals.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational a = f.value_at(pts[i]);
    const Rational b = g.value_at(pts[i]);
    switch (op) {
      case CombineOp::Add: vals.push_back(a + b); break;
      case CombineOp::Sub: vals.push_back(a - b); break;
      case CombineOp::Min: vals.push_back(std::min(a, b)); break;
      case CombineOp::Max: vals.push_back(std::max(a, b)); break;
    }
  }
  return StepFunction::from_cells(std::move(pts), std::move(vals));
}

StepFunction scale(const StepFunction& f, const Rational& c) {
  StepFunction out = f;
  for (auto& v : out.values) v *= c;
  if (c == 0) return StepFunction::zero(f.horizon());
  return out;
}

StepFunction pw_add(const StepFunction& f, const StepFunction& g) { return pointwise_combine(CombineOp::Add, f, g); }
StepFunction pw_sub(const StepFunction& f, const StepFunction& g) { return pointwise_combine(CombineOp::Sub, f, g); }
StepFunction pw_min(const StepFunction& f, const StepFunction& g) { return pointwise_combine(CombineOp::Min, f, g); }
StepFunction pw_max(const StepFunction& f, const StepFunction& g) { return pointwise_combine(CombineOp::Max, f, g); }

bool pw_le(const StepFunction& f, const StepFunction& g) {
  return pw_sub(g, f).nonnegative();
}

StepFunction restrict_to(const StepFunction& f, const std::vector<Interval>& to) {
  std::vector<Rational> pts = f.breakpoints;
  for (const auto& iv : to) {
    clamp_interval(iv, f.horizon());
    pts.push_back(iv.lo);
    pts.push_back(iv.hi);
  }
  pts = sorted_unique(std::move(pts));
  std::vector<Rational> vals;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const bool covered = std::any_of(to.begin(), to.end(), [&](const Interval& iv) {
      return !iv.empty() && iv.lo <= pts[i] && pts[i + 1] <= iv.hi;
    });
    vals.push_back(covered ? f.value_at(pts[i]) : Rational(0));
  }
  return StepFunction::from_cells(std::move(pts), std::move(vals));
}

StepFunction restrict_to(const StepFunction& f, const Interval& to) {
  return restrict_to(f, std::vector<Interval>{to});
}

// ---------------------------------------------------------------------------
// Monotone map operations

namespace {

// Clamps the values of a piecewise-linear function into [lo, hi], inserting
// breakpoints where segments cross the bounds so the result is exact.
PiecewiseLinear clamp_range(const PiecewiseLinear& f, const Rational& lo, const Rational& hi) {
  std::vector<Rational> pts = f.breakpoints;
  for (std::size_t i = 0; i + 1 < f.breakpoints.size(); ++i) {
    const Rational& a = f.breakpoints[i];
    const Rational& b = f.breakpoints[i + 1];
    const Rational& va = f.values[i];
    const Rational& vb = f.values[i + 1];
    for (const Rational& c : {lo, hi}) {
      if ((va < c && c < vb) || (vb < c && c < va)) {
        pts.push_back(a + (c - va) * (b - a) / (vb - va));
      }
    }
  }
  pts = sorted_unique(std::move(pts));
  std::vector<Rational> vals;
  vals.reserve(pts.size());
  for (const Rational& x : pts) vals.push_back(std::min(std::max(f.eval(x), lo), hi));
  return PiecewiseLinear::from_points(std::move(pts), std::move(vals));
}

}  // namespace

MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner) {
  check(outer.is_monotone() && inner.is_monotone(), "compose requires monotone maps");
  std::vector<Rational> pts = inner.breakpoints;
  // Preimages of outer breakpoints under inner become breakpoints of the
  // composition.
  for (std::size_t i = 0; i + 1 < inner.breakpoints.size(); ++i) {
    const Rational& a = inner.breakpoints[i];
    const Rational& b = inner.breakpoints[i + 1];
    const Rational va = inner.values[i];
    const Rational vb = inner.values[i + 1];
    if (va == vb) continue;
    for (const Rational& c : outer.breakpoints) {
      if (va < c && c < vb) pts.push_back(a + (c - va) * (b - a) / (vb - va));
    }
  }
  pts = sorted_unique(std::move(pts));
  std::vector<Rational> vals;
  vals.reserve(pts.size());
  const Rational out_hi = outer.horizon();
  for (const Rational& x : pts) {
    Rational y = inner.eval(x);
    // Keep the argument inside outer's domain; a no-op when the range
    // invariant holds.
    y = std::min(std::max(y, Rational(0)), out_hi);
    vals.push_back(outer.eval(y));
  }
  // Horizon clamp, applied after each composition: the range must stay inside
  // [0, t_f]. Mid-segment crossings get their own breakpoints.
  return clamp_range(PiecewiseLinear::from_points(std::move(pts), std::move(vals)), Rational(0),
                     out_hi);
}

namespace {

// Smallest x with A(x) >= c, if any.
std::optional<Rational> first_ge(const MonotoneMap& A, const Rational& c) {
  if (A.values.front() >= c) return A.breakpoints.front();
  if (A.values.back() < c) return std::nullopt;
  for (std::size_t i = 0; i + 1 < A.values.size(); ++i) {
    if (A.values[i + 1] >= c) {
      // A crosses c inside segment i (values[i] < c <= values[i+1]).
      return A.breakpoints[i] + (c - A.values[i]) * (A.breakpoints[i + 1] - A.breakpoints[i]) /
                                    (A.values[i + 1] - A.values[i]);
    }
  }
  return std::nullopt;  // unreachable
}

// Largest x with A(x) <= c, if any.
std::optional<Rational> last_le(const MonotoneMap& A, const Rational& c) {
  if (A.values.back() <= c) return A.breakpoints.back();
  if (A.values.front() > c) return std::nullopt;
  for (std::size_t i = A.values.size() - 1; i-- > 0;) {
    if (A.values[i] <= c) {
      return A.breakpoints[i] + (c - A.values[i]) * (A.breakpoints[i + 1] - A.breakpoints[i]) /
                                    (A.values[i + 1] - A.values[i]);
    }
  }
  return std::nullopt;  // unreachable
}

}  // namespace

std::vector<Interval> preimage(const MonotoneMap& A, const Interval& of) {
  check(A.is_monotone(), "preimage requires a monotone map");
  if (of.empty()) return {};
  Interval out;
  // Lower end: {A >= lo} (closed) or {A > lo} (open).
  if (of.lo_closed) {
    auto x = first_ge(A, of.lo);
    if (!x) return {};
    out.lo = *x;
    out.lo_closed = true;
  } else {
    if (A.values.front() > of.lo) {
      out.lo = A.breakpoints.front();
      out.lo_closed = true;
    } else if (A.values.back() <= of.lo) {
      return {};
    } else {
      out.lo = *last_le(A, of.lo);
      out.lo_closed = false;
    }
  }
  // Upper end: {A <= hi} (closed) or {A < hi} (open).
  if (of.hi_closed) {
    auto x = last_le(A, of.hi);
    if (!x) return {};
    out.hi = *x;
    out.hi_closed = true;
  } else {
    if (A.values.back() < of.hi) {
      out.hi = A.breakpoints.back();
      out.hi_closed = true;
    } else if (A.values.front() >= of.hi) {
      return {};
    } else {
      out.hi = *first_ge(A, of.hi);
      out.hi_closed = false;
    }
  }
  if (out.empty()) return {};
  return {out};
}

std::vector<Interval> plateaus(const MonotoneMap& A) {
  check(A.is_monotone(), "plateaus requires a monotone map");
  std::vector<Interval> out;
  // In canonical form adjacent segments have distinct slopes, so each flat
  // segment is already maximal.
  for (std::size_t i = 0; i + 1 < A.breakpoints.size(); ++i) {
    if (A.values[i] == A.values[i + 1]) {
      out.push_back(Interval::closed(A.breakpoints[i], A.breakpoints[i + 1]));
    }
  }
  return out;
}

TimeMeasure pushforward(const StepFunction& h, const MonotoneMap& A) {
  check(A.is_monotone(), "pushforward requires a monotone map");
  check(h.horizon() == A.horizon(), "horizon mismatch");
  check(A.values.front() >= 0 && A.values.back() <= h.horizon(),
        "map range escapes the horizon");
  std::vector<Rational> pts = sorted_unique([&] {
    std::vector<Rational> all = h.breakpoints;
    all.insert(all.end(), A.breakpoints.begin(), A.breakpoints.end());
    return all;
  }());

  struct Piece {
    Rational lo, hi, value;
  };
  std::vector<Piece> pieces;
  std::map<Rational, Rational> atom_map;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational& a = pts[i];
    const Rational& b = pts[i + 1];
    const Rational v = h.value_at(a);
    if (v == 0) continue;
    const Rational ya = A.eval(a);
    const Rational yb = A.eval(b);
    if (ya == yb) {
      atom_map[ya] += v * (b - a);  // plateau carrying mass
    } else {
      pieces.push_back({ya, yb, v * (b - a) / (yb - ya)});
    }
  }

  // Assemble the density on the refinement of all piece endpoints.
  std::vector<Rational> dpts{Rational(0), h.horizon()};
  for (const auto& p : pieces) {
    dpts.push_back(p.lo);
    dpts.push_back(p.hi);
  }
  dpts = sorted_unique(std::move(dpts));
  std::vector<Rational> dvals;
  for (std::size_t i = 0; i + 1 < dpts.size(); ++i) {
    Rational v(0);
    for (const auto& p : pieces) {
      if (p.lo <= dpts[i] && dpts[i + 1] <= p.hi) v += p.value;
    }
    dvals.push_back(v);
  }
  TimeMeasure m;
  m.density = StepFunction::from_cells(std::move(dpts), std::move(dvals));
  for (const auto& [loc, mass] : atom_map) {
    if (mass != 0) m.atoms.emplace_back(loc, mass);
  }
  return m;
}

std::variant<StepFunction, HasAtoms> absolutely_continuous_part(const TimeMeasure& m) {
  if (m.atoms.empty()) return m.density;
  HasAtoms err;
  for (const auto& [loc, mass] : m.atoms) err.locations.push_back(loc);
  return err;
}

// ---------------------------------------------------------------------------
// Measure arithmetic

TimeMeasure measure_add(const TimeMeasure& a, const TimeMeasure& b) {
  TimeMeasure out;
  out.density = pw_add(a.density, b.density);
  std::map<Rational, Rational> atom_map;
  for (const auto& [loc, mass] : a.atoms) atom_map[loc] += mass;
  for (const auto& [loc, mass] : b.atoms) atom_map[loc] += mass;
  for (const auto& [loc, mass] : atom_map) {
    if (mass != 0) out.atoms.emplace_back(loc, mass);
  }
  return out;
}

TimeMeasure measure_negate(const TimeMeasure& a) {
  TimeMeasure out;
  out.density = scale(a.density, Rational(-1));
  for (const auto& [loc, mass] : a.atoms) out.atoms.emplace_back(loc, -mass);
  return out;
}

TimeMeasure measure_sub(const TimeMeasure& a, const TimeMeasure& b) {
  return measure_add(a, measure_negate(b));
}

bool measure_le_setwise(const TimeMeasure& a, const TimeMeasure& b) {
  return measure_sub(b, a).nonnegative_setwise();
}

// ---------------------------------------------------------------------------
// Refinement / horizon extension

std::vector<Rational> refine(const std::vector<const StepFunction*>& fs,
                             const std::vector<const PiecewiseLinear*>& gs,
                             const std::optional<Rational>& horizon_hint) {
  std::vector<Rational> pts;
  std::optional<Rational> horizon = horizon_hint;
  for (const auto* f : fs) {
    check(!horizon || *horizon == f->horizon(), "horizon mismatch");
    horizon = f->horizon();
    pts.insert(pts.end(), f->breakpoints.begin(), f->breakpoints.end());
  }
  for (const auto* g : gs) {
    check(!horizon || *horizon == g->horizon(), "horizon mismatch");
    horizon = g->horizon();
    pts.insert(pts.end(), g->breakpoints.begin(), g->breakpoints.end());
  }
  check(horizon.has_value(), "refine needs at least one function or a horizon hint");
  pts.push_back(Rational(0));
  pts.push_back(*horizon);
  return sorted_unique(std::move(pts));
}

StepFunction extend_horizon(const StepFunction& f, const Rational& new_horizon) {
  check(new_horizon >= f.horizon(), "cannot shrink the horizon");
  if (new_horizon == f.horizon()) return f;
  std::vector<Rational> bps = f.breakpoints;
  std::vector<Rational> vals = f.values;
  bps.push_back(new_horizon);
  vals.push_back(0);
  return StepFunction::from_cells(std::move(bps), std::move(vals));
}

}  // namespace dynflow
