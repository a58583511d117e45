#pragma once

// Per-edge travel-time models: exogenous (fixed delay function), Vickrey
// point queue, and linear edge delay.

#include "dynflow/time_algebra.hpp"

namespace dynflow {

struct TravelTimeModel {
  enum class Kind { Exogenous, Vickrey, LinearDelay };

  Kind kind = Kind::Vickrey;
  Rational tau;             // Vickrey / LinearDelay: free-flow time, > 0
  Rational nu;              // Vickrey / LinearDelay: service rate, > 0
  PiecewiseLinear exo_delay;  // Exogenous: D_e >= 0 with id + D_e non-decreasing

  // Validating constructors. Vickrey and linear delay require tau > 0 and
  // nu > 0; zero travel times are only expressible via Exogenous.
  static TravelTimeModel vickrey(Rational tau, Rational nu);
  static TravelTimeModel linear_delay(Rational tau, Rational nu);
  static TravelTimeModel exogenous(PiecewiseLinear delay);

  // Lower bound on the traversal time over the whole horizon; used as the
  // per-edge weight for budgeted walk enumeration.
  Rational min_delay() const;

  bool operator==(const TravelTimeModel&) const = default;
};

}  // namespace dynflow
