#include "dynflow/travel_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynflow {

TravelTimeModel TravelTimeModel::vickrey(Rational tau, Rational nu) {
  if (tau <= 0 || nu <= 0) throw std::invalid_argument("vickrey requires tau > 0 and nu > 0");
  TravelTimeModel m;
  m.kind = Kind::Vickrey;
  m.tau = std::move(tau);
  m.nu = std::move(nu);
  return m;
}

TravelTimeModel TravelTimeModel::linear_delay(Rational tau, Rational nu) {
  if (tau <= 0 || nu <= 0) throw std::invalid_argument("linear delay requires tau > 0 and nu > 0");
  TravelTimeModel m;
  m.kind = Kind::LinearDelay;
  m.tau = std::move(tau);
  m.nu = std::move(nu);
  return m;
}

TravelTimeModel TravelTimeModel::exogenous(PiecewiseLinear delay) {
  if (!delay.nonnegative()) throw std::invalid_argument("exogenous delay must be nonnegative");
  // FIFO: t + D(t) must be non-decreasing; linear pieces make the breakpoint
  // check sufficient.
  for (std::size_t i = 0; i + 1 < delay.breakpoints.size(); ++i) {
    if (delay.breakpoints[i] + delay.values[i] > delay.breakpoints[i + 1] + delay.values[i + 1]) {
      throw std::invalid_argument("exogenous delay violates FIFO");
    }
  }
  TravelTimeModel m;
  m.kind = Kind::Exogenous;
  m.exo_delay = std::move(delay);
  return m;
}

Rational TravelTimeModel::min_delay() const {
  if (kind != Kind::Exogenous) return tau;
  return *std::min_element(exo_delay.values.begin(), exo_delay.values.end());
}

}  // namespace dynflow
