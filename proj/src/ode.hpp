#pragma once

// Explicit Runge-Kutta steps for holomorphic ODEs y' = f(y) taken with a
// complex step dz. Internal to the library.

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace su2tube::detail {

using Complex = std::complex<double>;

template <class State, class Rhs>
State rk4_step(const Rhs& f, const State& y, Complex dz) {
  const State k1 = f(y);
  const State k2 = f(State(y + (0.5 * dz) * k1));
  const State k3 = f(State(y + (0.5 * dz) * k2));
  const State k4 = f(State(y + dz * k3));
  return y + (dz / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class State>
struct DopriResult {
  State y;
  double error;  // scaled max-norm of the embedded error estimate
};

/// Dormand-Prince 5(4). error <= 1 means the step meets atol/rtol.
template <class State, class Rhs>
DopriResult<State> dopri_step(const Rhs& f, const State& y, Complex dz, double atol, double rtol) {
  const State k1 = f(y);
  const State k2 = f(State(y + dz * (1.0 / 5.0) * k1));
  const State k3 = f(State(y + dz * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2)));
  const State k4 = f(State(y + dz * ((44.0 / 45.0) * k1 - (56.0 / 15.0) * k2 + (32.0 / 9.0) * k3)));
  const State k5 = f(State(y + dz * ((19372.0 / 6561.0) * k1 - (25360.0 / 2187.0) * k2 +
                                     (64448.0 / 6561.0) * k3 - (212.0 / 729.0) * k4)));
  const State k6 = f(State(y + dz * ((9017.0 / 3168.0) * k1 - (355.0 / 33.0) * k2 +
                                     (46732.0 / 5247.0) * k3 + (49.0 / 176.0) * k4 -
                                     (5103.0 / 18656.0) * k5)));
  const State y5 = y + dz * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3 + (125.0 / 192.0) * k4 -
                             (2187.0 / 6784.0) * k5 + (11.0 / 84.0) * k6);
  const State k7 = f(y5);
  const State y4 = y + dz * ((5179.0 / 57600.0) * k1 + (7571.0 / 16695.0) * k3 +
                             (393.0 / 640.0) * k4 - (92097.0 / 339200.0) * k5 +
                             (187.0 / 2100.0) * k6 + (1.0 / 40.0) * k7);
  double err = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
    err = std::max(err, std::abs(y5[i] - y4[i]) / sc);
  }
  return {y5, err};
}

}  // namespace su2tube::detail
