#pragma once

// Reference computations written independently of the library: closed-form
// tables typed in by hand, a separate Jacobi integrator, plain bisection, and
// Eigen's generic matrix exponential.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numbers>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;

/// nabla_{xi_j} xi_i as (xi_1, xi_2, xi_3) coefficients, 0-based j, i.
inline std::array<double, 3> covder(const std::array<double, 3>& l, int j, int i) {
  const double l1 = l[0], l2 = l[1], l3 = l[2];
  std::array<double, 3> r{0.0, 0.0, 0.0};
  if (j == 0 && i == 1) r[2] = (-l1 + l2 + l3) / (2.0 * l3);
  if (j == 0 && i == 2) r[1] = (l1 - l2 - l3) / (2.0 * l2);
  if (j == 1 && i == 0) r[2] = (-l1 + l2 - l3) / (2.0 * l3);
  if (j == 1 && i == 2) r[0] = (l1 - l2 + l3) / (2.0 * l1);
  if (j == 2 && i == 0) r[1] = (l1 + l2 - l3) / (2.0 * l2);
  if (j == 2 && i == 1) r[0] = (-l1 - l2 + l3) / (2.0 * l1);
  return r;
}

/// Pauli-based matrices of the basis, typed out directly.
inline Eigen::Matrix2cd xi(int k) {
  const Complex I(0.0, 1.0);
  Eigen::Matrix2cd s;
  if (k == 0) s << 0.0, 1.0, 1.0, 0.0;
  if (k == 1) s << 0.0, -I, I, 0.0;
  if (k == 2) s << 1.0, 0.0, 0.0, -1.0;
  return (-0.5 * I) * s;
}

inline Eigen::Matrix2cd expm(const Eigen::Matrix2cd& m) { return m.exp(); }

/// Normal Jacobi system along exp(t xi_1), state (f, f', h, h'):
/// f'' = lambda h' - (1 - lambda) f, h'' = -f'. Classical RK4 on a real grid.
/// Returns the 2x2 matrix with columns started from (f', h')(0) = e_1, e_2.
inline Eigen::Matrix2d jacobi_rk4(double lambda, double t, int n) {
  using S = Eigen::Vector4d;
  auto rhs = [lambda](const S& y) {
    return S(y[1], lambda * y[3] - (1.0 - lambda) * y[0], y[3], -y[1]);
  };
  Eigen::Matrix2d out;
  for (int col = 0; col < 2; ++col) {
    S y(0.0, col == 0 ? 1.0 : 0.0, 0.0, col == 1 ? 1.0 : 0.0);
    const double h = t / n;
    for (int k = 0; k < n; ++k) {
      const S k1 = rhs(y);
      const S k2 = rhs(y + 0.5 * h * k1);
      const S k3 = rhs(y + 0.5 * h * k2);
      const S k4 = rhs(y + h * k3);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    out(0, col) = y[0];
    out(1, col) = y[2];
  }
  return out;
}

/// Root of m t = tanh t on [lo, hi] by bisection alone.
inline double bisect_tanh(double m, double lo, double hi, double tol) {
  auto g = [m](double t) { return m * t - std::tanh(t); };
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng); }
  std::array<double, 3> vec(double a, double b) { return {uniform(a, b), uniform(a, b), uniform(a, b)}; }
};

}  // namespace oracle
