#pragma once

// Jacobi fields normal to the geodesic exp(t xi_1) of the Berger metric
// lambda = (1, 1, lambda), and the focal criterion for the map Phi.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "su2tube/lie.hpp"

namespace su2tube {

/// Second derivatives (f'', h'') of the normal Jacobi system
///   f'' = lambda h' - (1 - lambda) f,   h'' = -f',
/// for Y = f xi_2 + h xi_3 along exp(t xi_1), Quarter normalization.
template <class T>
std::pair<T, T> jacobi_rhs(double lambda, T f, T fp, T h, T hp) {
  (void)h;
  return {lambda * hp - (1.0 - lambda) * f, -fp};
}

/// General solution f = a cos t + b sin t + c,
/// h = b cos t - a sin t + ((1 - lambda)/lambda) c t + d.
template <class T>
std::pair<T, T> closed_form_solution(double a, double b, double c, double d, double lambda, T t) {
  using std::cos;
  using std::sin;
  const T ct = cos(t), st = sin(t);
  return {a * ct + b * st + c, b * ct - a * st + ((1.0 - lambda) / lambda) * c * t + d};
}

struct JacobiFrame {
  enum class Basis { Xi, Eta };
  /// Columns are the fields Y_2, Y_3; rows the (xi_2, xi_3) or (eta_2, eta_3)
  /// components.
  Mat2 m = Mat2::Zero();
  Basis basis = Basis::Xi;
};

/// Solutions with Y(0) = 0, Y'(0) = I:
/// [[sin t, -lambda (cos t - 1)], [cos t - 1, lambda sin t + (1 - lambda) t]].
JacobiFrame fundamental_matrix(double lambda, Complex t);

/// d/dt of fundamental_matrix.
Mat2 fundamental_matrix_derivative(double lambda, Complex t);

/// adjoint_rotation(t) * fundamental_matrix(t), evaluated in closed form.
JacobiFrame eta_frame(double lambda, Complex t);

/// Im eta_frame(lambda, i t) = diag(sinh t, lambda [sinh t - ((lambda-1)/lambda) t cosh t]).
RealMat2 imaginary_part_matrix(double lambda, double t);

/// det imaginary_part_matrix(lambda, t).
double delta(double lambda, double t);

/// 3 + numerical rank of Im of the full 3x3 eta-coefficient matrix at i t,
/// which is diag(t, imaginary_part_matrix(lambda, t)) since the tangential
/// Jacobi field is t xi_1. A singular value counts when it exceeds rel_tol
/// times the largest one.
int rank_dphi(double lambda, double t, double rel_tol = 1e-9);

struct FocalReport {
  double lambda = 0.0;
  /// Present iff lambda > 1.
  std::optional<double> t_star;
  /// |((lambda-1)/lambda) t* - tanh t*|; 0 when t_star is absent.
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Unique positive root of ((lambda-1)/lambda) t = tanh t. Bisection on
/// [eps, max(3, 2 lambda/(lambda-1))] to width 1e-6, then Newton.
/// Throws DomainError for lambda <= 0.
FocalReport focal_time(double lambda);

/// Jacobi fields along exp(t xi_1) for any metric, integrated from the
/// Levi-Civita connection and curvature tensor (Y(0) = 0, DY(0) = xi_2, xi_3)
/// with RK4 along the segment [0, t] in the complex plane. Rows are the
/// (xi_1, xi_2, xi_3) components.
Eigen::Matrix<Complex, 3, 2> jacobi_frame_numeric(const MetricParams& p, Complex t,
                                                  double step = 1e-3);

struct FocalRow {
  double lambda = 0.0;
  std::optional<double> t_star;
  double residual = 0.0;
  /// min of delta over k t*/1000, k = 1..999; NaN without a root.
  double delta_min_before_root = std::nan("");
};

/// Rows lambda = lo + k step for k = 0..floor((hi - lo)/step). Rows are
/// computed in parallel and returned in order. Throws std::logic_error if the
/// t* column is not strictly decreasing.
std::vector<FocalRow> focal_sweep(double lo, double hi, double step);

}  // namespace su2tube
