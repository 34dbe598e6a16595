#include "su2tube/connection.hpp"

#include <algorithm>
#include <cmath>

namespace su2tube {

ConnectionTable build_connection(const MetricParams& p) {
  ConnectionTable t;
  for (std::size_t j = 0; j < 3; ++j) {
    const BodyVector xj = BodyVector::basis(j);
    for (std::size_t i = 0; i < 3; ++i) {
      const BodyVector xi = BodyVector::basis(i);
      for (std::size_t k = 0; k < 3; ++k) {
        const BodyVector xk = BodyVector::basis(k);
        const double rhs = metric_eval(p, xk, bracket(xj, xi)) +
                           metric_eval(p, bracket(xk, xj), xi) +
                           metric_eval(p, xj, bracket(xk, xi));
        t.coeffs[j][i][k] = 0.5 * rhs / p.weight(k);
      }
    }
  }
  return t;
}

BodyVector riemann(const ConnectionTable& table, const BodyVector& x, const BodyVector& y,
                   const BodyVector& z) {
  return table.covariant(x, table.covariant(y, z)) - table.covariant(y, table.covariant(x, z)) -
         table.covariant(bracket(x, y), z);
}

BodyVector riemann(const MetricParams& p, const BodyVector& x, const BodyVector& y,
                   const BodyVector& z) {
  return riemann(build_connection(p), x, y, z);
}

double sectional_curvature(const MetricParams& p, const BodyVector& x, const BodyVector& y) {
  const double gxx = metric_eval(p, x, x);
  const double gyy = metric_eval(p, y, y);
  const double gxy = metric_eval(p, x, y);
  const double area2 = gxx * gyy - gxy * gxy;
  if (!(area2 >= 1e-14 * gxx * gyy) || area2 <= 0.0) {
    throw DegeneratePlaneError("sectional_curvature: x and y span a degenerate plane");
  }
  return metric_eval(p, riemann(p, x, y, y), x) / area2;
}

Eigen::Matrix3d curvature_operator(const MetricParams& p) {
  static constexpr std::array<std::array<std::size_t, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
  const ConnectionTable table = build_connection(p);
  std::array<BodyVector, 3> e;
  for (std::size_t i = 0; i < 3; ++i) e[i] = (1.0 / std::sqrt(p.weight(i))) * BodyVector::basis(i);

  Eigen::Matrix3d op;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      const auto [i, j] = kPairs[r];
      const auto [k, l] = kPairs[c];
      op(r, c) = metric_eval(p, riemann(table, e[i], e[j], e[l]), e[k]);
    }
  }
  return op;
}

CurvatureRange curvature_range(const MetricParams& p) {
  const Eigen::Matrix3d op = curvature_operator(p);
  const Eigen::Matrix3d sym = 0.5 * (op + op.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(sym, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d ev = solver.eigenvalues();
  CurvatureRange r;
  r.k_min = ev.minCoeff();
  r.k_max = ev.maxCoeff();
  r.has_negative = r.k_min < 0.0;
  return r;
}

BergerSectional berger_sectional(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("berger_sectional: lambda must be positive");
  return {4.0 - 3.0 * lambda, lambda};
}

}  // namespace su2tube
