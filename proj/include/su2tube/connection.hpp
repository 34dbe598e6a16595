#pragma once

#include <array>
#include <stdexcept>

#include <Eigen/Dense>

#include "su2tube/lie.hpp"

namespace su2tube {

class DegeneratePlaneError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Levi-Civita connection of g_A on left-invariant fields.
/// coeffs[j][i] holds nabla_{xi_j} xi_i in the xi-basis.
struct ConnectionTable {
  std::array<std::array<BodyVector, 3>, 3> coeffs{};

  const BodyVector& operator()(std::size_t j, std::size_t i) const { return coeffs[j][i]; }

  /// nabla_x y for the left-invariant fields x, y.
  template <class T>
  BasicBodyVector<T> covariant(const BasicBodyVector<T>& x, const BasicBodyVector<T>& y) const {
    BasicBodyVector<T> out;
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t i = 0; i < 3; ++i) {
        const T w = x[j] * y[i];
        for (std::size_t k = 0; k < 3; ++k) out[k] += w * coeffs[j][i][k];
      }
    }
    return out;
  }
};

/// Koszul formula specialized to left-invariant fields:
///   2 g(nabla_X Y, Z) = g(Z, [X,Y]) + g([Z,X], Y) + g(X, [Z,Y]).
/// The table depends only on ratios of the lambdas, so the normalization is
/// irrelevant.
ConnectionTable build_connection(const MetricParams& p);

/// R(x,y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z.
BodyVector riemann(const ConnectionTable& table, const BodyVector& x, const BodyVector& y,
                   const BodyVector& z);
BodyVector riemann(const MetricParams& p, const BodyVector& x, const BodyVector& y,
                   const BodyVector& z);

/// K(x ^ y) = g(R(x,y)y, x) / |x ^ y|^2 in the metric's own normalization.
/// Throws DegeneratePlaneError when |x ^ y|^2 < 1e-14 g(x,x) g(y,y).
double sectional_curvature(const MetricParams& p, const BodyVector& x, const BodyVector& y);

/// Curvature operator on bivectors in the orthonormal basis
/// (e1^e2, e1^e3, e2^e3), e_i = xi_i / |xi_i|. Diagonal entries are the
/// sectional curvatures of the coordinate planes.
Eigen::Matrix3d curvature_operator(const MetricParams& p);

struct CurvatureRange {
  double k_min = 0.0;
  double k_max = 0.0;
  bool has_negative = false;
  /// Every bivector is decomposable in dimension 3, so the operator's
  /// eigenvalue range is exactly the range of sectional curvatures.
  const char* method = "operator-eigenvalues";
};

CurvatureRange curvature_range(const MetricParams& p);

/// Closed forms for lambda = (1, 1, lambda) with Quarter scaling.
struct BergerSectional {
  double k12;  // 4 - 3 lambda
  double k13;  // lambda (= K(xi_2 ^ xi_3))
};

BergerSectional berger_sectional(double lambda);

}  // namespace su2tube
