#pragma once

// su(2) / sl(2,C) algebra and group layer.
//
// Basis convention: xi_k = -(i/2) sigma_k with sigma_k the Pauli matrices.
// This realizes [xi_1, xi_2] = xi_3 (cyclically) exactly, so in coordinates
// the bracket is the cross product. Everything downstream depends only on
// the structure constants.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

namespace su2tube {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using RealMat2 = Eigen::Matrix2d;

inline constexpr double kDefaultDetTolerance = 1e-10;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// g_A(xi_i, xi_i) = lambda_i (KillingUnit) or lambda_i / 4 (Quarter).
/// Quarter makes A = I the round metric with K = 1.
enum class Normalization { KillingUnit, Quarter };

const char* to_string(Normalization n);

/// Eigenvalues of the positive operator A in the xi-basis.
class MetricParams {
 public:
  MetricParams(double lambda1, double lambda2, double lambda3,
               Normalization norm = Normalization::Quarter);

  /// lambda = (1, 1, lambda).
  static MetricParams berger(double lambda,
                             Normalization norm = Normalization::Quarter);

  double lambda(std::size_t i) const { return lambdas_[i]; }
  const std::array<double, 3>& lambdas() const { return lambdas_; }
  Normalization normalization() const { return norm_; }

  /// g_A(xi_i, xi_i) under the selected normalization.
  double weight(std::size_t i) const {
    return norm_ == Normalization::KillingUnit ? lambdas_[i] : 0.25 * lambdas_[i];
  }

  bool is_berger() const { return lambdas_[0] == lambdas_[1]; }
  bool is_round() const {
    return lambdas_[0] == lambdas_[1] && lambdas_[1] == lambdas_[2];
  }

  MetricParams with_normalization(Normalization norm) const {
    return {lambdas_[0], lambdas_[1], lambdas_[2], norm};
  }

 private:
  std::array<double, 3> lambdas_;
  Normalization norm_;
};

/// Coordinates (a, b, c) of a Lie-algebra vector in the xi-basis.
template <class T>
struct BasicBodyVector {
  std::array<T, 3> x{};

  constexpr BasicBodyVector() = default;
  constexpr BasicBodyVector(T a, T b, T c) : x{a, b, c} {}

  static constexpr BasicBodyVector basis(std::size_t i) {
    BasicBodyVector v;
    v.x[i] = T(1);
    return v;
  }

  constexpr T& operator[](std::size_t i) { return x[i]; }
  constexpr const T& operator[](std::size_t i) const { return x[i]; }
  constexpr T a() const { return x[0]; }
  constexpr T b() const { return x[1]; }
  constexpr T c() const { return x[2]; }

  BasicBodyVector& operator+=(const BasicBodyVector& o) {
    for (std::size_t i = 0; i < 3; ++i) x[i] += o.x[i];
    return *this;
  }
  BasicBodyVector& operator-=(const BasicBodyVector& o) {
    for (std::size_t i = 0; i < 3; ++i) x[i] -= o.x[i];
    return *this;
  }
  BasicBodyVector& operator*=(T s) {
    for (auto& xi : x) xi *= s;
    return *this;
  }

  friend BasicBodyVector operator+(BasicBodyVector l, const BasicBodyVector& r) { return l += r; }
  friend BasicBodyVector operator-(BasicBodyVector l, const BasicBodyVector& r) { return l -= r; }
  friend BasicBodyVector operator-(BasicBodyVector v) { return v *= T(-1); }
  friend BasicBodyVector operator*(T s, BasicBodyVector v) { return v *= s; }
  friend BasicBodyVector operator*(BasicBodyVector v, T s) { return v *= s; }
  friend bool operator==(const BasicBodyVector&, const BasicBodyVector&) = default;
};

using BodyVector = BasicBodyVector<double>;
using ComplexBodyVector = BasicBodyVector<Complex>;

inline ComplexBodyVector complexify(const BodyVector& v) {
  return {v[0], v[1], v[2]};
}

inline BodyVector real_part(const ComplexBodyVector& v) {
  return {v[0].real(), v[1].real(), v[2].real()};
}

/// Euclidean coordinate norm sqrt(sum |x_i|^2); not the metric norm.
template <class T>
double coord_norm(const BasicBodyVector<T>& v) {
  using std::abs;
  return std::hypot(abs(v[0]), abs(v[1]), abs(v[2]));
}

template <class T>
bool is_finite(const BasicBodyVector<T>& v) {
  for (const auto& xi : v.x) {
    if constexpr (std::is_same_v<T, Complex>) {
      if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag())) return false;
    } else {
      if (!std::isfinite(xi)) return false;
    }
  }
  return true;
}

/// [x, y]; with this basis it is the cross product.
template <class T>
BasicBodyVector<T> bracket(const BasicBodyVector<T>& x, const BasicBodyVector<T>& y) {
  return {x[1] * y[2] - x[2] * y[1],
          x[2] * y[0] - x[0] * y[2],
          x[0] * y[1] - x[1] * y[0]};
}

/// g_A(x, y); for complex input this is the holomorphic bilinear extension
/// (no conjugation).
template <class T>
T metric_eval(const MetricParams& p, const BasicBodyVector<T>& x,
              const BasicBodyVector<T>& y) {
  T s{};
  for (std::size_t i = 0; i < 3; ++i) s += p.weight(i) * x[i] * y[i];
  return s;
}

/// The fixed 2x2 matrix of xi_i.
Mat2 basis_matrix(std::size_t i);

/// sum_k x_k xi_k as a traceless 2x2 matrix.
Mat2 to_matrix(const ComplexBodyVector& x);

/// Inverse of to_matrix on traceless matrices (the trace part is dropped).
ComplexBodyVector from_matrix(const Mat2& m);

/// A point of SL(2,C). Construction checks |det - 1| < tol * max(1, |m|_F^2 / 2);
/// the scale factor is 1 on SU(2) and keeps the check meaningful for the large
/// frames reached in complex time. SU(2) points additionally satisfy is_real().
class GroupPoint {
 public:
  GroupPoint() : m_(Mat2::Identity()) {}

  static GroupPoint identity() { return {}; }

  /// Throws DomainError when |det(m) - 1| >= tol.
  static GroupPoint from_matrix(const Mat2& m, double tol = kDefaultDetTolerance);

  /// Rescales m by 1/sqrt(det m) (branch nearest 1) and validates.
  static GroupPoint renormalized(const Mat2& m, double tol = kDefaultDetTolerance);

  const Mat2& matrix() const { return m_; }
  Complex det() const { return m_.determinant(); }
  double det_error() const { return std::abs(m_.determinant() - 1.0); }
  /// det_error() divided by max(1, |m|_F^2 / 2).
  double scaled_det_error() const;

  /// Unitary to within tol (membership in SU(2)).
  bool is_real(double tol = 1e-10) const;

  GroupPoint inverse() const;

  friend GroupPoint operator*(const GroupPoint& l, const GroupPoint& r) {
    GroupPoint g;
    g.m_ = l.m_ * r.m_;
    return g;
  }

 private:
  explicit GroupPoint(const Mat2& m) : m_(m) {}
  Mat2 m_;
};

/// exp(t X) for X the matrix of x; closed form for traceless 2x2 matrices.
GroupPoint exp_matrix(const ComplexBodyVector& x, Complex t);
GroupPoint exp_matrix(const BodyVector& x, double t);

/// Ad(g) x = g X g^{-1} in xi-coordinates.
ComplexBodyVector adjoint(const Mat2& g, const ComplexBodyVector& x);

/// Ad(g^{-1}) x: the left-invariant coordinates at g of the right-invariant
/// extension of x. Throws SingularInputError when det(g) is (numerically) zero.
ComplexBodyVector right_from_left(const Mat2& g, const ComplexBodyVector& x);
ComplexBodyVector right_from_left(const GroupPoint& g, const ComplexBodyVector& x);

/// [[cos t, -sin t], [sin t, cos t]].
///
/// Along exp(t xi_1) this maps the (xi_2, xi_3) coefficients of a normal
/// vector to its (eta_2, eta_3) coefficients, where eta_j is the right-invariant
/// extension of xi_j. Holomorphic in t.
template <class T>
Eigen::Matrix<T, 2, 2> adjoint_rotation(T t) {
  using std::cos;
  using std::sin;
  Eigen::Matrix<T, 2, 2> r;
  r << cos(t), -sin(t), sin(t), cos(t);
  return r;
}

/// lambda = mu / (2 + mu) of the Riemannian submersion (G x S^1)/S^1.
double submersion_lambda(double mu);

/// Inverse of submersion_lambda: 2 lambda / (1 - lambda); lambda in (0, 1).
double mu_from_lambda(double lambda);

}  // namespace su2tube
