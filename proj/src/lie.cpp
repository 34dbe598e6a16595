#include "su2tube/lie.hpp"

#include <algorithm>
#include <cmath>

namespace su2tube {

namespace {

const Complex kI{0.0, 1.0};

// cosh(s) and sinh(s)/s as functions of s^2 (both even, so branch-free).
void cosh_sinhc(Complex s2, Complex& ch, Complex& shc) {
  if (std::abs(s2) < 1e-6) {
    ch = 1.0 + s2 / 2.0 + s2 * s2 / 24.0 + s2 * s2 * s2 / 720.0;
    shc = 1.0 + s2 / 6.0 + s2 * s2 / 120.0 + s2 * s2 * s2 / 5040.0;
    return;
  }
  const Complex s = std::sqrt(s2);
  ch = std::cosh(s);
  shc = std::sinh(s) / s;
}

}  // namespace

const char* to_string(Normalization n) {
  return n == Normalization::KillingUnit ? "killing-unit" : "quarter";
}

MetricParams::MetricParams(double lambda1, double lambda2, double lambda3, Normalization norm)
    : lambdas_{lambda1, lambda2, lambda3}, norm_(norm) {
  for (double l : lambdas_) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw DomainError("metric eigenvalues must be positive and finite");
    }
  }
}

MetricParams MetricParams::berger(double lambda, Normalization norm) {
  return {1.0, 1.0, lambda, norm};
}

Mat2 basis_matrix(std::size_t i) {
  const Complex h = -0.5 * kI;
  Mat2 m;
  switch (i) {
    case 0: m << 0.0, h, h, 0.0; break;
    case 1: m << 0.0, -0.5, 0.5, 0.0; break;
    case 2: m << h, 0.0, 0.0, -h; break;
    default: throw std::out_of_range("basis index");
  }
  return m;
}

Mat2 to_matrix(const ComplexBodyVector& x) {
  const Complex h = -0.5 * kI;
  Mat2 m;
  m << h * x[2], h * (x[0] - kI * x[1]),
       h * (x[0] + kI * x[1]), -h * x[2];
  return m;
}

ComplexBodyVector from_matrix(const Mat2& m) {
  return {kI * (m(0, 1) + m(1, 0)), m(1, 0) - m(0, 1), kI * (m(0, 0) - m(1, 1))};
}

static double det_scale(const Mat2& m) { return std::max(1.0, 0.5 * m.squaredNorm()); }

GroupPoint GroupPoint::from_matrix(const Mat2& m, double tol) {
  const double err = std::abs(m.determinant() - 1.0) / det_scale(m);
  if (!(err < tol)) {
    throw DomainError("matrix is not in SL(2,C): |det - 1| = " + std::to_string(err));
  }
  return GroupPoint(m);
}

GroupPoint GroupPoint::renormalized(const Mat2& m, double tol) {
  const Complex d = m.determinant();
  if (std::abs(d) == 0.0 || !std::isfinite(std::abs(d))) {
    throw SingularInputError("cannot renormalize a singular or non-finite matrix");
  }
  return from_matrix(m / std::sqrt(d), tol);
}

double GroupPoint::scaled_det_error() const { return det_error() / det_scale(m_); }

bool GroupPoint::is_real(double tol) const {
  const Mat2 u = m_ * m_.adjoint() - Mat2::Identity();
  return u.cwiseAbs().maxCoeff() < tol && det_error() < tol;
}

GroupPoint GroupPoint::inverse() const {
  Mat2 inv;
  const Complex d = m_.determinant();
  inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
  return GroupPoint(inv / d);
}

GroupPoint exp_matrix(const ComplexBodyVector& x, Complex t) {
  const Mat2 tx = t * to_matrix(x);
  // Traceless: (tX)^2 = -det(tX) I.
  const Complex s2 = -tx.determinant();
  Complex ch, shc;
  cosh_sinhc(s2, ch, shc);
  Mat2 e = ch * Mat2::Identity() + shc * tx;
  return GroupPoint::renormalized(e);
}

GroupPoint exp_matrix(const BodyVector& x, double t) {
  return exp_matrix(complexify(x), Complex(t));
}

ComplexBodyVector adjoint(const Mat2& g, const ComplexBodyVector& x) {
  return from_matrix(g * to_matrix(x) * g.inverse());
}

ComplexBodyVector right_from_left(const Mat2& g, const ComplexBodyVector& x) {
  const Complex d = g.determinant();
  const double scale = std::max(1.0, g.squaredNorm());
  if (std::abs(d) < 1e-14 * scale) {
    throw SingularInputError("right_from_left: group element is singular");
  }
  Mat2 inv;
  inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
  inv /= d;
  return from_matrix(inv * to_matrix(x) * g);
}

ComplexBodyVector right_from_left(const GroupPoint& g, const ComplexBodyVector& x) {
  return right_from_left(g.matrix(), x);
}

double submersion_lambda(double mu) {
  if (!(mu > 0.0)) throw DomainError("submersion_lambda: mu must be positive");
  if (std::isinf(mu)) return 1.0;
  return mu / (2.0 + mu);
}

double mu_from_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw DomainError("mu_from_lambda: lambda must lie in (0, 1)");
  }
  return 2.0 * lambda / (1.0 - lambda);
}

}  // namespace su2tube
