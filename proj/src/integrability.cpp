#include "su2tube/integrability.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace su2tube {

namespace {

bool nearly_equal(double a, double b, double rel = 1e-12) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// Index of the eigenvalue that differs from an equal pair, if exactly two are equal.
std::optional<std::size_t> distinct_axis(const MetricParams& p) {
  const auto& l = p.lambdas();
  if (p.is_round()) return std::nullopt;
  if (l[0] == l[1]) return 2;
  if (l[0] == l[2]) return 1;
  if (l[1] == l[2]) return 0;
  return std::nullopt;
}

}  // namespace

IntegralValues integrals(const MetricParams& p, const BodyVector& x) {
  IntegralValues iv;
  for (std::size_t i = 0; i < 3; ++i) {
    const double l = p.lambda(i);
    iv.e_val += l * x[i] * x[i];
    iv.m_val += l * l * x[i] * x[i];
  }
  return iv;
}

void require_realizable(const MetricParams& p, const IntegralValues& iv) {
  const auto& l = p.lambdas();
  const double lo = *std::min_element(l.begin(), l.end()), hi = *std::max_element(l.begin(), l.end());
  const double e = iv.e_val, m = iv.m_val;
  if (!std::isfinite(e) || !std::isfinite(m)) throw InconsistencyError("integral values must be finite");
  const double tol = 1e-12 * std::max({1.0, std::abs(e), std::abs(m)});
  if (e < -tol) throw InconsistencyError("energy must be nonnegative");
  if (m < lo * e - tol || m > hi * e + tol)
    throw InconsistencyError("momentum outside [lambda_min e, lambda_max e]");
}

Complex energy(const MetricParams& p, const ComplexBodyVector& v) {
  Complex s{};
  for (std::size_t i = 0; i < 3; ++i) s += p.lambda(i) * v[i] * v[i];
  return s;
}

Complex momentum(const MetricParams& p, const ComplexBodyVector& v) {
  Complex s{};
  for (std::size_t i = 0; i < 3; ++i) s += p.lambda(i) * p.lambda(i) * v[i] * v[i];
  return s;
}

Genericity is_generic(const MetricParams& p, const IntegralValues& iv) {
  Genericity g;
  g.generic = true;
  g.margin = INFINITY;
  for (std::size_t k = 0; k < 3; ++k) {
    const double le = p.lambda(k) * iv.e_val;
    g.margins[k] = std::abs(iv.m_val - le);
    g.margin = std::min(g.margin, g.margins[k]);
    if (nearly_equal(iv.m_val, le) || g.margins[k] == 0.0) g.generic = false;
  }
  return g;
}

std::array<double, 3> df_minors(const MetricParams& p, const BodyVector& x) {
  const auto& l = p.lambdas();
  auto minor = [&](std::size_t i, std::size_t j) {
    return 4.0 * l[i] * l[j] * (l[j] - l[i]) * x[i] * x[j];
  };
  return {minor(0, 1), minor(0, 2), minor(1, 2)};
}

int df_rank(const MetricParams& p, const BodyVector& x, double rel_tol) {
  const auto minors = df_minors(p, x);
  double scale = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    scale = std::max(scale, p.lambda(i) * p.lambda(i) * std::abs(x[i]));
  }
  if (scale == 0.0) return 0;
  const double biggest = std::max({std::abs(minors[0]), std::abs(minors[1]), std::abs(minors[2])});
  if (biggest > rel_tol * scale * scale) return 2;
  return 1;
}

std::pair<Complex, Complex> quadric_residuals(const MetricParams& p, const IntegralValues& iv,
                                              const ProjectivePoint& pt) {
  Complex qe = -iv.e_val * pt.z[3] * pt.z[3];
  Complex qm = -iv.m_val * pt.z[3] * pt.z[3];
  for (std::size_t i = 0; i < 3; ++i) {
    const double l = p.lambda(i);
    qe += l * pt.z[i] * pt.z[i];
    qm += l * l * pt.z[i] * pt.z[i];
  }
  return {qe, qm};
}

std::array<Complex, 6> jacobian_minors(const MetricParams& p, const IntegralValues& iv,
                                       const ProjectivePoint& pt) {
  std::array<Complex, 4> row1, row2;
  for (std::size_t i = 0; i < 3; ++i) {
    row1[i] = p.lambda(i) * pt.z[i];
    row2[i] = p.lambda(i) * p.lambda(i) * pt.z[i];
  }
  row1[3] = -iv.e_val * pt.z[3];
  row2[3] = -iv.m_val * pt.z[3];
  std::array<Complex, 6> out;
  std::size_t n = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) out[n++] = row1[i] * row2[j] - row1[j] * row2[i];
  }
  return out;
}

std::optional<ProjectivePoint> find_singular_point(const MetricParams& p,
                                                   const IntegralValues& iv) {
  const auto& l = p.lambdas();
  // Coefficient of the minor in z_i z_j (j < 3) or z_i w (j == 3).
  auto pair_vanishes = [&](std::size_t i, std::size_t j) {
    if (j == 3) return nearly_equal(iv.m_val, l[i] * iv.e_val) || iv.m_val == l[i] * iv.e_val;
    return l[i] == l[j];
  };

  // Supports containing w first, so affine witnesses are preferred.
  std::array<unsigned, 15> masks{};
  std::size_t n = 0;
  for (unsigned mask = 15; mask >= 1; --mask) {
    if (mask & 8u) masks[n++] = mask;
  }
  for (unsigned mask = 7; mask >= 1; --mask) masks[n++] = mask;

  for (unsigned mask : masks) {
    std::array<std::size_t, 4> idx{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      if (mask & (1u << i)) idx[k++] = i;
    }
    bool allowed = true;
    for (std::size_t a = 0; a < k && allowed; ++a) {
      for (std::size_t b = a + 1; b < k && allowed; ++b) allowed = pair_vanishes(idx[a], idx[b]);
    }
    if (!allowed) continue;

    // Quadrics are linear in u_i = z_i^2 (u_w = w^2).
    Eigen::MatrixXd sys(2, static_cast<Eigen::Index>(k));
    for (std::size_t a = 0; a < k; ++a) {
      const std::size_t i = idx[a];
      sys(0, a) = i == 3 ? -iv.e_val : l[i];
      sys(1, a) = i == 3 ? -iv.m_val : l[i] * l[i];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    lu.setThreshold(1e-12);
    const Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.size() == 0 || kernel.norm() == 0.0) continue;

    // A generic kernel element is non-zero in every coordinate that does not
    // vanish identically on the kernel.
    Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
    double coeff = 1.0;
    for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
      u += coeff * kernel.col(c);
      coeff *= 0.6180339887498949;
    }
    if (u.cwiseAbs().minCoeff() <= 1e-12 * u.cwiseAbs().maxCoeff()) continue;
    u /= u.cwiseAbs().maxCoeff();

    ProjectivePoint pt;
    for (std::size_t a = 0; a < k; ++a) pt.z[idx[a]] = std::sqrt(Complex(u(a)));

    const auto [qe, qm] = quadric_residuals(p, iv, pt);
    const double scale = 1.0 + iv.e_val + iv.m_val + l[0] * l[0] + l[1] * l[1] + l[2] * l[2];
    bool ok = std::abs(qe) <= 1e-10 * scale && std::abs(qm) <= 1e-10 * scale;
    for (const Complex& mnr : jacobian_minors(p, iv, pt)) ok = ok && std::abs(mnr) <= 1e-10 * scale * scale;
    if (ok) return pt;
  }
  return std::nullopt;
}

const char* to_string(CurveTag tag) {
  switch (tag) {
    case CurveTag::SmoothGenusOne: return "SmoothGenusOne";
    case CurveTag::SplitConics: return "SplitConics";
    case CurveTag::Singular: return "Singular";
    case CurveTag::Degenerate: return "Degenerate";
  }
  return "?";
}

CurveClass classify_curve(const MetricParams& p, const IntegralValues& iv) {
  const auto& l = p.lambdas();
  CurveClass out;
  if (p.is_round()) {
    // Either projectively equal quadrics or the doubled conic at infinity.
    out.tag = CurveTag::Degenerate;
    return out;
  }

  if (const auto axis = distinct_axis(p)) {
    const std::size_t k = *axis;
    const std::size_t i = k == 0 ? 1 : 0;
    const double num = l[i] * iv.e_val - iv.m_val;
    const double den = l[k] * (l[i] - l[k]);
    double r = num / den;
    const double slack = 1e-14 * (std::abs(l[i] * iv.e_val) + std::abs(iv.m_val)) / std::abs(den);
    if (r < 0.0 && r >= -slack) r = 0.0;
    if (r < 0.0) {
      throw InconsistencyError("integral values are not realizable: split radius^2 < 0");
    }
    out.tag = CurveTag::SplitConics;
    out.split_axis = k;
    out.x3_abs = std::sqrt(r);
    out.witness = find_singular_point(p, iv);
    return out;
  }

  if (auto w = find_singular_point(p, iv)) {
    out.tag = CurveTag::Singular;
    out.witness = w;
    return out;
  }
  out.tag = CurveTag::SmoothGenusOne;
  out.genus = 1;
  return out;
}

std::pair<Complex, Complex> on_curve_residual(const MetricParams& p, const IntegralValues& iv,
                                              const ComplexBodyVector& v) {
  return {energy(p, v) - iv.e_val, momentum(p, v) - iv.m_val};
}

ComplexBodyVector split_conic_point(const MetricParams& p, const IntegralValues& iv, int sign,
                                    double theta) {
  const auto axis = distinct_axis(p);
  if (!axis) throw DomainError("split_conic_point: needs exactly two equal eigenvalues");
  const CurveClass cls = classify_curve(p, iv);
  const std::size_t k = *axis;
  const std::size_t i = k == 0 ? 1 : 0;
  const std::size_t j = 3 - k - i;
  const double zk = (sign >= 0 ? 1.0 : -1.0) * cls.x3_abs;
  const Complex radius = std::sqrt(Complex((iv.e_val - p.lambda(k) * zk * zk) / p.lambda(i)));
  ComplexBodyVector v;
  v[k] = zk;
  v[i] = radius * std::cos(theta);
  v[j] = radius * std::sin(theta);
  return v;
}

}  // namespace su2tube
