#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <utility>

#include "su2tube/lie.hpp"

namespace su2tube {

/// Value (e, m) of the integrals cannot come from any real vector.
class InconsistencyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Energy E = (A x, x) and total angular momentum M = (A^2 x, x), in the
/// KillingUnit convention: e = sum lambda_i x_i^2, m = sum lambda_i^2 x_i^2.
struct IntegralValues {
  double e_val = 0.0;
  double m_val = 0.0;
};

IntegralValues integrals(const MetricParams& p, const BodyVector& x);

/// Throws InconsistencyError unless (e, m) = integrals(p, x) for some real x,
/// i.e. e >= 0 and lambda_min e <= m <= lambda_max e up to relative 1e-12.
void require_realizable(const MetricParams& p, const IntegralValues& iv);

/// Holomorphic extensions of E and M to complex body vectors.
Complex energy(const MetricParams& p, const ComplexBodyVector& v);
Complex momentum(const MetricParams& p, const ComplexBodyVector& v);

struct Genericity {
  bool generic = false;
  /// min_k |m - lambda_k e|
  double margin = 0.0;
  std::array<double, 3> margins{};
};

/// (e, m) is generic iff m != lambda_k e for every k. Equality is decided with
/// relative tolerance 1e-12.
Genericity is_generic(const MetricParams& p, const IntegralValues& iv);

/// The three 2x2 minors of DF(x) = [[2 lambda_i x_i], [2 lambda_i^2 x_i]],
/// ordered (12, 13, 23).
std::array<double, 3> df_minors(const MetricParams& p, const BodyVector& x);
int df_rank(const MetricParams& p, const BodyVector& x, double rel_tol = 1e-12);

/// Homogeneous coordinates (z1, z2, z3, w) on P^3.
struct ProjectivePoint {
  std::array<Complex, 4> z{};
};

/// Residuals of the two quadrics at a projective point.
std::pair<Complex, Complex> quadric_residuals(const MetricParams& p, const IntegralValues& iv,
                                              const ProjectivePoint& pt);

/// The six 2x2 minors of B = [[l_i z_i, -e w], [l_i^2 z_i, -m w]].
std::array<Complex, 6> jacobian_minors(const MetricParams& p, const IntegralValues& iv,
                                       const ProjectivePoint& pt);

/// A point where both quadrics and all six minors vanish, if one exists.
///
/// Every such point has its support (set of non-zero coordinates) restricted
/// to index pairs whose minor coefficient vanishes. The search enumerates the
/// 15 candidate supports, solves the two quadrics (linear in the squares) on
/// each, and verifies any candidate to 1e-10 before returning it.
std::optional<ProjectivePoint> find_singular_point(const MetricParams& p,
                                                   const IntegralValues& iv);

enum class CurveTag { SmoothGenusOne, SplitConics, Singular, Degenerate };

const char* to_string(CurveTag tag);

struct CurveClass {
  CurveTag tag = CurveTag::Degenerate;
  /// SplitConics: the planes z_k = +-x_abs w, k = split_axis (2 when
  /// lambda_1 = lambda_2, so x_abs is |x_3|).
  double x3_abs = 0.0;
  std::size_t split_axis = 2;
  std::optional<ProjectivePoint> witness;
  /// Reported, not computed: 1 for the smooth intersection of two quadrics.
  std::optional<int> genus;
};

/// Classifies the curve {E = e} intersect {M = m} in P^3.
/// Throws InconsistencyError when a split needs a negative squared radius.
CurveClass classify_curve(const MetricParams& p, const IntegralValues& iv);

/// Residuals (sum l_i v_i^2 - e, sum l_i^2 v_i^2 - m) at the affine point (v, 1).
std::pair<Complex, Complex> on_curve_residual(const MetricParams& p, const IntegralValues& iv,
                                              const ComplexBodyVector& v);

/// Affine point of the conic {E = e} intersect {z_k = sign x_abs} for a split
/// curve, parametrized by theta. Requires exactly two equal eigenvalues.
ComplexBodyVector split_conic_point(const MetricParams& p, const IntegralValues& iv, int sign,
                                    double theta);

}  // namespace su2tube
