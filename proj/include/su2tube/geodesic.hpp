#pragma once

// Real and complex-time geodesic flow of a left-invariant metric on SU(2):
// the Euler body equations, the frame equation gamma' = gamma T on SL(2,C),
// the normal exponential map Phi, and detection of finite-time singularities
// of the complexified flow.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "su2tube/lie.hpp"

namespace su2tube {

/// Right-hand side of the Euler equations
///   a' = -bc (l3 - l2)/l1,  b' = -ac (l1 - l3)/l2,  c' = -ab (l2 - l1)/l3.
/// Polynomial, so it is used unchanged for complex coordinates.
template <class T>
BasicBodyVector<T> euler_rhs(const MetricParams& p, const BasicBodyVector<T>& v) {
  const double l1 = p.lambda(0), l2 = p.lambda(1), l3 = p.lambda(2);
  return {-(v[1] * v[2]) * ((l3 - l2) / l1),
          -(v[0] * v[2]) * ((l1 - l3) / l2),
          -(v[0] * v[1]) * ((l2 - l1) / l3)};
}

/// Exact body solution for lambda_1 = lambda_2: rotation of (a, b) with
/// frequency nu = c0 (lambda_3 - lambda_1) / lambda_1, c constant. Entire in t.
/// Throws DomainError for non-Berger parameters.
ComplexBodyVector berger_closed_form(const MetricParams& p, const ComplexBodyVector& body0,
                                     Complex t);

enum class Integrator { Rk4, DormandPrince45 };

/// Piecewise-linear path in the complex time plane.
struct PathSpec {
  std::vector<Complex> waypoints;
  /// Grid step (Rk4) or initial/maximal step (DormandPrince45), in |dzeta|.
  double step = 1e-3;
  Integrator integrator = Integrator::Rk4;
  double rtol = 1e-12;
  double atol = 1e-14;

  static PathSpec segment(Complex from, Complex to, double step);

  /// Throws DomainError unless there are >= 2 finite waypoints and step > 0.
  void validate() const;
};

struct FlowLimits {
  /// |v| beyond blow_up_threshold * max(1, |v0|) is examined for a pole.
  double blow_up_threshold = 1e6;
  /// Singular-growth indicator q = |v'| / |v|^2. It tends to 1/|residue| at a
  /// simple pole and to 0 along the exponential growth of entire solutions.
  double singular_growth_min = 1e-3;
  /// Substeps are limited to rate_limit * |v| / |v'|.
  double rate_limit = 0.1;
  /// Frame renormalization by sqrt(det) every this many steps.
  std::size_t renormalize_every = 100;
};

struct BlowUp {
  Complex zeta_reached;   // where the signal fired
  Complex zeta_estimate;  // Newton estimate of the pole: zeta + v / v'
  double magnitude = 0.0;
};

struct TrajectorySample {
  Complex zeta;
  ComplexBodyVector body;
  double det_error = 0.0;
};

using TrajectoryObserver = std::function<void(const TrajectorySample&)>;

struct BodyRun {
  ComplexBodyVector body;
  Complex zeta;
  std::optional<BlowUp> blow_up;
  std::size_t steps = 0;
  double max_abs = 0.0;
};

/// Integrates dv/dzeta = euler_rhs(v) along the path; body0 sits at
/// path.waypoints.front(). The observer sees every grid point (Rk4) or
/// accepted step (DormandPrince45), including the start.
BodyRun integrate_body(const MetricParams& p, const ComplexBodyVector& body0,
                       const PathSpec& path, const FlowLimits& limits = {},
                       const TrajectoryObserver& observer = {});

struct GeodesicState {
  GroupPoint frame;
  ComplexBodyVector body;
  Complex time{0.0, 0.0};
};

struct FrameRun {
  GeodesicState state;
  std::optional<BlowUp> blow_up;
  std::size_t steps = 0;
};

/// Joint integration of gamma' = gamma * T(v) and the Euler equations, from
/// state0 at state0.time along a path whose first waypoint is state0.time.
FrameRun integrate_frame(const MetricParams& p, const GeodesicState& state0,
                         const PathSpec& path, const FlowLimits& limits = {},
                         const TrajectoryObserver& observer = {});

/// Phi(v) = gamma_C(i |v|) with gamma(0) = base, gamma'(0) = v / |v|, |v| the
/// metric norm. Phi(0) = base. Refuses non-Berger metrics (DomainError), where
/// the complexified geodesics need not be entire.
GroupPoint phi_map(const MetricParams& p, const BodyVector& v, const GroupPoint& base,
                   double step = 1e-3);

/// Newton offset v / v' (least squares over components): the distance to a
/// simple pole when one is near.
Complex pole_offset(const MetricParams& p, const ComplexBodyVector& v);

struct BlowUpReport {
  enum class Outcome { Finite, BlowUp };
  Outcome outcome = Outcome::Finite;
  Complex direction{0.0, 1.0};
  double max_abs = 0.0;
  double s_star = std::numeric_limits<double>::quiet_NaN();
  Complex pole_estimate{std::numeric_limits<double>::quiet_NaN(), 0.0};
  /// Distance of the estimated pole from the ray.
  double miss_distance = std::numeric_limits<double>::quiet_NaN();
  std::size_t steps = 0;
};

const char* to_string(BlowUpReport::Outcome o);

/// Integrates along zeta = s * direction for s in [0, max_radius]. A blow-up
/// position is refined by moving half the projected Newton offset at a time
/// until it is below refine_tol.
BlowUpReport detect_blowup(const MetricParams& p, const ComplexBodyVector& body0,
                           Complex direction, double max_radius, double step,
                           const FlowLimits& limits = {}, double refine_tol = 1e-6);

/// detect_blowup over n directions exp(i (theta0 + 2 pi k / n)).
std::vector<BlowUpReport> scan_directions(const MetricParams& p, const ComplexBodyVector& body0,
                                          std::size_t n, double max_radius, double step,
                                          double theta0 = 0.0, const FlowLimits& limits = {});

struct PoleSearch {
  bool found = false;
  Complex pole{std::numeric_limits<double>::quiet_NaN(), 0.0};
  /// C such that v ~ C / (pole - zeta); a genuine simple pole has C = euler_rhs(C).
  ComplexBodyVector residue;
  double residue_defect = std::numeric_limits<double>::quiet_NaN();
  std::size_t newton_iterations = 0;
};

/// Searches for the nearest pole of the complexified body solution: follows the
/// ray along start_direction to the point of largest |v|, then steers the path
/// by damped Newton steps on 1/v. found requires the residue to satisfy
/// C = euler_rhs(C) to 1e-6; a search that leaves the disk |zeta| <= max_radius
/// or stalls reports found = false.
PoleSearch locate_pole(const MetricParams& p, const ComplexBodyVector& body0,
                       Complex start_direction, double max_radius, double step,
                       const FlowLimits& limits = {}, std::size_t max_iterations = 200);

}  // namespace su2tube
