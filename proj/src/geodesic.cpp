#include "su2tube/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ode.hpp"

namespace su2tube {

namespace {

using Vec3 = Eigen::Matrix<Complex, 3, 1>;
using Vec7 = Eigen::Matrix<Complex, 7, 1>;

constexpr std::size_t kMaxSubsteps = 1u << 20;
constexpr double kResidueTolerance = 1e-6;

Vec3 to_vec(const ComplexBodyVector& v) { return Vec3(v[0], v[1], v[2]); }

template <class State>
ComplexBodyVector body_of(const State& y) {
  const Eigen::Index o = y.size() - 3;
  return {y[o], y[o + 1], y[o + 2]};
}

bool finite_state(const auto& y) {
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (!std::isfinite(y[i].real()) || !std::isfinite(y[i].imag())) return false;
  }
  return true;
}

struct BodyDynamics {
  const MetricParams& p;
  Vec3 operator()(const Vec3& y) const { return to_vec(euler_rhs(p, body_of(y))); }
};

// State: (g00, g01, g10, g11, a, b, c).
struct FrameDynamics {
  const MetricParams& p;
  Vec7 operator()(const Vec7& y) const {
    const ComplexBodyVector v = body_of(y);
    Mat2 g;
    g << y[0], y[1], y[2], y[3];
    const Mat2 dg = g * to_matrix(v);
    const ComplexBodyVector dv = euler_rhs(p, v);
    Vec7 r;
    r << dg(0, 0), dg(0, 1), dg(1, 0), dg(1, 1), dv[0], dv[1], dv[2];
    return r;
  }
};

Mat2 frame_of(const Vec7& y) {
  Mat2 g;
  g << y[0], y[1], y[2], y[3];
  return g;
}

void renormalize_frame(Vec7& y) {
  const Complex d = frame_of(y).determinant();
  if (std::abs(d) == 0.0) return;
  Complex s = std::sqrt(d);
  if (std::abs(s - 1.0) > std::abs(s + 1.0)) s = -s;
  for (int i = 0; i < 4; ++i) y[i] /= s;
}

double rate_of(const MetricParams& p, const ComplexBodyVector& v, double* indicator) {
  const double nv = coord_norm(v);
  const double nd = coord_norm(euler_rhs(p, v));
  if (indicator) *indicator = nv > 0.0 ? nd / (nv * nv) : 0.0;
  return nv > 0.0 ? nd / nv : 0.0;
}

struct DriveResult {
  std::optional<BlowUp> blow_up;
  std::size_t steps = 0;
  double max_abs = 0.0;
};

// Shared path driver. `post` may adjust the state after each accepted step and
// receives the running step count.
template <class State, class Rhs, class Post, class Emit>
DriveResult drive(const MetricParams& p, State& y, Complex& zeta, const Rhs& f,
                  const PathSpec& path, const FlowLimits& limits, double v0_scale,
                  const Post& post, const Emit& emit) {
  DriveResult out;
  const double threshold = limits.blow_up_threshold * std::max(1.0, v0_scale);
  out.max_abs = coord_norm(body_of(y));
  emit(zeta, y);

  // Returns true (and fills out.blow_up) if the state signals a pole.
  auto check = [&](const State& s, Complex z) {
    const ComplexBodyVector v = body_of(s);
    const double mag = coord_norm(v);
    out.max_abs = std::max(out.max_abs, mag);
    if (!(mag > threshold)) return false;
    double q = 0.0;
    rate_of(p, v, &q);
    if (q < limits.singular_growth_min) return false;
    out.blow_up = BlowUp{z, z + pole_offset(p, v), mag};
    return true;
  };
  auto non_finite = [&](const State& prev, Complex z) {
    const ComplexBodyVector v = body_of(prev);
    out.blow_up = BlowUp{z, z + pole_offset(p, v), coord_norm(v)};
  };

  for (std::size_t w = 0; w + 1 < path.waypoints.size(); ++w) {
    const Complex z0 = path.waypoints[w];
    const Complex z1 = path.waypoints[w + 1];
    const double len = std::abs(z1 - z0);
    if (len == 0.0) continue;
    const Complex dir = (z1 - z0) / len;

    if (path.integrator == Integrator::Rk4) {
      const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / path.step - 1e-9)));
      const Complex dz = (z1 - z0) / static_cast<double>(n);
      for (std::size_t k = 1; k <= n; ++k) {
        const Complex target = (k == n) ? z1 : z0 + static_cast<double>(k) * dz;
        Complex cur = zeta;
        while (cur != target) {
          const Complex rest = target - cur;
          const double rate = rate_of(p, body_of(y), nullptr);
          Complex sub = rest;
          if (rate * std::abs(rest) > limits.rate_limit) {
            const double cap = limits.rate_limit / rate;
            const double floor_len = std::abs(dz) / static_cast<double>(kMaxSubsteps);
            const double sub_len = std::max(cap, floor_len);
            if (sub_len < std::abs(rest)) sub = rest * (sub_len / std::abs(rest));
          }
          State next = detail::rk4_step(f, y, sub);
          const Complex nz = (sub == rest) ? target : cur + sub;
          if (!finite_state(next)) {
            non_finite(y, cur);
            zeta = cur;
            return out;
          }
          y = next;
          cur = nz;
          if (check(y, cur)) {
            zeta = cur;
            ++out.steps;
            return out;
          }
        }
        zeta = target;
        ++out.steps;
        post(y, out.steps);
        emit(zeta, y);
      }
    } else {
      double s = 0.0;
      double h = std::min(path.step, len);
      while (s < len) {
        h = std::min(h, len - s);
        const double h_min = 1e-14 * std::max(1.0, std::abs(zeta));
        if (h < h_min) {
          non_finite(y, zeta);
          return out;
        }
        auto res = detail::dopri_step(f, y, h * dir, path.atol, path.rtol);
        if (!finite_state(res.y) || res.error > 1.0) {
          const double fac = finite_state(res.y) ? std::max(0.2, 0.9 * std::pow(res.error, -0.2)) : 0.2;
          h *= std::min(fac, 0.9);
          continue;
        }
        s += h;
        y = res.y;
        zeta = (s >= len) ? z1 : z0 + s * dir;
        ++out.steps;
        if (check(y, zeta)) return out;
        post(y, out.steps);
        emit(zeta, y);
        const double fac = res.error > 0.0 ? 0.9 * std::pow(res.error, -0.2) : 5.0;
        h = std::min(path.step, h * std::clamp(fac, 0.2, 5.0));
      }
      zeta = z1;
    }
  }
  return out;
}

}  // namespace

ComplexBodyVector berger_closed_form(const MetricParams& p, const ComplexBodyVector& body0,
                                     Complex t) {
  if (!p.is_berger()) throw DomainError("berger_closed_form: requires lambda_1 == lambda_2");
  const Complex nu = body0[2] * ((p.lambda(2) - p.lambda(0)) / p.lambda(0));
  const Complex c = std::cos(nu * t);
  const Complex s = std::sin(nu * t);
  return {body0[0] * c - body0[1] * s, body0[1] * c + body0[0] * s, body0[2]};
}

PathSpec PathSpec::segment(Complex from, Complex to, double step) {
  PathSpec ps;
  ps.waypoints = {from, to};
  ps.step = step;
  return ps;
}

void PathSpec::validate() const {
  if (waypoints.size() < 2) throw DomainError("path: need at least two waypoints");
  for (const auto& z : waypoints) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DomainError("path: non-finite waypoint");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("path: step must be positive");
  if (integrator == Integrator::DormandPrince45 && !(rtol > 0.0 && atol > 0.0))
    throw DomainError("path: tolerances must be positive");
}

BodyRun integrate_body(const MetricParams& p, const ComplexBodyVector& body0,
                       const PathSpec& path, const FlowLimits& limits,
                       const TrajectoryObserver& observer) {
  path.validate();
  if (!is_finite(body0)) throw DomainError("integrate_body: non-finite initial body");
  Vec3 y = to_vec(body0);
  Complex zeta = path.waypoints.front();
  auto emit = [&](Complex z, const Vec3& s) {
    if (observer) observer({z, body_of(s), 0.0});
  };
  const auto r = drive(p, y, zeta, BodyDynamics{p}, path, limits, coord_norm(body0),
                       [](Vec3&, std::size_t) {}, emit);
  return {body_of(y), zeta, r.blow_up, r.steps, r.max_abs};
}

FrameRun integrate_frame(const MetricParams& p, const GeodesicState& state0,
                         const PathSpec& path, const FlowLimits& limits,
                         const TrajectoryObserver& observer) {
  path.validate();
  if (!is_finite(state0.body)) throw DomainError("integrate_frame: non-finite initial body");
  if (std::abs(path.waypoints.front() - state0.time) > 1e-12 * (1.0 + std::abs(state0.time)))
    throw DomainError("integrate_frame: path must start at state0.time");
  const Mat2& g0 = state0.frame.matrix();
  Vec7 y;
  y << g0(0, 0), g0(0, 1), g0(1, 0), g0(1, 1), state0.body[0], state0.body[1], state0.body[2];
  Complex zeta = path.waypoints.front();
  const std::size_t every = std::max<std::size_t>(1, limits.renormalize_every);
  auto post = [every](Vec7& s, std::size_t n) {
    if (n % every == 0) renormalize_frame(s);
  };
  auto emit = [&](Complex z, const Vec7& s) {
    if (!observer) return;
    const Mat2 g = frame_of(s);
    const double scale = std::max(1.0, 0.5 * g.squaredNorm());
    observer({z, body_of(s), std::abs(g.determinant() - 1.0) / scale});
  };
  const auto r = drive(p, y, zeta, FrameDynamics{p}, path, limits, coord_norm(state0.body),
                       post, emit);

  FrameRun out;
  out.blow_up = r.blow_up;
  out.steps = r.steps;
  out.state.body = body_of(y);
  out.state.time = zeta;
  if (finite_state(y)) {
    renormalize_frame(y);
    out.state.frame = GroupPoint::renormalized(frame_of(y), out.blow_up ? 1e-6 : kDefaultDetTolerance);
  } else {
    out.state.frame = state0.frame;
  }
  return out;
}

GroupPoint phi_map(const MetricParams& p, const BodyVector& v, const GroupPoint& base,
                   double step) {
  if (!p.is_berger())
    throw DomainError("phi_map: complexified geodesics are only known to be entire for Berger metrics");
  const double n2 = metric_eval(p, v, v);
  if (n2 == 0.0) return base;
  const double n = std::sqrt(n2);
  GeodesicState s0{base, complexify((1.0 / n) * v), Complex(0.0, 0.0)};
  const auto run = integrate_frame(p, s0, PathSpec::segment(0.0, Complex(0.0, n), step));
  if (run.blow_up) throw DomainError("phi_map: integration failed");
  return run.state.frame;
}

Complex pole_offset(const MetricParams& p, const ComplexBodyVector& v) {
  const ComplexBodyVector d = euler_rhs(p, v);
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    num += std::conj(d[i]) * v[i];
    den += std::norm(d[i]);
  }
  if (den == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
  return num / den;
}

const char* to_string(BlowUpReport::Outcome o) {
  return o == BlowUpReport::Outcome::Finite ? "Finite" : "BlowUp";
}

BlowUpReport detect_blowup(const MetricParams& p, const ComplexBodyVector& body0,
                           Complex direction, double max_radius, double step,
                           const FlowLimits& limits, double refine_tol) {
  if (!(std::abs(direction) > 0.0)) throw DomainError("detect_blowup: zero direction");
  if (!(max_radius > 0.0)) throw DomainError("detect_blowup: max_radius must be positive");
  const Complex dir = direction / std::abs(direction);
  BlowUpReport rep;
  rep.direction = dir;

  const auto run = integrate_body(p, body0, PathSpec::segment(0.0, dir * max_radius, step), limits);
  rep.max_abs = run.max_abs;
  rep.steps = run.steps;
  if (!run.blow_up) return rep;

  rep.outcome = BlowUpReport::Outcome::BlowUp;
  double s = (run.zeta / dir).real();
  ComplexBodyVector v = run.body;
  FlowLimits quiet = limits;
  quiet.blow_up_threshold = std::numeric_limits<double>::infinity();
  Complex delta = pole_offset(p, v);
  for (int it = 0; it < 200; ++it) {
    const double ds = (delta / dir).real();
    if (!(std::abs(ds) > refine_tol) || !std::isfinite(ds)) break;
    const double half = 0.5 * ds;
    const auto hop = integrate_body(p, v, PathSpec::segment(s * dir, (s + half) * dir,
                                                            std::min(step, std::abs(half))),
                                    quiet);
    rep.steps += hop.steps;
    if (hop.blow_up) break;  // non-finite: keep the last good estimate
    v = hop.body;
    s += half;
    rep.max_abs = std::max(rep.max_abs, hop.max_abs);
    delta = pole_offset(p, v);
  }
  const Complex pole = s * dir + delta;
  rep.pole_estimate = pole;
  rep.s_star = (pole / dir).real();
  rep.miss_distance = std::abs((pole / dir).imag());
  return rep;
}

std::vector<BlowUpReport> scan_directions(const MetricParams& p, const ComplexBodyVector& body0,
                                          std::size_t n, double max_radius, double step,
                                          double theta0, const FlowLimits& limits) {
  std::vector<BlowUpReport> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double th = theta0 + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    out.push_back(detect_blowup(p, body0, std::polar(1.0, th), max_radius, step, limits));
  }
  return out;
}

PoleSearch locate_pole(const MetricParams& p, const ComplexBodyVector& body0,
                       Complex start_direction, double max_radius, double step,
                       const FlowLimits& limits, std::size_t max_iterations) {
  PoleSearch out;
  if (!(std::abs(start_direction) > 0.0)) throw DomainError("locate_pole: zero direction");
  const Complex dir = start_direction / std::abs(start_direction);

  Complex zeta = 0.0;
  ComplexBodyVector v = body0;
  double best = coord_norm(body0);
  auto track = [&](const TrajectorySample& smp) {
    const double m = coord_norm(smp.body);
    if (m > best) {
      best = m;
      zeta = smp.zeta;
      v = smp.body;
    }
  };
  const auto ray = integrate_body(p, body0, PathSpec::segment(0.0, dir * max_radius, step), limits, track);
  if (ray.blow_up) {
    zeta = ray.zeta;
    v = ray.body;
  }

  FlowLimits quiet = limits;
  quiet.blow_up_threshold = std::numeric_limits<double>::infinity();
  const double tol = 1e-10;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    out.newton_iterations = it + 1;
    const Complex delta = pole_offset(p, v);
    if (!std::isfinite(delta.real()) || !std::isfinite(delta.imag())) return out;
    const double ad = std::abs(delta);
    if (ad < tol * std::max(1.0, std::abs(zeta))) {
      out.pole = zeta + delta;
      out.residue = delta * v;
      const ComplexBodyVector q = euler_rhs(p, out.residue);
      out.residue_defect = coord_norm(q - out.residue) / coord_norm(out.residue);
      // A vanishing Newton step without a residue is a stationary point of the
      // least-squares fit, not a pole.
      out.found = out.residue_defect < kResidueTolerance;
      return out;
    }
    // Half a Newton step stays short of the pole; far from it, cap the jump.
    const Complex move = ad > 1.0 ? delta * (0.5 / ad) : 0.5 * delta;
    const Complex next = zeta + move;
    if (std::abs(next) > max_radius) return out;
    const auto hop = integrate_body(p, v, PathSpec::segment(zeta, next, std::min(step, std::abs(move))),
                                    quiet);
    if (hop.blow_up) return out;
    zeta = next;
    v = hop.body;
  }
  return out;
}

}  // namespace su2tube
