#include "su2tube/jacobi.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ode.hpp"
#include "su2tube/connection.hpp"

namespace su2tube {

JacobiFrame fundamental_matrix(double lambda, Complex t) {
  const Complex s = std::sin(t), c = std::cos(t);
  JacobiFrame fr;
  fr.m << s, -lambda * (c - 1.0), c - 1.0, lambda * s + (1.0 - lambda) * t;
  return fr;
}

Mat2 fundamental_matrix_derivative(double lambda, Complex t) {
  const Complex s = std::sin(t), c = std::cos(t);
  Mat2 d;
  d << c, lambda * s, -s, lambda * c + (1.0 - lambda);
  return d;
}

JacobiFrame eta_frame(double lambda, Complex t) {
  const double m = (lambda - 1.0) / lambda;
  const Complex s = std::sin(t), c = std::cos(t);
  JacobiFrame fr;
  fr.basis = JacobiFrame::Basis::Eta;
  fr.m << s, lambda * ((c - 1.0) + m * t * s), -(c - 1.0), lambda * (s - m * t * c);
  return fr;
}

RealMat2 imaginary_part_matrix(double lambda, double t) {
  const double m = (lambda - 1.0) / lambda;
  RealMat2 r = RealMat2::Zero();
  r(0, 0) = std::sinh(t);
  r(1, 1) = lambda * (std::sinh(t) - m * t * std::cosh(t));
  return r;
}

double delta(double lambda, double t) { return imaginary_part_matrix(lambda, t).determinant(); }

int rank_dphi(double lambda, double t, double rel_tol) {
  // The tangential field t xi_1 contributes Im(i t) = t; the normal block is
  // imaginary_part_matrix.
  Eigen::Matrix3d im = Eigen::Matrix3d::Zero();
  im(0, 0) = t;
  im.bottomRightCorner<2, 2>() = imaginary_part_matrix(lambda, t);
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(im).singularValues();
  const double top = sv.maxCoeff();
  if (!(top > 0.0)) return 3;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > rel_tol * top) ++r;
  }
  return 3 + r;
}

FocalReport focal_time(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("focal_time: lambda must be positive");
  FocalReport rep;
  rep.lambda = lambda;
  if (lambda <= 1.0) return rep;

  const double m = (lambda - 1.0) / lambda;
  auto g = [m](double t) { return m * t - std::tanh(t); };

  double lo = 1e-3;
  for (int k = 0; k < 200 && !(g(lo) < 0.0); ++k) lo *= 0.5;
  double hi = std::max(3.0, 2.0 / m);
  if (!(g(lo) < 0.0) || !(g(hi) > 0.0)) throw std::logic_error("focal_time: root not bracketed");

  std::size_t it = 0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
    ++it;
  }
  double t = 0.5 * (lo + hi);
  for (int k = 0; k < 50; ++k) {
    const double sech = 1.0 / std::cosh(t);
    const double dg = m - sech * sech;
    if (!(dg > 0.0)) break;
    double next = t - g(t) / dg;
    next = std::clamp(next, lo, hi);
    ++it;
    const bool done = std::abs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * t;
    t = next;
    if (done) break;
  }
  rep.t_star = t;
  rep.residual = std::abs(g(t));
  rep.iterations = it;
  return rep;
}

Eigen::Matrix<Complex, 3, 2> jacobi_frame_numeric(const MetricParams& p, Complex t, double step) {
  if (!(step > 0.0)) throw DomainError("jacobi_frame_numeric: step must be positive");
  const ConnectionTable table = build_connection(p);
  const BodyVector e1 = BodyVector::basis(0);
  // Y' = W - G Y, W' = -G W - R Y with G y = nabla_{xi_1} y, R y = R(y, xi_1) xi_1.
  Eigen::Matrix3cd gam, rm;
  for (std::size_t i = 0; i < 3; ++i) {
    const BodyVector col = table(0, i);
    const BodyVector rc = riemann(table, BodyVector::basis(i), e1, e1);
    for (std::size_t k = 0; k < 3; ++k) {
      gam(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = col[k];
      rm(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = rc[k];
    }
  }
  using State = Eigen::Matrix<Complex, 6, 2>;
  auto f = [&](const State& y) {
    State d;
    d.topRows<3>() = y.bottomRows<3>() - gam * y.topRows<3>();
    d.bottomRows<3>() = -gam * y.bottomRows<3>() - rm * y.topRows<3>();
    return d;
  };
  State y = State::Zero();
  y(4, 0) = 1.0;
  y(5, 1) = 1.0;
  const double len = std::abs(t);
  if (len > 0.0) {
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(len / step - 1e-9)));
    const Complex dz = t / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) y = detail::rk4_step(f, y, dz);
  }
  return y.topRows<3>();
}

std::vector<FocalRow> focal_sweep(double lo, double hi, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("focal_sweep: step must be positive");
  if (!(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("focal_sweep: bad range");
  if (!(lo > 0.0)) throw DomainError("focal_sweep: lambda must be positive");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<FocalRow> rows(count);

  auto work = [&](std::size_t k) {
    FocalRow r;
    r.lambda = lo + static_cast<double>(k) * step;
    const FocalReport rep = focal_time(r.lambda);
    r.t_star = rep.t_star;
    r.residual = rep.residual;
    if (rep.t_star) {
      double mn = std::numeric_limits<double>::infinity();
      for (int j = 1; j < 1000; ++j) mn = std::min(mn, delta(r.lambda, *rep.t_star * j / 1000.0));
      r.delta_min_before_root = mn;
    }
    rows[k] = r;
  };

  const std::size_t nthreads =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, count));
  if (nthreads <= 1) {
    for (std::size_t k = 0; k < count; ++k) work(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nthreads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) work(k);
      });
    }
    for (auto& th : pool) th.join();
  }

  const FocalRow* prev = nullptr;
  for (const auto& r : rows) {
    if (!r.t_star) continue;
    if (prev && !(*r.t_star < *prev->t_star))
      throw std::logic_error("focal_sweep: t* is not strictly decreasing");
    prev = &r;
  }
  return rows;
}

}  // namespace su2tube
