#include "doctest.h"

#include "oracles.hpp"
#include "su2tube/geodesic.hpp"
#include "su2tube/integrability.hpp"

using namespace su2tube;

TEST_SUITE("integrability") {

TEST_CASE("integrals examples") {
  const MetricParams p(1, 2, 3);
  const auto a = integrals(p, BodyVector{1, 1, 1});
  CHECK(a.e_val == 6.0);
  CHECK(a.m_val == 14.0);
  const auto b = integrals(p, BodyVector{0, 0, 1});
  CHECK(b.e_val == 3.0);
  CHECK(b.m_val == 9.0);
  const auto c = integrals(p, BodyVector{2.5, 2.5, 2.5});
  CHECK(c.e_val == doctest::Approx(6.0 * 6.25));
  CHECK(c.m_val == doctest::Approx(14.0 * 6.25));
  // Independent of the normalization flag.
  const auto d = integrals(p.with_normalization(Normalization::KillingUnit), BodyVector{1, 1, 1});
  CHECK(d.e_val == 6.0);
}

TEST_CASE("integral bounds for real vectors") {
  oracle::Rng rng(41);
  for (int k = 0; k < 500; ++k) {
    const MetricParams p(rng.uniform(0.1, 5), rng.uniform(0.1, 5), rng.uniform(0.1, 5));
    const auto a = rng.vec(-3, 3);
    const auto iv = integrals(p, BodyVector{a[0], a[1], a[2]});
    const auto& l = p.lambdas();
    const double lmin = std::min({l[0], l[1], l[2]}), lmax = std::max({l[0], l[1], l[2]});
    REQUIRE(iv.e_val > 0.0);
    REQUIRE(iv.m_val > 0.0);
    REQUIRE(iv.m_val >= lmin * iv.e_val * (1 - 1e-14));
    REQUIRE(iv.m_val <= lmax * iv.e_val * (1 + 1e-14));
    REQUIRE_NOTHROW(require_realizable(p, iv));
  }
  const MetricParams p(1, 2, 3);
  CHECK_THROWS_AS(require_realizable(p, {1.0, 10.0}), InconsistencyError);
  CHECK_THROWS_AS(require_realizable(p, {1.0, 0.5}), InconsistencyError);
  CHECK_THROWS_AS(require_realizable(p, {-1.0, -2.0}), InconsistencyError);
  CHECK_NOTHROW(require_realizable(p, {1.0, 3.0}));
  CHECK_NOTHROW(require_realizable(p, {0.0, 0.0}));
}

TEST_CASE("genericity") {
  const MetricParams p(1, 2, 3);
  const auto g = is_generic(p, {6, 14});
  CHECK(g.generic);
  CHECK(g.margins[0] == 8.0);
  CHECK(g.margins[1] == 2.0);
  CHECK(g.margins[2] == 4.0);
  CHECK(g.margin == 2.0);
  CHECK_FALSE(is_generic(p, {3, 9}).generic);
  const auto minors = df_minors(p, BodyVector{1, 1, 1});
  for (double m : minors) CHECK(m != 0.0);
  CHECK(df_rank(p, BodyVector{1, 1, 1}) == 2);
  CHECK(df_rank(p, BodyVector{0, 0, 1}) == 1);
  CHECK(df_rank(p, BodyVector{0, 0, 0}) == 0);
}

TEST_CASE("classification examples") {
  const MetricParams p(1, 2, 3);
  const auto smooth = classify_curve(p, {6, 14});
  CHECK(smooth.tag == CurveTag::SmoothGenusOne);
  CHECK(smooth.genus == 1);
  CHECK_FALSE(smooth.witness);

  const MetricParams b = MetricParams::berger(2.0);
  const auto iv = integrals(b, BodyVector{1, 0, 1});
  CHECK(iv.e_val == 3.0);
  CHECK(iv.m_val == 5.0);
  const auto split = classify_curve(b, iv);
  CHECK(split.tag == CurveTag::SplitConics);
  CHECK(split.x3_abs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(split.split_axis == 2);

  const auto sing = classify_curve(p, {3, 9});
  REQUIRE(sing.tag == CurveTag::Singular);
  REQUIRE(sing.witness);
  const auto [qe, qm] = quadric_residuals(p, {3, 9}, *sing.witness);
  CHECK(std::abs(qe) < 1e-10);
  CHECK(std::abs(qm) < 1e-10);
  for (const auto& m : jacobian_minors(p, {3, 9}, *sing.witness)) CHECK(std::abs(m) < 1e-10);
  // The witness is the axis point (0 : 0 : 1 : 1) up to sign.
  CHECK(std::abs(std::abs(sing.witness->z[2]) - std::abs(sing.witness->z[3])) < 1e-12);
  CHECK(std::abs(sing.witness->z[0]) == 0.0);

  CHECK(classify_curve(MetricParams(1, 1, 1), {3, 3}).tag == CurveTag::Degenerate);
  CHECK_THROWS_AS(classify_curve(b, {3, 2}), InconsistencyError);
}

TEST_CASE("split along other equal pairs") {
  const MetricParams p(2, 1, 2);  // lambda_1 = lambda_3, distinct axis 2
  const auto iv = integrals(p, BodyVector{0.5, 1.5, -0.7});
  const auto c = classify_curve(p, iv);
  CHECK(c.tag == CurveTag::SplitConics);
  CHECK(c.split_axis == 1);
  CHECK(c.x3_abs == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("classification is projective in (e, m)") {
  oracle::Rng rng(42);
  for (int k = 0; k < 200; ++k) {
    const MetricParams p(1, 2, 3);
    const auto a = rng.vec(-2, 2);
    const auto iv = integrals(p, BodyVector{a[0], a[1], a[2]});
    const double s = rng.uniform(0.01, 100);
    REQUIRE(classify_curve(p, iv).tag == classify_curve(p, {s * iv.e_val, s * iv.m_val}).tag);
    const MetricParams b = MetricParams::berger(rng.uniform(0.2, 4));
    const auto ivb = integrals(b, BodyVector{a[0], a[1], a[2]});
    const auto cb = classify_curve(b, ivb);
    const auto cs = classify_curve(b, {s * ivb.e_val, s * ivb.m_val});
    REQUIRE(cb.tag == cs.tag);
    REQUIRE(std::abs(cs.x3_abs - std::sqrt(s) * cb.x3_abs) < 1e-6 * std::sqrt(s));
    REQUIRE(std::abs(cb.x3_abs - std::abs(a[2])) < 1e-6);
  }
}

TEST_CASE("split conics lie on both quadrics") {
  const MetricParams b = MetricParams::berger(2.0);
  for (const BodyVector& x : {BodyVector{1, 0, 1}, BodyVector{0.3, -1.2, 0.4}, BodyVector{2, 1, 0.1}}) {
    const auto iv = integrals(b, x);
    for (int sign : {1, -1}) {
      for (int k = 0; k < 50; ++k) {
        const ComplexBodyVector v = split_conic_point(b, iv, sign, 2.0 * std::numbers::pi * k / 50.0);
        const auto [r1, r2] = on_curve_residual(b, iv, v);
        REQUIRE(std::abs(r1) < 1e-10);
        REQUIRE(std::abs(r2) < 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(split_conic_point(MetricParams(1, 2, 3), {6, 14}, 1, 0.0), DomainError);
}

TEST_CASE("on_curve_residual") {
  const MetricParams p(1, 2, 3);
  const BodyVector x{0.7, -0.4, 1.1};
  const auto iv = integrals(p, x);
  const auto [r1, r2] = on_curve_residual(p, iv, complexify(x));
  CHECK(std::abs(r1) < 1e-15);
  CHECK(std::abs(r2) < 1e-15);
  const auto [s1, s2] = on_curve_residual(p, iv, ComplexBodyVector{1.0, 2.0, 3.0});
  CHECK(std::abs(s1) > 1e-3);
  CHECK(std::abs(s2) > 1e-3);
}

TEST_CASE("complexified trajectories stay on the curve") {
  oracle::Rng rng(43);
  int runs = 0;
  for (int k = 0; k < 30; ++k) {
    const MetricParams p(1, 2, 3);
    const auto a = rng.vec(-1.5, 1.5);
    const BodyVector x{a[0], a[1], a[2]};
    const auto iv = integrals(p, x);
    const Complex end = std::polar(rng.uniform(0.2, 1.5), rng.uniform(0.0, 2.0 * std::numbers::pi));
    double worst = 0.0;
    auto obs = [&](const TrajectorySample& s) {
      const auto [r1, r2] = on_curve_residual(p, iv, s.body);
      worst = std::max({worst, std::abs(r1), std::abs(r2)});
    };
    const auto run = integrate_body(p, complexify(x), PathSpec::segment(0.0, end, 1e-3), {}, obs);
    if (run.blow_up) continue;
    ++runs;
    REQUIRE(worst <= 1e-8 * (1.0 + iv.e_val + iv.m_val));
  }
  CHECK(runs > 20);
}

}  // TEST_SUITE
