#include "doctest.h"

#include <numbers>

#include "oracles.hpp"
#include "su2tube/lie.hpp"

using namespace su2tube;

namespace {

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

double diff(const ComplexBodyVector& a, const ComplexBodyVector& b) { return coord_norm(a - b); }

ComplexBodyVector random_complex(oracle::Rng& rng, double r) {
  return {Complex(rng.uniform(-r, r), rng.uniform(-r, r)), Complex(rng.uniform(-r, r), rng.uniform(-r, r)),
          Complex(rng.uniform(-r, r), rng.uniform(-r, r))};
}

}  // namespace

TEST_SUITE("lie_core") {

TEST_CASE("metric params validation and predicates") {
  CHECK_THROWS_AS(MetricParams(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(MetricParams(1.0, -2.0, 1.0), DomainError);
  CHECK_THROWS_AS(MetricParams(1.0, 1.0, std::nan("")), DomainError);
  CHECK(MetricParams(1, 1, 2).is_berger());
  CHECK_FALSE(MetricParams(1, 1, 2).is_round());
  CHECK(MetricParams(2, 2, 2).is_round());
  CHECK_FALSE(MetricParams(1, 2, 2).is_berger());
  CHECK(MetricParams::berger(3.0).lambda(2) == 3.0);
}

TEST_CASE("basis matrices reproduce the structure constants") {
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(max_abs(basis_matrix(i) - oracle::xi(static_cast<int>(i))) == 0.0);
    const Mat2 a = basis_matrix(i), b = basis_matrix((i + 1) % 3), c = basis_matrix((i + 2) % 3);
    CHECK(max_abs(a * b - b * a - c) < 1e-15);
    CHECK(std::abs(a.trace()) == 0.0);
    CHECK(max_abs(a + a.adjoint()) == 0.0);
  }
}

TEST_CASE("bracket examples") {
  const auto e1 = BodyVector::basis(0), e2 = BodyVector::basis(1), e3 = BodyVector::basis(2);
  CHECK(bracket(e1, e2) == e3);
  CHECK(bracket(e3, e1) == e2);
  CHECK(bracket(e2, e3) == e1);
  const BodyVector x{0.3, -1.2, 2.5};
  CHECK(bracket(x, x) == BodyVector{});
}

TEST_CASE("bracket matches the matrix commutator and satisfies Jacobi") {
  oracle::Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    const auto x = random_complex(rng, 2.0), y = random_complex(rng, 2.0), z = random_complex(rng, 2.0);
    const ComplexBodyVector j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    REQUIRE(coord_norm(j) < 1e-12);
    const Mat2 X = to_matrix(x), Y = to_matrix(y);
    REQUIRE(diff(from_matrix(X * Y - Y * X), bracket(x, y)) < 1e-13);
  }
}

TEST_CASE("metric_eval examples") {
  const BodyVector e1 = BodyVector::basis(0);
  CHECK(metric_eval(MetricParams(1, 1, 1), e1, e1) == doctest::Approx(0.25));
  CHECK(metric_eval(MetricParams(1, 2, 3, Normalization::KillingUnit), BodyVector{1, 1, 1}, BodyVector{1, 1, 1}) == 6.0);
  const ComplexBodyVector ie{Complex(0, 1), 0.0, 0.0};
  const Complex v = metric_eval(MetricParams(1, 1, 1, Normalization::KillingUnit), ie, ie);
  CHECK(v.real() == -1.0);
  CHECK(v.imag() == 0.0);
}

TEST_CASE("metric is invariant under the xi_3 torus for Berger metrics") {
  oracle::Rng rng(12);
  const MetricParams p = MetricParams::berger(2.7);
  for (int k = 0; k < 200; ++k) {
    const auto x = complexify(BodyVector{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)});
    const auto y = complexify(BodyVector{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)});
    const GroupPoint g = exp_matrix(BodyVector::basis(2), rng.uniform(-5, 5));
    const Complex a = metric_eval(p, adjoint(g.matrix(), x), adjoint(g.matrix(), y));
    REQUIRE(std::abs(a - metric_eval(p, x, y)) < 1e-12);
  }
}

TEST_CASE("to_matrix and from_matrix are inverse") {
  oracle::Rng rng(13);
  for (int k = 0; k < 100; ++k) {
    const auto x = random_complex(rng, 3.0);
    REQUIRE(diff(from_matrix(to_matrix(x)), x) < 1e-15);
  }
}

TEST_CASE("exp_matrix agrees with the generic matrix exponential") {
  oracle::Rng rng(14);
  for (int k = 0; k < 200; ++k) {
    const auto x = random_complex(rng, 2.0);
    const Complex t(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const Mat2 ref = oracle::expm(t * to_matrix(x));
    const GroupPoint g = exp_matrix(x, t);
    REQUIRE(max_abs(g.matrix() - ref) < 1e-11 * std::max(1.0, max_abs(ref)));
    REQUIRE(g.scaled_det_error() < kDefaultDetTolerance);
  }
  // Small-argument series branch.
  const ComplexBodyVector x{1e-5, 2e-5, -1e-5};
  CHECK(max_abs(exp_matrix(x, 1.0).matrix() - oracle::expm(to_matrix(x))) < 1e-15);
}

TEST_CASE("exp_matrix one-parameter subgroup and unitarity") {
  CHECK(max_abs(exp_matrix(BodyVector{1, 2, 3}, 0.0).matrix() - Mat2::Identity()) == 0.0);
  oracle::Rng rng(15);
  for (int k = 0; k < 100; ++k) {
    const BodyVector x{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const double t = rng.uniform(-4, 4), s = rng.uniform(-4, 4);
    const Mat2 prod = (exp_matrix(x, t) * exp_matrix(x, s)).matrix();
    REQUIRE(max_abs(prod - exp_matrix(x, t + s).matrix()) < 1e-12);
    REQUIRE(exp_matrix(x, t).is_real(1e-12));
  }
  // Imaginary time leaves SU(2).
  CHECK_FALSE(exp_matrix(complexify(BodyVector{1, 0, 0}), Complex(0, 1)).is_real());
}

TEST_CASE("group point determinant checks") {
  Mat2 m = 2.0 * Mat2::Identity();
  CHECK_THROWS_AS(GroupPoint::from_matrix(m), DomainError);
  const GroupPoint g = GroupPoint::renormalized(m);
  CHECK(g.det_error() < 1e-15);
  CHECK_THROWS_AS(GroupPoint::renormalized(Mat2::Zero()), SingularInputError);
  const GroupPoint h = exp_matrix(ComplexBodyVector{1.0, Complex(0, 2), 0.5}, Complex(0.3, 1.1));
  CHECK(max_abs((h * h.inverse()).matrix() - Mat2::Identity()) < 1e-13);
}

TEST_CASE("adjoint_rotation examples") {
  CHECK((adjoint_rotation(0.0) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::Matrix2d q;
  q << 0, -1, 1, 0;
  CHECK((adjoint_rotation(std::numbers::pi / 2) - q).cwiseAbs().maxCoeff() < 1e-15);
  oracle::Rng rng(16);
  for (int k = 0; k < 50; ++k) {
    const auto r = adjoint_rotation(rng.uniform(-10, 10));
    REQUIRE((r.transpose() * r - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("right_from_left on the xi_1 subgroup") {
  const ComplexBodyVector x{1.0, -2.0, 0.5};
  CHECK(diff(right_from_left(GroupPoint::identity(), x), x) == 0.0);
  oracle::Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    const double t = rng.uniform(-6, 6);
    const GroupPoint g = exp_matrix(BodyVector::basis(0), t);
    // Ad(exp(-t xi_1)) xi_2 = cos t xi_2 - sin t xi_3.
    const ComplexBodyVector got = right_from_left(g, complexify(BodyVector::basis(1)));
    REQUIRE(diff(got, ComplexBodyVector{0.0, std::cos(t), -std::sin(t)}) < 1e-14);
    // The (xi_2, xi_3) coefficient map is then the inverse of that matrix.
    const auto r = adjoint_rotation(t);
    const ComplexBodyVector got3 = right_from_left(g, complexify(BodyVector::basis(2)));
    Eigen::Matrix2d eta;
    eta << got[1].real(), got3[1].real(), got[2].real(), got3[2].real();
    REQUIRE((r * eta - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK_THROWS_AS(right_from_left(Mat2(Mat2::Zero()), x), SingularInputError);
}

TEST_CASE("adjoint preserves brackets") {
  oracle::Rng rng(18);
  for (int k = 0; k < 100; ++k) {
    const auto x = random_complex(rng, 1.5), y = random_complex(rng, 1.5), z = random_complex(rng, 1.0);
    const Mat2 g = exp_matrix(z, Complex(1.0)).matrix();
    const auto lhs = adjoint(g, bracket(x, y));
    const auto rhs = bracket(adjoint(g, x), adjoint(g, y));
    REQUIRE(diff(lhs, rhs) < 1e-12 * (1.0 + coord_norm(lhs)));
  }
}

TEST_CASE("submersion parameter map") {
  CHECK(submersion_lambda(2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(submersion_lambda(1e12) > 1.0 - 1e-11);
  CHECK(submersion_lambda(std::numeric_limits<double>::infinity()) == 1.0);
  CHECK_THROWS_AS(submersion_lambda(0.0), DomainError);
  CHECK_THROWS_AS(mu_from_lambda(1.0), DomainError);
  CHECK_THROWS_AS(mu_from_lambda(0.0), DomainError);
  double prev = 0.0;
  for (double mu = 1e-3; mu < 1e3; mu *= 1.1) {
    const double l = submersion_lambda(mu);
    REQUIRE(l > prev);
    REQUIRE(std::abs(mu_from_lambda(l) - mu) <= 1e-12 * std::max(1.0, mu));
    prev = l;
  }
}

}  // TEST_SUITE
