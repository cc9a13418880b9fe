// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"

#include "almeans/mean2.hpp"
#include "almeans/rng.hpp"
#include "almeans/thompson.hpp"

namespace {

using namespace almeans;

SpdMatrix diag2(double a, double b) {
  Eigen::VectorXd d(2);
  d << a, b;
  return SpdMatrix::diagonal(d);
}

}  // namespace

TEST_CASE("distance between commuting fixtures") {
  // d(I, 2I) = log 2: the similarity spectrum is {2, 2}.
  const SpdMatrix eye = SpdMatrix::identity(2);
  const SpdMatrix twice = diag2(2.0, 2.0);
  const double kLog2 = 0.69314718055994531;
  CHECK(thompson(eye, twice) == doctest::Approx(kLog2).epsilon(1e-14));
  CHECK(thompson(twice, eye) == doctest::Approx(kLog2).epsilon(1e-14));

  // diag(1,4) vs diag(2,2): eigenvalue ratios are 2 and 1/2, both giving
  // |log| = log 2.
  CHECK(thompson(diag2(1, 4), diag2(2, 2)) ==
        doctest::Approx(kLog2).epsilon(1e-12));

  // gauge_R is the exponential of the distance.
  CHECK(gauge_R(diag2(1, 4), diag2(2, 2)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(gauge_R(eye, eye) == doctest::Approx(1.0).epsilon(1e-14));

  // Scalars: d([1], [8]) = log 8 = 3 log 2.
  const SpdMatrix one(Eigen::MatrixXd::Constant(1, 1, 1.0));
  const SpdMatrix eight(Eigen::MatrixXd::Constant(1, 1, 8.0));
  CHECK(thompson(one, eight) == doctest::Approx(3 * kLog2).epsilon(1e-12));
}

TEST_CASE("distance is zero exactly on equal arguments") {
  Sampler s(12);
  const SpdMatrix a = s.spd(4);
  CHECK(thompson(a, a) <= 1e-12);
  const SpdMatrix b = s.spd(4);
  if (!(a.entries() == b.entries())) {
    CHECK(thompson(a, b) > 0.0);
  }
}

TEST_CASE("congruence invariance on a fixed transform") {
  Sampler s(3);
  const SpdMatrix a = s.spd(3);
  const SpdMatrix b = s.spd(3);
  // Invariance holds for any invertible transform, not only symmetric
  // ones, so build T A T^T directly instead of using congruence().
  Eigen::MatrixXd t(3, 3);
  t << 2, 1, 0,
       0, 1, 1,
       1, 0, 3;
  const SpdMatrix ta(Eigen::MatrixXd(t * a.entries() * t.transpose()));
  const SpdMatrix tb(Eigen::MatrixXd(t * b.entries() * t.transpose()));
  const double before = thompson(a, b);
  const double after = thompson(ta, tb);
  CHECK(after == doctest::Approx(before).epsilon(1e-9));
}

TEST_CASE("scaling moves the distance by the log of the factor") {
  Sampler s(8);
  const SpdMatrix a = s.spd(3);
  const double base = thompson(a, a);
  CHECK(base <= 1e-12);
  const SpdMatrix scaled(Eigen::MatrixXd(5.0 * a.entries()));
  CHECK(thompson(a, scaled) == doctest::Approx(std::log(5.0)).epsilon(1e-10));
  // Scaling both arguments by the same factor changes nothing.
  const SpdMatrix b = s.spd(3);
  const SpdMatrix sa(Eigen::MatrixXd(3.0 * a.entries()));
  const SpdMatrix sb(Eigen::MatrixXd(3.0 * b.entries()));
  CHECK(thompson(sa, sb) == doctest::Approx(thompson(a, b)).epsilon(1e-9));
}

TEST_CASE("spectral radius of general matrices") {
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;  // eigenvalues +-i
  CHECK(spectral_radius(rot) == doctest::Approx(1.0).epsilon(1e-12));
  Eigen::MatrixXd m(2, 2);
  m << 3, 0, 0, -7;
  CHECK(spectral_radius(m) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("geodesic contraction along weighted geometric means") {
  Sampler s(99);
  for (int t = 0; t < 25; ++t) {
    const SpdMatrix x = s.spd(4);
    const SpdMatrix y = s.spd(4);
    const double r = s.uniform(0.0, 1.0);
    const double q = s.uniform(0.0, 1.0);
    CHECK(geodesic_gauge_bound_check(x, y, r, q));
  }
  // Degenerate choices: equal parameters and the endpoints.
  const SpdMatrix x = s.spd(3);
  const SpdMatrix y = s.spd(3);
  CHECK(geodesic_gauge_bound_check(x, y, 0.3, 0.3));
  CHECK(geodesic_gauge_bound_check(x, y, 0.0, 1.0));
  CHECK(geodesic_gauge_bound_check(x, y, 1.0, 0.0));
}

TEST_CASE("dimension and domain errors") {
  CHECK_THROWS_AS(thompson(SpdMatrix::identity(2), SpdMatrix::identity(3)),
                  DimensionMismatch);
  // Semidefinite arguments are rejected rather than silently shifted.
  Eigen::VectorXd d(2);
  d << 1.0, 0.0;
  const SpdMatrix singular = SpdMatrix::diagonal(d);
  CHECK_THROWS_AS(thompson(singular, SpdMatrix::identity(2)), DomainError);
  CHECK_THROWS_AS(gauge_R(SpdMatrix::identity(2), singular), DomainError);
}
