// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include "doctest.h"

#include "almeans/stochastic.hpp"

namespace {

using namespace almeans;

}  // namespace

TEST_CASE("closed-form stationary weights for a fixed triple") {
  // Hand computation for (r1, r2, r3) = (1/2, 1/3, 1/4): the unnormalized
  // components are (1 - r3) + r2 r3 = 3/4 + 1/12 = 5/6,
  // (1 - r1) + r3 r1 = 1/2 + 1/8 = 5/8, (1 - r2) + r1 r2 = 2/3 + 1/6 = 5/6,
  // which normalize to (4/11, 3/11, 4/11).
  const Eigen::Vector3d p = closed_form_p3(0.5, 1.0 / 3, 0.25);
  CHECK(p(0) == doctest::Approx(4.0 / 11).epsilon(1e-14));
  CHECK(p(1) == doctest::Approx(3.0 / 11).epsilon(1e-14));
  CHECK(p(2) == doctest::Approx(4.0 / 11).epsilon(1e-14));
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("uniform weights give the uniform stationary vector") {
  const StochasticProfile profile = gamma_from_weights_3(0.5, 0.5, 0.5);
  CHECK(profile.primitive);
  for (int i = 0; i < 3; ++i) {
    CHECK(profile.p(i) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(profile.gamma(i, i) == 0.0);
  }
  // Row pattern (0, 1-r, r) cyclically: row 0 is (0, 1/2, 1/2).
  CHECK(profile.gamma(0, 1) == doctest::Approx(0.5));
  CHECK(profile.gamma(0, 2) == doctest::Approx(0.5));
  // Circulant(0, 1/2, 1/2) has second eigenvalue of modulus 1/2.
  CHECK(profile.spectral_gap == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("closed form matches the eigen-solved vector on a coarse grid") {
  for (double r1 : {0.1, 0.5, 0.9}) {
    for (double r2 : {0.2, 0.6}) {
      for (double r3 : {0.3, 0.8}) {
        const StochasticProfile profile = gamma_from_weights_3(r1, r2, r3);
        const Eigen::Vector3d closed = closed_form_p3(r1, r2, r3);
        CHECK((profile.p - closed).lpNorm<Eigen::Infinity>() <= 1e-12);
        // Stationarity: p^T Gamma = p^T.
        CHECK((profile.gamma.transpose() * profile.p - profile.p)
                  .lpNorm<Eigen::Infinity>() <= 1e-12);
      }
    }
  }
}

TEST_CASE("weight validation") {
  CHECK_THROWS_AS(gamma_from_weights_3(0.0, 0.5, 0.5), ParameterError);
  CHECK_THROWS_AS(gamma_from_weights_3(0.5, 1.0, 0.5), ParameterError);
}

TEST_CASE("perron vector of the two-state swap") {
  // [[0,1],[1,0]] has the unique stationary vector (1/2, 1/2) even though
  // it is not primitive.
  Eigen::MatrixXd swap(2, 2);
  swap << 0, 1, 1, 0;
  const Eigen::VectorXd p = perron_vector(swap);
  CHECK(p(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(!check_primitive(swap).primitive);
}

TEST_CASE("identity matrix has no unique stationary vector") {
  CHECK_THROWS_AS(perron_vector(Eigen::MatrixXd::Identity(2, 2)),
                  DegeneratePerron);
}

TEST_CASE("primitivity detection") {
  Eigen::MatrixXd cyclic(3, 3);
  cyclic << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  const PrimitivityReport r = check_primitive(cyclic);
  CHECK(!r.primitive);
  CHECK(r.unit_modulus_count == 3);
  CHECK(r.spectral_gap == doctest::Approx(0.0).epsilon(1e-12));

  const StochasticProfile good = gamma_from_weights_3(0.3, 0.6, 0.2);
  const PrimitivityReport g = check_primitive(good.gamma);
  CHECK(g.primitive);
  CHECK(g.unit_modulus_count == 1);
  CHECK(g.spectral_gap > 0.0);
}

TEST_CASE("general profiles from weight rows") {
  // Two 4-variable rows and their cyclic placement.
  std::vector<Eigen::VectorXd> rows;
  for (int k = 0; k < 5; ++k) {
    Eigen::VectorXd w(4);
    w << 0.1, 0.2, 0.3, 0.4;
    rows.push_back(w);
  }
  const Eigen::MatrixXd gamma = gamma_matrix_from_rows(rows);
  CHECK(gamma.rows() == 5);
  CHECK(gamma(0, 0) == 0.0);
  CHECK(gamma(0, 1) == doctest::Approx(0.1));
  CHECK(gamma(4, 0) == doctest::Approx(0.1));  // wraps around
  const StochasticProfile profile = gamma_from_multimeans(rows);
  CHECK(profile.primitive);
  CHECK(profile.p.sum() == doctest::Approx(1.0).epsilon(1e-12));

  // A zero weight breaks affine domination.
  rows[2](1) = 0.0;
  rows[2](2) = 0.5;
  CHECK_THROWS_AS(gamma_from_multimeans(rows), NotAffinelyDominated);

  // Fewer than 3 rows cannot form a recursion.
  std::vector<Eigen::VectorXd> two = {Eigen::VectorXd::Constant(2, 0.5),
                                      Eigen::VectorXd::Constant(2, 0.5)};
  CHECK_THROWS_AS(gamma_matrix_from_rows(two), DimensionMismatch);

  // Rows must agree in arity (count - 1 weights each).
  std::vector<Eigen::VectorXd> ragged = {Eigen::VectorXd::Constant(2, 0.5),
                                         Eigen::VectorXd::Constant(3, 1.0 / 3),
                                         Eigen::VectorXd::Constant(2, 0.5)};
  CHECK_THROWS_AS(gamma_matrix_from_rows(ragged), DimensionMismatch);

  // Rows must sum to one.
  std::vector<Eigen::VectorXd> off = {Eigen::VectorXd::Constant(2, 0.6),
                                      Eigen::VectorXd::Constant(2, 0.5),
                                      Eigen::VectorXd::Constant(2, 0.5)};
  CHECK_THROWS_AS(gamma_from_multimeans(off), ParameterError);
}
