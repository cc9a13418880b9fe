// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include "almeans/rng.hpp"

#include <cmath>

namespace almeans {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

Sampler::Sampler(std::uint64_t seed) : engine_(seed) {}

double Sampler::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(engine_);
}

double Sampler::log_uniform(double lo, double hi) {
  if (!(lo > 0.0 && hi >= lo)) {
    throw ParameterError("log_uniform: need 0 < lo <= hi");
  }
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Sampler::gaussian() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

int Sampler::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(engine_);
}

Eigen::VectorXd Sampler::gaussian_vector(Eigen::Index dim) {
  Eigen::VectorXd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = gaussian();
  return v;
}

Eigen::VectorXd Sampler::unit_vector(Eigen::Index dim) {
  for (;;) {
    Eigen::VectorXd v = gaussian_vector(dim);
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
}

Eigen::MatrixXd Sampler::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = gaussian();
  }
  return m;
}

Eigen::MatrixXd Sampler::orthogonal(Eigen::Index dim) {
  const Eigen::MatrixXd g = gaussian_matrix(dim, dim);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

SpdMatrix Sampler::spd(Eigen::Index dim, double lambda_lo, double lambda_hi) {
  const Eigen::MatrixXd q = orthogonal(dim);
  Eigen::VectorXd lambda(dim);
  for (Eigen::Index i = 0; i < dim; ++i) lambda(i) = log_uniform(lambda_lo, lambda_hi);
  return SpdMatrix(q * lambda.asDiagonal() * q.transpose());
}

SpdMatrix Sampler::psd_singular(Eigen::Index dim, Eigen::Index rank,
                                double lambda_lo, double lambda_hi) {
  if (rank < 0 || rank > dim) {
    throw ParameterError("psd_singular: rank out of range");
  }
  const Eigen::MatrixXd q = orthogonal(dim);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index i = 0; i < rank; ++i) lambda(i) = log_uniform(lambda_lo, lambda_hi);
  return SpdMatrix(q * lambda.asDiagonal() * q.transpose());
}

std::pair<SpdMatrix, SpdMatrix> Sampler::loewner_pair(Eigen::Index dim,
                                                      double bump_scale) {
  SpdMatrix a = spd(dim);
  const Eigen::MatrixXd g = bump_scale * gaussian_matrix(dim, dim);
  SpdMatrix b(a.entries() + g * g.transpose());
  return {std::move(a), std::move(b)};
}

std::array<SpdMatrix, 3> Sampler::commuting_triple(Eigen::Index dim,
                                                   double lambda_lo,
                                                   double lambda_hi) {
  const Eigen::MatrixXd q = orthogonal(dim);
  std::array<Eigen::VectorXd, 3> lambdas;
  for (auto& lambda : lambdas) {
    lambda.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) lambda(i) = log_uniform(lambda_lo, lambda_hi);
  }
  return {SpdMatrix(q * lambdas[0].asDiagonal() * q.transpose()),
          SpdMatrix(q * lambdas[1].asDiagonal() * q.transpose()),
          SpdMatrix(q * lambdas[2].asDiagonal() * q.transpose())};
}

Eigen::MatrixXd Sampler::symmetric_invertible(Eigen::Index dim) {
  const Eigen::MatrixXd g = gaussian_matrix(dim, dim);
  const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  Eigen::VectorXd lambda = solver.eigenvalues();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double sign = lambda(i) < 0.0 ? -1.0 : 1.0;
    lambda(i) = sign * std::max(std::abs(lambda(i)), 0.5);
  }
  const Eigen::MatrixXd v = solver.eigenvectors();
  return v * lambda.asDiagonal() * v.transpose();
}

}  // namespace almeans
