#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace vhs {

/// Generator for an independent, reproducible stream derived from
/// (seed, stream) by splitmix64 mixing.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return std::mt19937_64(z ^ (z >> 31));
}

inline Eigen::VectorXd random_gaussian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = normal(rng);
  return v;
}

inline Eigen::VectorXd random_unit_vector(std::mt19937_64& rng, int dim) {
  Eigen::VectorXd v = random_gaussian(rng, dim);
  return v / v.norm();
}

inline Eigen::VectorXd random_uniform(std::mt19937_64& rng, int dim, double lo, double hi) {
  std::uniform_real_distribution<double> uni(lo, hi);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = uni(rng);
  return v;
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with sign fix).
inline Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  return q;
}

}  // namespace vhs
