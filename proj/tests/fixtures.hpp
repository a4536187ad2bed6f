#ifndef SUPERCYCLIC_TESTS_FIXTURES_HPP_
#define SUPERCYCLIC_TESTS_FIXTURES_HPP_

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "supercyclic/dynamics.hpp"
#include "supercyclic/operators.hpp"
#include "supercyclic/space.hpp"

namespace supercyclic::testing {

inline Vec<Real> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<Real> g;
  std::vector<Real> v(n);
  for (Real& x : v) x = g(rng);
  return Vec<Real>(std::move(v));
}

// Haar-ish orthogonal matrix from the QR factor of a Gaussian matrix.
inline OperatorSpec<Real> random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<Real> g;
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = g(rng);
  }
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
  std::vector<Real> entries(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = q(i, j);
  }
  return OperatorSpec<Real>::dense(n, std::move(entries));
}

inline OperatorSpec<Real> random_dense(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<Real> g;
  std::vector<Real> entries(n * n);
  for (Real& x : entries) x = g(rng);
  return OperatorSpec<Real>::dense(n, std::move(entries));
}

// Eight small finitely supported targets embedded in dimension dim.
inline TargetSet<Real> eight_targets(std::size_t dim, Real eps) {
  const std::vector<std::vector<Real>> raw = {{1},          {1, 1},     {0, 1, -1},     {2, 0, 0, 1},
                                              {-1, 0.5},    {0, 0, 3},  {1, -1, 1, -1}, {0.25, 0, 0.75}};
  TargetSet<Real> ts;
  for (const auto& r : raw) {
    std::vector<Real> v(dim, 0.0);
    std::copy(r.begin(), r.end(), v.begin());
    ts.targets.emplace_back(v);
    ts.epsilons.push_back(eps);
  }
  return ts;
}

}  // namespace supercyclic::testing

#endif  // SUPERCYCLIC_TESTS_FIXTURES_HPP_
