#ifndef SUPERCYCLIC_DYNAMICS_HPP_
#define SUPERCYCLIC_DYNAMICS_HPP_

// Vectors with near-dense projective orbits for T = lambda*B, and a density
// check that measures how well {c T^n x} approximates a finite target set.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "supercyclic/error.hpp"
#include "supercyclic/operators.hpp"
#include "supercyclic/space.hpp"
#include "supercyclic/subspace.hpp"

namespace supercyclic {

template <Field S>
struct TargetSet {
  std::vector<Vec<S>> targets;
  std::vector<Real> epsilons;

  void validate() const {
    if (targets.empty()) fail(ErrorKind::EmptyTargets, "TargetSet: no targets");
    if (epsilons.size() != targets.size()) {
      fail(ErrorKind::DimensionMismatch, "TargetSet: one epsilon per target required");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (targets[i].is_zero()) fail(ErrorKind::InvalidArgument, "TargetSet: zero target " + std::to_string(i));
      if (!(epsilons[i] > 0) || !std::isfinite(epsilons[i])) {
        fail(ErrorKind::InvalidArgument, "TargetSet: epsilon must be positive");
      }
    }
  }
};

struct BlockPlan {
  std::size_t target_index = 0;
  std::size_t offset = 0;      // m_j
  Real bounded_error = 0;      // sum_{i>j} lambda^{m_j - m_i} ||t_i||
};

template <Field S>
struct BuiltVector {
  Vec<S> x;
  std::vector<BlockPlan> plan;
};

/// x = sum_j lambda^{-m_j} S^{m_j} t_j with m_1 = 0 and each next offset the
/// smallest integer that clears the previous block's support while keeping
/// every accumulated tail bound within its epsilon.
///
/// For the unweighted l^p norms the shift S is an isometry on the truncation,
/// so ||(lambda B)^{m_j} x - t_j|| <= sum_{i>j} lambda^{m_j - m_i} ||t_i||.
template <Field S>
BuiltVector<S> build_supercyclic_vector(Real lambda, const TargetSet<S>& targets, std::size_t dim,
                                        const NormSpec& spec = NormSpec::l2()) {
  if (targets.targets.empty()) fail(ErrorKind::EmptyTargets, "build_supercyclic_vector: no targets");
  targets.validate();
  if (!(lambda > 1.0) || !std::isfinite(lambda)) fail(ErrorKind::InvalidArgument, "builder: lambda must exceed 1");
  if (spec.weighted()) fail(ErrorKind::InvalidArgument, "builder: tail bound needs an unweighted norm");
  if (dim < 2) fail(ErrorKind::InvalidArgument, "builder: dimension must be >= 2");

  const std::size_t count = targets.targets.size();
  std::vector<Real> norms(count);
  std::vector<std::size_t> support(count);
  for (std::size_t j = 0; j < count; ++j) {
    norms[j] = norm(targets.targets[j], spec);
    support[j] = targets.targets[j].support_length();
  }

  const Real log_lambda = std::log(lambda);
  std::vector<std::size_t> offsets{0};
  std::vector<Real> tail(count, 0.0);
  for (std::size_t j = 1; j < count; ++j) {
    std::size_t m = offsets.back() + support[j - 1];
    // Smallest m such that tail[i] + lambda^{m_i - m} ||t_j|| <= eps_i for all i < j.
    for (std::size_t i = 0; i < j; ++i) {
      const Real budget = targets.epsilons[i] - tail[i];
      if (!(budget > 0)) {
        fail(ErrorKind::InvalidArgument, "builder: epsilon budget of target " + std::to_string(i) + " exhausted");
      }
      // lambda^{m_i - m} ||t_j|| <= budget  <=>  m >= m_i + log(||t_j|| / budget) / log(lambda)
      const Real need = static_cast<Real>(offsets[i]) + std::log(norms[j] / budget) / log_lambda;
      if (need > static_cast<Real>(m)) m = static_cast<std::size_t>(std::ceil(need - 1e-12));
      // Guard the ceiling against rounding right at the boundary.
      while (std::exp((static_cast<Real>(offsets[i]) - static_cast<Real>(m)) * log_lambda) * norms[j] > budget) ++m;
    }
    for (std::size_t i = 0; i < j; ++i) {
      tail[i] += std::exp((static_cast<Real>(offsets[i]) - static_cast<Real>(m)) * log_lambda) * norms[j];
    }
    offsets.push_back(m);
  }

  const std::size_t needed = offsets.back() + support.back();
  if (needed > dim) {
    fail(ErrorKind::TruncationTooSmall, "builder: blocks need dimension " + std::to_string(needed) + ", have " +
                                            std::to_string(dim));
  }

  std::vector<S> x(dim, S{});
  for (std::size_t j = 0; j < count; ++j) {
    const Real w = std::exp(-static_cast<Real>(offsets[j]) * log_lambda);
    if (w == 0) fail(ErrorKind::InvalidArgument, "builder: block weight underflows");
    for (std::size_t k = 0; k < support[j]; ++k) x[offsets[j] + k] += S(w) * targets.targets[j][k];
  }

  BuiltVector<S> out{Vec<S>(std::move(x)), {}};
  for (std::size_t j = 0; j < count; ++j) out.plan.push_back({j, offsets[j], tail[j]});
  return out;
}

template <Field S>
struct DensityRecord {
  std::size_t target_index = 0;
  std::size_t best_n = 0;
  S best_c{};
  Real error = 0;
};

template <Field S>
struct DensityReport {
  std::vector<DensityRecord<S>> records;
  std::size_t horizon = 0;
  NormSpec norm_spec;
  /// First n at which T^n x = 0, when the orbit died inside the horizon.
  std::optional<std::size_t> zero_orbit_at;
};

/// For each target t: min over n in [0, horizon] and scalars c of
/// ||c T^n x - t||. Ties keep the smallest n.
template <Field S>
DensityReport<S> density_check(const OperatorSpec<S>& op, const Vec<S>& x, const TargetSet<S>& targets,
                               std::size_t horizon, const NormSpec& spec = NormSpec::l2()) {
  targets.validate();
  if (x.is_zero()) fail(ErrorKind::InvalidArgument, "density_check: x must be nonzero");
  for (const auto& t : targets.targets) require_same_dim(t.size(), x.size(), "density_check target");
  spec.check_dim(x.size());

  DensityReport<S> report;
  report.horizon = horizon;
  report.norm_spec = spec;
  report.records.resize(targets.targets.size());
  for (std::size_t i = 0; i < targets.targets.size(); ++i) {
    report.records[i].target_index = i;
    report.records[i].error = std::numeric_limits<Real>::infinity();
  }

  OrbitCursor<S> cursor(op, x, spec);
  while (true) {
    const OrbitElement<S> el = cursor.current();
    for (std::size_t i = 0; i < targets.targets.size(); ++i) {
      const auto& t = targets.targets[i];
      auto [c_unit, err] = best_multiple(t, el.direction, spec);
      auto& rec = report.records[i];
      if (err < rec.error - 1e-14 * norm(t, spec)) {
        rec.error = err;
        rec.best_n = el.n;
        rec.best_c = c_unit * S(std::exp(-el.log_scale));
      }
    }
    if (cursor.n() >= horizon) break;
    if (!cursor.advance()) {
      report.zero_orbit_at = cursor.n();
      break;
    }
  }
  return report;
}

}  // namespace supercyclic

#endif  // SUPERCYCLIC_DYNAMICS_HPP_
