#ifndef SUPERCYCLIC_DESCENT_HPP_
#define SUPERCYCLIC_DESCENT_HPP_

// Convex descent for min over alpha of || e - sum_i alpha_i g_i ||_p.
//
// The objective is replaced by a smooth surrogate built from
// s_j = sqrt(|r_j|^2 + mu^2):
//   p = 1      sum_j s_j
//   1 < p < inf sum_j s_j^p
//   p = inf    mu * log sum_j exp(s_j / mu)
// and minimized by damped Newton steps while mu is driven to zero. Complex
// coefficients are optimized over their real and imaginary parts. The
// reported value is always the exact l^p norm of the final residual, so it
// is an upper bound on the true distance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "supercyclic/error.hpp"
#include "supercyclic/space.hpp"

namespace supercyclic {

template <Field S>
struct DescentResult {
  Real value = 0;
  std::vector<S> coeffs;
  int iterations = 0;
};

struct DescentOptions {
  Real tolerance = 1e-8;
  int max_iterations = 20000;
};

namespace detail {

// Real least-squares view of the residual: z = c - M theta, with one row
// per real component (two per coordinate in the complex case).
struct RealResidualModel {
  Eigen::MatrixXd m;
  Eigen::VectorXd c;
  int components = 1;  // 1 (real) or 2 (complex)
};

template <Field S>
RealResidualModel real_model(std::span<const S> e, const std::vector<std::vector<S>>& gens) {
  const auto n = static_cast<Eigen::Index>(e.size());
  const auto r = static_cast<Eigen::Index>(gens.size());
  RealResidualModel model;
  if constexpr (is_complex_v<S>) {
    model.components = 2;
    model.m.setZero(2 * n, 2 * r);
    model.c.setZero(2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
      model.c(2 * j) = e[j].real();
      model.c(2 * j + 1) = e[j].imag();
      for (Eigen::Index i = 0; i < r; ++i) {
        const Complex g = gens[i][j];
        model.m(2 * j, i) = g.real();
        model.m(2 * j, r + i) = -g.imag();
        model.m(2 * j + 1, i) = g.imag();
        model.m(2 * j + 1, r + i) = g.real();
      }
    }
  } else {
    model.m.setZero(n, r);
    model.c.setZero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      model.c(j) = e[j];
      for (Eigen::Index i = 0; i < r; ++i) model.m(j, i) = gens[i][j];
    }
  }
  return model;
}

template <Field S>
std::vector<S> unpack_coeffs(const Eigen::VectorXd& theta, std::size_t r) {
  std::vector<S> out(r);
  for (std::size_t i = 0; i < r; ++i) {
    if constexpr (is_complex_v<S>) {
      out[i] = Complex(theta(static_cast<Eigen::Index>(i)), theta(static_cast<Eigen::Index>(r + i)));
    } else {
      out[i] = theta(static_cast<Eigen::Index>(i));
    }
  }
  return out;
}

class SmoothedObjective {
 public:
  SmoothedObjective(const RealResidualModel& model, Real p) : model_(model), p_(p) {}

  Real value(const Eigen::VectorXd& theta, Real mu) const {
    const Eigen::VectorXd z = model_.c - model_.m * theta;
    const auto n = coordinates();
    std::vector<Real> s(n);
    for (Eigen::Index j = 0; j < n; ++j) s[j] = smooth_abs(z, j, mu);
    if (std::isinf(p_)) {
      const Real mx = *std::max_element(s.begin(), s.end());
      Real acc = 0;
      for (Real v : s) acc += std::exp((v - mx) / mu);
      return mx + mu * std::log(acc);
    }
    Real acc = 0;
    for (Real v : s) acc += p_ == 1.0 ? v : std::pow(v, p_);
    return acc;
  }

  void derivatives(const Eigen::VectorXd& theta, Real mu, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const int k = model_.components;
    const Eigen::VectorXd z = model_.c - model_.m * theta;
    const auto n = coordinates();
    const auto d = theta.size();
    grad.setZero(d);
    hess.setZero(d, d);

    std::vector<Real> s(n), pi(n, 1.0);
    for (Eigen::Index j = 0; j < n; ++j) s[j] = smooth_abs(z, j, mu);
    if (std::isinf(p_)) {
      const Real mx = *std::max_element(s.begin(), s.end());
      Real total = 0;
      for (Eigen::Index j = 0; j < n; ++j) total += (pi[j] = std::exp((s[j] - mx) / mu));
      for (Real& v : pi) v /= total;
    }

    Eigen::VectorXd mean_grad = Eigen::VectorXd::Zero(d);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto rows = model_.m.middleRows(j * k, k);
      const Eigen::VectorXd zj = z.segment(j * k, k);
      // ds/dtheta = -rows' * zj / s ; d2s/dz2 = (I - zj zj'/s^2) / s
      const Eigen::VectorXd ds = -(rows.transpose() * zj) / s[j];
      const Eigen::MatrixXd d2s_z =
          (Eigen::MatrixXd::Identity(k, k) - zj * zj.transpose() / (s[j] * s[j])) / s[j];
      if (std::isinf(p_)) {
        grad += pi[j] * ds;
        mean_grad += pi[j] * ds;
        hess += pi[j] * (rows.transpose() * d2s_z * rows) + (pi[j] / mu) * ds * ds.transpose();
      } else if (p_ == 1.0) {
        grad += ds;
        hess += rows.transpose() * d2s_z * rows;
      } else {
        const Real sp1 = std::pow(s[j], p_ - 1.0);
        const Real sp2 = std::pow(s[j], p_ - 2.0);
        grad += p_ * sp1 * ds;
        hess += p_ * (p_ - 1.0) * sp2 * ds * ds.transpose() + p_ * sp1 * (rows.transpose() * d2s_z * rows);
      }
    }
    if (std::isinf(p_)) hess -= (1.0 / mu) * mean_grad * mean_grad.transpose();
  }

  Real exact_norm(const Eigen::VectorXd& theta) const {
    const Eigen::VectorXd z = model_.c - model_.m * theta;
    std::vector<Real> a(static_cast<std::size_t>(coordinates()));
    for (Eigen::Index j = 0; j < coordinates(); ++j) a[j] = z.segment(j * model_.components, model_.components).norm();
    return lp_norm<Real>(std::span<const Real>(a), p_);
  }

 private:
  Eigen::Index coordinates() const { return model_.c.size() / model_.components; }

  Real smooth_abs(const Eigen::VectorXd& z, Eigen::Index j, Real mu) const {
    const auto zj = z.segment(j * model_.components, model_.components);
    return std::sqrt(zj.squaredNorm() + mu * mu);
  }

  const RealResidualModel& model_;
  Real p_;
};

}  // namespace detail

/// Minimizes the unweighted l^p distance from e to span(gens) by smoothed
/// Newton descent. Throws SolverFailure when the iteration budget runs out.
template <Field S>
DescentResult<S> lp_distance_descent(std::span<const S> e, const std::vector<std::vector<S>>& gens, Real p,
                                     const DescentOptions& opts = {}) {
  for (const auto& g : gens) require_same_dim(g.size(), e.size(), "descent generator");
  DescentResult<S> result;
  const Real scale = lp_norm<S>(e, std::numeric_limits<Real>::infinity());
  if (gens.empty() || scale == 0) {
    result.value = lp_norm<S>(e, p);
    result.coeffs.assign(gens.size(), S{});
    return result;
  }

  // Work on e / scale so that mu and the tolerances are relative.
  std::vector<S> e_scaled(e.begin(), e.end());
  for (S& v : e_scaled) v /= scale;
  const detail::RealResidualModel model = detail::real_model<S>(std::span<const S>(e_scaled), gens);
  const detail::SmoothedObjective f(model, p);
  const auto d = model.m.cols();

  // Least-squares start.
  Eigen::VectorXd theta = model.m.completeOrthogonalDecomposition().solve(model.c);

  const Real mu_final = std::max(1e-13, opts.tolerance * 1e-4);
  Real mu = 0.1;
  Eigen::VectorXd grad(d);
  Eigen::MatrixXd hess(d, d);
  int iterations = 0;
  Real best = f.exact_norm(theta);
  Eigen::VectorXd best_theta = theta;

  while (true) {
    // Regularized Newton iterations at fixed mu: (H + rho I) step = -g, with
    // rho raised until the step decreases the surrogate and relaxed after.
    Real rho = 0;
    for (int inner = 0; inner < 500; ++inner) {
      if (++iterations > opts.max_iterations) fail(ErrorKind::SolverFailure, "convex descent: iteration budget exhausted");
      f.derivatives(theta, mu, grad, hess);
      const Real f0 = f.value(theta, mu);
      const Real hscale = std::max(hess.diagonal().cwiseAbs().maxCoeff(), 1e-300);
      bool accepted = false;
      Real decrement = 0;
      for (int attempt = 0; attempt < 80 && !accepted; ++attempt) {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hess + rho * Eigen::MatrixXd::Identity(d, d));
        const Eigen::VectorXd step = -ldlt.solve(grad);
        decrement = -grad.dot(step);
        if (ldlt.info() == Eigen::Success && step.allFinite() && decrement > 0) {
          const Eigen::VectorXd trial = theta + step;
          if (f.value(trial, mu) < f0) {
            theta = trial;
            accepted = true;
            break;
          }
        }
        rho = rho == 0 ? 1e-12 * hscale : rho * 10;
      }
      if (!accepted) break;
      rho = rho < 1e-10 * hscale ? 0 : rho * 0.1;
      if (decrement < 1e-22 * std::max(1.0, f0)) break;
    }
    const Real current = f.exact_norm(theta);
    if (current < best) {
      best = current;
      best_theta = theta;
    }
    if (mu <= mu_final) break;
    mu = std::max(mu * 0.1, mu_final);
  }

  if (!std::isfinite(best)) fail(ErrorKind::SolverFailure, "convex descent: non-finite objective");
  result.value = best * scale;
  result.coeffs = detail::unpack_coeffs<S>(best_theta * scale, gens.size());
  result.iterations = iterations;
  return result;
}

}  // namespace supercyclic

#endif  // SUPERCYCLIC_DESCENT_HPP_
