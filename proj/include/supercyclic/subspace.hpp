#ifndef SUPERCYCLIC_SUBSPACE_HPP_
#define SUPERCYCLIC_SUBSPACE_HPP_

// Growing spans and the distance dist(e, Y).
//
// A SpanBasis keeps the raw generators together with an l2-orthonormal basis
// maintained by classical Gram-Schmidt applied twice per extension. The
// orthonormal basis is used regardless of the ambient norm: membership in a
// span does not depend on the norm, only the distance value does.
//
// Distance routes:
//   p = 2 (unweighted)   residual of e against the orthonormal basis
//   p in {1, inf}, real  exact linear program (DenseSimplex)
//   everything else      smoothed convex descent
// Weighted norms are reduced to unweighted ones by scaling coordinates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "supercyclic/descent.hpp"
#include "supercyclic/error.hpp"
#include "supercyclic/simplex.hpp"
#include "supercyclic/space.hpp"

namespace supercyclic {

/// Residuals below this fraction of ||v|| count as linearly dependent.
inline constexpr Real kDependencyTolerance = 1e-10;

template <Field S>
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t dim) : dim_(dim) {
    if (dim < 2) fail(ErrorKind::InvalidArgument, "SpanBasis: dimension must be >= 2");
  }

  static SpanBasis of(std::size_t dim, const std::vector<Vec<S>>& gens) {
    SpanBasis y(dim);
    for (const auto& g : gens) y = y.extend(g);
    return y;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return ortho_.size(); }
  const std::vector<Vec<S>>& generators() const noexcept { return generators_; }
  const std::vector<Vec<S>>& ortho() const noexcept { return ortho_; }
  const std::vector<bool>& dependency_flags() const noexcept { return dependent_; }

  /// v minus its l2 projection onto the span (two Gram-Schmidt passes).
  std::vector<S> residual(std::span<const S> v) const {
    require_same_dim(v.size(), dim_, "SpanBasis residual");
    std::vector<S> r(v.begin(), v.end());
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : ortho_) {
        const S c = dot<S>(q.entries(), std::span<const S>(r));
        for (std::size_t j = 0; j < dim_; ++j) r[j] -= c * q[j];
      }
    }
    return r;
  }

  /// ||residual(v)|| / ||v||; zero for the zero vector.
  Real residual_ratio(const Vec<S>& v) const {
    const Real nv = norm2<S>(v.entries());
    if (nv == 0) return 0;
    const auto r = residual(v.entries());
    return norm2<S>(std::span<const S>(r)) / nv;
  }

  bool is_dependent(const Vec<S>& v) const { return residual_ratio(v) < kDependencyTolerance; }

  SpanBasis extend(const Vec<S>& v) const {
    require_same_dim(v.size(), dim_, "SpanBasis extend");
    SpanBasis out = *this;
    out.generators_.push_back(v);
    const Real nv = norm2<S>(v.entries());
    std::vector<S> r = residual(v.entries());
    const Real nr = norm2<S>(std::span<const S>(r));
    if (nv == 0 || nr < kDependencyTolerance * nv || out.ortho_.size() == dim_) {
      out.dependent_.push_back(true);
      return out;
    }
    for (S& x : r) x /= nr;
    out.ortho_.emplace_back(std::move(r));
    out.dependent_.push_back(false);
    return out;
  }

 private:
  std::size_t dim_;
  std::vector<Vec<S>> generators_;
  std::vector<Vec<S>> ortho_;
  std::vector<bool> dependent_;
};

/// Orthogonal (l2) projection of e onto span(Y).
template <Field S>
Vec<S> project(const Vec<S>& e, const SpanBasis<S>& y) {
  const auto r = y.residual(e.entries());
  std::vector<S> p(e.data());
  for (std::size_t j = 0; j < p.size(); ++j) p[j] -= r[j];
  return Vec<S>(std::move(p));
}

namespace detail {

struct LpDistance {
  Real value = 0;
  std::vector<Real> coeffs;
};

// min_alpha || e - G alpha ||_p for p in {1, inf} over the reals, as an LP.
//   p = inf: minimize t   s.t. -t <= (e - G alpha)_j <= t
//   p = 1:   minimize sum s_j s.t. -s_j <= (e - G alpha)_j <= s_j
// alpha is split into nonnegative parts. Coordinates where every generator
// vanishes contribute a constant and are folded out of the LP.
inline LpDistance lp_distance(std::span<const Real> e, const std::vector<std::vector<Real>>& gens, bool linf) {
  const std::size_t n = e.size();
  const std::size_t r = gens.size();
  LpDistance out;
  out.coeffs.assign(r, 0.0);

  Real scale = 0;
  for (Real v : e) scale = std::max(scale, std::abs(v));
  for (const auto& g : gens) {
    for (Real v : g) scale = std::max(scale, std::abs(v));
  }
  if (scale == 0) return out;

  std::vector<std::size_t> active;
  Real constant = 0;
  for (std::size_t j = 0; j < n; ++j) {
    bool touched = false;
    for (std::size_t i = 0; i < r && !touched; ++i) touched = gens[i][j] != 0;
    if (touched) {
      active.push_back(j);
    } else if (linf) {
      constant = std::max(constant, std::abs(e[j]));
    } else {
      constant += std::abs(e[j]);
    }
  }
  if (active.empty() || r == 0) {
    Real v = constant;
    for (std::size_t j : active) v = linf ? std::max(v, std::abs(e[j])) : v + std::abs(e[j]);
    out.value = v;
    return out;
  }

  const std::size_t m = active.size();
  const std::size_t slack_vars = linf ? 1 : m;
  const std::size_t cols = 2 * r + slack_vars;
  std::vector<std::vector<Real>> a(2 * m, std::vector<Real>(cols, 0.0));
  std::vector<Real> b(2 * m);
  std::vector<Real> c(cols, 0.0);
  for (std::size_t k = 0; k < slack_vars; ++k) c[2 * r + k] = -1.0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = active[k];
    const std::size_t slack = 2 * r + (linf ? 0 : k);
    for (std::size_t i = 0; i < r; ++i) {
      const Real g = gens[i][j] / scale;
      a[2 * k][i] = g;
      a[2 * k][r + i] = -g;
      a[2 * k + 1][i] = -g;
      a[2 * k + 1][r + i] = g;
    }
    a[2 * k][slack] = -1.0;
    a[2 * k + 1][slack] = -1.0;
    b[2 * k] = e[j] / scale;
    b[2 * k + 1] = -e[j] / scale;
  }
  const lp::Solution sol = lp::maximize(a, b, c);
  if (sol.status != lp::Status::Optimal) fail(ErrorKind::SolverFailure, "distance LP did not reach optimality");

  // Report the exact norm of the residual at the LP's coefficients.
  Real value = constant;
  for (std::size_t j : active) {
    Real rj = e[j];
    for (std::size_t i = 0; i < r; ++i) rj -= (sol.x[i] - sol.x[r + i]) * gens[i][j];
    value = linf ? std::max(value, std::abs(rj)) : value + std::abs(rj);
  }
  for (std::size_t i = 0; i < r; ++i) out.coeffs[i] = sol.x[i] - sol.x[r + i];
  out.value = value;
  return out;
}

template <Field S>
std::vector<std::vector<S>> raw_generators(const std::vector<Vec<S>>& gens, std::span<const Real> factors) {
  std::vector<std::vector<S>> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    std::vector<S> v(g.data());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] *= factors[j];
    out.push_back(std::move(v));
  }
  return out;
}

template <Field S>
Real l2_least_squares_distance(std::span<const S> e, const std::vector<std::vector<S>>& gens) {
  using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  const auto n = static_cast<Eigen::Index>(e.size());
  if (gens.empty()) return norm2<S>(e);
  Matrix g(n, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (Eigen::Index j = 0; j < n; ++j) g(j, static_cast<Eigen::Index>(i)) = gens[i][j];
  }
  Vector rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) rhs(j) = e[j];
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(g);
  cod.setThreshold(kDependencyTolerance);
  const Vector alpha = cod.solve(rhs);
  // Recompute the residual against the original data; refine once.
  Vector resid = rhs - g * alpha;
  const Vector correction = cod.solve(resid);
  resid -= g * correction;
  std::vector<S> r(resid.data(), resid.data() + n);
  return norm2<S>(std::span<const S>(r));
}

// Non-Euclidean or weighted distance against an explicit generator list.
template <Field S>
Real general_distance(std::span<const S> e, const std::vector<std::vector<S>>& gens, const NormSpec& spec) {
  const Real p = spec.exponent();
  if (p == 2.0) return l2_least_squares_distance<S>(e, gens);
  if constexpr (!is_complex_v<S>) {
    if (p == 1.0 || std::isinf(p)) return lp_distance(e, gens, std::isinf(p)).value;
  }
  return lp_distance_descent<S>(e, gens, p).value;
}

template <Field S>
std::vector<S> scaled_entries(const Vec<S>& v, std::span<const Real> factors) {
  std::vector<S> out(v.data());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] *= factors[j];
  return out;
}

}  // namespace detail

template <Field S>
Real distance(const Vec<S>& e, const SpanBasis<S>& y, const NormSpec& spec = NormSpec::l2()) {
  require_same_dim(e.size(), y.dim(), "distance");
  spec.check_dim(e.size());
  if (y.rank() == 0) return norm(e, spec);
  if (spec.kind == NormSpec::Kind::L2 && !spec.weighted()) {
    const auto r = y.residual(e.entries());
    return norm2<S>(std::span<const S>(r));
  }
  const auto f = spec.coordinate_factors(e.size());
  // Weighted norms change geometry, so the l2-orthonormal basis no longer
  // yields the distance directly; it still spans the same space.
  const auto gens = detail::raw_generators<S>(y.ortho(), f);
  const auto es = detail::scaled_entries(e, f);
  return detail::general_distance<S>(std::span<const S>(es), gens, spec);
}

/// distance(e, Y.extend(v)) without building the extended basis for the
/// unweighted l2 case.
template <Field S>
Real distance_if_extended(const Vec<S>& e, const SpanBasis<S>& y, const Vec<S>& v,
                          const NormSpec& spec = NormSpec::l2()) {
  require_same_dim(e.size(), y.dim(), "distance_if_extended");
  require_same_dim(v.size(), y.dim(), "distance_if_extended");
  if (spec.kind != NormSpec::Kind::L2 || spec.weighted()) return distance(e, y.extend(v), spec);

  const auto re = y.residual(e.entries());
  const Real de = norm2<S>(std::span<const S>(re));
  const Real nv = norm2<S>(v.entries());
  auto rv = y.residual(v.entries());
  const Real nr = norm2<S>(std::span<const S>(rv));
  if (nv == 0 || nr < kDependencyTolerance * nv || y.rank() == y.dim()) return de;
  for (S& x : rv) x /= nr;
  // Reorthogonalize e's residual against the new direction as well.
  std::vector<S> r2 = re;
  for (int pass = 0; pass < 2; ++pass) {
    const S c = dot<S>(std::span<const S>(rv), std::span<const S>(r2));
    for (std::size_t j = 0; j < r2.size(); ++j) r2[j] -= c * rv[j];
  }
  return norm2<S>(std::span<const S>(r2));
}

/// Distance recomputed from scratch with no incremental state: a complete
/// orthogonal decomposition for l2 and the LP (or descent) on the raw
/// generators otherwise. Used as ground truth by verification.
template <Field S>
Real distance_batch_oracle(const Vec<S>& e, const std::vector<Vec<S>>& gens, const NormSpec& spec = NormSpec::l2()) {
  for (const auto& g : gens) require_same_dim(g.size(), e.size(), "distance_batch_oracle");
  spec.check_dim(e.size());
  const auto f = spec.coordinate_factors(e.size());
  const auto raw = detail::raw_generators<S>(gens, f);
  const auto es = detail::scaled_entries(e, f);
  return detail::general_distance<S>(std::span<const S>(es), raw, spec);
}

/// Distance via convex descent regardless of p; the independent check on
/// the LP route.
template <Field S>
DescentResult<S> distance_descent(const Vec<S>& e, const std::vector<Vec<S>>& gens, const NormSpec& spec,
                                  const DescentOptions& opts = {}) {
  for (const auto& g : gens) require_same_dim(g.size(), e.size(), "distance_descent");
  const auto f = spec.coordinate_factors(e.size());
  const auto raw = detail::raw_generators<S>(gens, f);
  const auto es = detail::scaled_entries(e, f);
  return lp_distance_descent<S>(std::span<const S>(es), raw, spec.exponent(), opts);
}

/// Best scalar multiple of u approximating y: min over c of ||y - c u||.
template <Field S>
std::pair<S, Real> best_multiple(const Vec<S>& y, const Vec<S>& u, const NormSpec& spec) {
  require_same_dim(y.size(), u.size(), "best_multiple");
  if (u.is_zero()) return {S{}, norm(y, spec)};
  if (spec.kind == NormSpec::Kind::L2 && !spec.weighted()) {
    const S c = dot<S>(u.entries(), y.entries()) / S(dot<S>(u.entries(), u.entries()));
    std::vector<S> r(y.data());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= c * u[j];
    return {c, norm2<S>(std::span<const S>(r))};
  }
  // Coordinates where both y and u vanish contribute nothing; drop them.
  const auto f = spec.coordinate_factors(y.size());
  std::vector<S> ys, us;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j] == S{} && u[j] == S{}) continue;
    ys.push_back(y[j] * f[j]);
    us.push_back(u[j] * f[j]);
  }
  const auto res = lp_distance_descent<S>(std::span<const S>(ys), {us}, spec.exponent());
  // The descent value is an upper bound; report the norm at its coefficient.
  const S c = res.coeffs.front();
  return {c, norm(y - c * u, spec)};
}

}  // namespace supercyclic

#endif  // SUPERCYCLIC_SUBSPACE_HPP_
