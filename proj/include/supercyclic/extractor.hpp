#ifndef SUPERCYCLIC_EXTRACTOR_HPP_
#define SUPERCYCLIC_EXTRACTOR_HPP_

// Extraction of an index sequence 1 = n_1 < n_2 < ... < n_K whose orbit span
// stays at distance > theta from the (rescaled) vector x, and independent
// verification of the resulting certificate.
//
// The loop maintains Y_k = span{T^{n_1}x, ..., T^{n_k}x}. At each step the
// candidates n > n_k are scanned in increasing order and the first one that
// grows the span while keeping dist(x, Y_k + span{T^n x}) > theta is taken.
// Spans are scale invariant, so candidates are unit orbit directions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supercyclic/error.hpp"
#include "supercyclic/operators.hpp"
#include "supercyclic/parallel.hpp"
#include "supercyclic/space.hpp"
#include "supercyclic/subspace.hpp"

namespace supercyclic {

struct ExtractionConfig {
  Real theta = 1.0;
  Real margin = 0.5;
  std::size_t horizon = 0;
  std::size_t max_steps = 1;
  NormSpec norm_spec = NormSpec::l2();
  Real strict_tol = 1e-9;
  /// Refuse to run unless max_steps <= N / 8.
  bool enforce_safety_ratio = true;
  unsigned threads = 1;
  /// Candidates whose directions are generated before each parallel scan.
  std::size_t chunk = 64;

  Real threshold() const { return theta + strict_tol; }

  void validate(std::size_t dim) const {
    if (!(theta >= 1.0) || !std::isfinite(theta)) fail(ErrorKind::InvalidArgument, "ExtractionConfig: theta must be >= 1");
    if (!(margin > 0) || !std::isfinite(margin)) fail(ErrorKind::InvalidArgument, "ExtractionConfig: margin must be > 0");
    if (max_steps < 1) fail(ErrorKind::InvalidArgument, "ExtractionConfig: max_steps must be >= 1");
    if (horizon <= max_steps) fail(ErrorKind::InvalidArgument, "ExtractionConfig: horizon must exceed max_steps");
    if (!(strict_tol >= 0)) fail(ErrorKind::InvalidArgument, "ExtractionConfig: strict_tol must be >= 0");
    if (chunk == 0) fail(ErrorKind::InvalidArgument, "ExtractionConfig: chunk must be positive");
    if (enforce_safety_ratio && max_steps > dim / 8) {
      fail(ErrorKind::InvalidArgument, "ExtractionConfig: max_steps " + std::to_string(max_steps) +
                                           " exceeds dimension/8 = " + std::to_string(dim / 8) +
                                           " (disable the safety ratio to override)");
    }
    norm_spec.check_dim(dim);
  }
};

template <Field S>
struct Certificate {
  Vec<S> scaled_x;
  Real lambda_scale = 1;
  OperatorSpec<S> op;
  std::vector<std::size_t> indices;
  std::vector<Real> distances;
  Real theta = 1;
  NormSpec norm_spec;
};

/// Orbit directions generated on demand and kept for reuse across steps.
template <Field S>
class OrbitCache {
 public:
  OrbitCache(const OperatorSpec<S>& op, const Vec<S>& x, const NormSpec& spec) : cursor_(op, x, spec) {
    elements_.push_back(cursor_.current());
  }

  /// Orbit element at n, or nullptr if T^n x = 0.
  const OrbitElement<S>* at(std::size_t n) {
    while (elements_.size() <= n) {
      if (!cursor_.advance()) return nullptr;
      elements_.push_back(cursor_.current());
    }
    return &elements_[n];
  }

  std::optional<std::size_t> zero_at() const {
    if (cursor_.dead()) return cursor_.n();
    return std::nullopt;
  }

 private:
  OrbitCursor<S> cursor_;
  std::deque<OrbitElement<S>> elements_;  // stable addresses across growth
};

template <Field S>
struct RescaledVector {
  Real lambda = 1;
  Vec<S> x;
};

/// x' = lambda x with lambda = (1 + margin) / min(||x||, dist(x, span{Tx})),
/// so that both ||x'|| and dist(x', span{Tx'}) are at least 1 + margin.
template <Field S>
RescaledVector<S> rescale_for_extraction(const Vec<S>& x, const OperatorSpec<S>& op, const NormSpec& spec,
                                         Real margin) {
  if (x.is_zero()) fail(ErrorKind::InvalidArgument, "rescale: x must be nonzero");
  if (!(margin > 0)) fail(ErrorKind::InvalidArgument, "rescale: margin must be > 0");
  const Vec<S> tx = apply_operator(op, x);
  const SpanBasis<S> y = SpanBasis<S>(x.size()).extend(tx);
  if (y.rank() == 0 || y.residual_ratio(x) < kDependencyTolerance) {
    fail(ErrorKind::LinearDependence, "rescale: x and Tx are linearly dependent");
  }
  const Real nx = norm(x, spec);
  const Real dx = distance(x, y, spec);
  const Real lambda = (1.0 + margin) / std::min(nx, dx);
  return {lambda, S(lambda) * x};
}

template <Field S>
struct IndexChoice {
  std::size_t n = 0;
  Real distance = 0;
};

namespace detail {

template <Field S>
std::optional<Real> candidate_distance(const Vec<S>& e, const SpanBasis<S>& y, const Vec<S>& u,
                                       const ExtractionConfig& cfg) {
  // A dependent candidate leaves the span unchanged, so it cannot be the
  // next independent direction of the sequence.
  if (y.is_dependent(u)) return std::nullopt;
  const Real d = distance_if_extended(e, y, u, cfg.norm_spec);
  if (d > cfg.threshold()) return d;
  return std::nullopt;
}

template <Field S>
IndexChoice<S> scan_next_index(const Vec<S>& e, const SpanBasis<S>& y, OrbitCache<S>& orbit, std::size_t n_start,
                               const ExtractionConfig& cfg) {
  std::size_t lo = n_start + 1;
  while (lo <= cfg.horizon) {
    const std::size_t hi = std::min(cfg.horizon, lo + cfg.chunk - 1);
    std::vector<const OrbitElement<S>*> block;
    for (std::size_t n = lo; n <= hi; ++n) {
      const OrbitElement<S>* el = orbit.at(n);
      if (el == nullptr) break;
      block.push_back(el);
    }
    auto hit = first_qualifying(block.size(), cfg.threads,
                                [&](std::size_t i) { return candidate_distance(e, y, block[i]->direction, cfg); });
    if (hit) return {lo + hit->first, hit->second};
    if (block.size() < hi - lo + 1) {
      fail(ErrorKind::ZeroOrbit, "orbit vanished at n = " + std::to_string(lo + block.size()) +
                                     " before any candidate qualified");
    }
    lo = hi + 1;
  }
  fail(ErrorKind::HorizonExhausted, "no n in (" + std::to_string(n_start) + ", " + std::to_string(cfg.horizon) +
                                        "] keeps the distance above theta");
}

}  // namespace detail

/// Smallest n in (n_start, horizon] such that T^n x grows the span Y and
/// dist(e, Y + span{T^n x}) > theta + strict_tol.
template <Field S>
IndexChoice<S> find_next_index(const Vec<S>& e, const SpanBasis<S>& y, const OperatorSpec<S>& op, const Vec<S>& x,
                               std::size_t n_start, const ExtractionConfig& cfg) {
  require_same_dim(e.size(), y.dim(), "find_next_index");
  require_same_dim(x.size(), y.dim(), "find_next_index");
  if (distance(e, y, cfg.norm_spec) <= cfg.threshold()) {
    fail(ErrorKind::InvalidArgument, "find_next_index: requires dist(e, Y) > theta");
  }
  OrbitCache<S> orbit(op, x, cfg.norm_spec);
  return detail::scan_next_index(e, y, orbit, n_start, cfg);
}

template <Field S>
struct TargetedChoice {
  std::size_t n = 0;
  S c{};
  Real distance = 0;
  Real approximation_error = 0;
};

/// Smallest n in (n_start, horizon] passing the distance test of
/// find_next_index for which some c gives ||y - c T^n x|| < epsilon.
/// c = 0 is allowed.
template <Field S>
TargetedChoice<S> find_extension_with_target(const Vec<S>& e, const SpanBasis<S>& y, const OperatorSpec<S>& op,
                                             const Vec<S>& x, const Vec<S>& target, Real epsilon,
                                             std::size_t n_start, const ExtractionConfig& cfg) {
  require_same_dim(e.size(), y.dim(), "find_extension_with_target");
  require_same_dim(x.size(), y.dim(), "find_extension_with_target");
  require_same_dim(target.size(), y.dim(), "find_extension_with_target");
  if (!(epsilon > 0)) fail(ErrorKind::InvalidArgument, "find_extension_with_target: epsilon must be > 0");
  if (y.residual_ratio(target) > 1e-8) {
    fail(ErrorKind::InvalidArgument, "find_extension_with_target: target must lie in span(Y)");
  }
  if (distance(e, y, cfg.norm_spec) <= cfg.threshold()) {
    fail(ErrorKind::InvalidArgument, "find_extension_with_target: requires dist(e, Y) > theta");
  }

  OrbitCache<S> orbit(op, x, cfg.norm_spec);
  bool any_distance_pass = false;
  for (std::size_t n = n_start + 1; n <= cfg.horizon; ++n) {
    const OrbitElement<S>* el = orbit.at(n);
    if (el == nullptr) {
      if (any_distance_pass) break;
      fail(ErrorKind::ZeroOrbit, "orbit vanished at n = " + std::to_string(n) + " before any candidate qualified");
    }
    const auto d = detail::candidate_distance(e, y, el->direction, cfg);
    if (!d) continue;
    any_distance_pass = true;
    const auto [c_unit, err] = best_multiple(target, el->direction, cfg.norm_spec);
    if (err < epsilon) return {n, c_unit * S(std::exp(-el->log_scale)), *d, err};
  }
  if (any_distance_pass) {
    fail(ErrorKind::ApproximationInfeasible, "no candidate within the horizon approximates the target to epsilon");
  }
  fail(ErrorKind::HorizonExhausted, "no candidate within the horizon keeps the distance above theta");
}

/// Runs the full induction: rescale, n_1 = 1, then max_steps - 1 greedy
/// extensions. Errors carry the step index at which they occurred.
template <Field S>
Certificate<S> extract_subsequence(const OperatorSpec<S>& op, const Vec<S>& x, const ExtractionConfig& cfg) {
  cfg.validate(x.size());
  int step = 1;
  try {
    const RescaledVector<S> scaled = rescale_for_extraction(x, op, cfg.norm_spec, cfg.margin);
    const Vec<S>& xs = scaled.x;
    OrbitCache<S> orbit(op, xs, cfg.norm_spec);
    const OrbitElement<S>* first = orbit.at(1);
    if (first == nullptr) fail(ErrorKind::ZeroOrbit, "Tx = 0");

    SpanBasis<S> y = SpanBasis<S>(xs.size()).extend(first->direction);
    Certificate<S> cert{xs, scaled.lambda, op, {1}, {distance(xs, y, cfg.norm_spec)}, cfg.theta, cfg.norm_spec};
    if (cert.distances.front() <= cfg.threshold()) {
      fail(ErrorKind::InvalidArgument, "dist(x', span{Tx'}) does not exceed theta; increase the margin");
    }

    for (step = 2; static_cast<std::size_t>(step) <= cfg.max_steps; ++step) {
      const IndexChoice<S> choice = detail::scan_next_index(xs, y, orbit, cert.indices.back(), cfg);
      y = y.extend(orbit.at(choice.n)->direction);
      cert.indices.push_back(choice.n);
      cert.distances.push_back(distance(xs, y, cfg.norm_spec));
    }
    return cert;
  } catch (const Error& err) {
    if (err.step()) throw;
    throw err.with_step(step);
  }
}

enum class VerifyCheck { None, WellFormed, Ordering, Agreement, Threshold };

inline std::string_view to_string(VerifyCheck c) {
  switch (c) {
    case VerifyCheck::None: return "none";
    case VerifyCheck::WellFormed: return "well-formed";
    case VerifyCheck::Ordering: return "ordering";
    case VerifyCheck::Agreement: return "agreement";
    case VerifyCheck::Threshold: return "threshold";
  }
  return "unknown";
}

struct VerificationReport {
  bool passed = false;
  VerifyCheck failed_check = VerifyCheck::None;
  std::string message;
  Real max_relative_deviation = 0;
  std::vector<Real> recomputed;
};

inline constexpr Real kVerifyAgreementTolerance = 1e-8;

/// Recomputes everything from x_original and the operator: the scaled
/// vector, the orbit directions at the certified indices (fresh iteration,
/// l2 renormalization), and every prefix distance through the batch oracle.
/// Checks in order: well-formed, ordering (strictly increasing, n_1 = 1),
/// agreement (relative 1e-8), threshold (each d_k > theta). Never throws for
/// a malformed certificate.
template <Field S>
VerificationReport verify_certificate(const Certificate<S>& cert, const OperatorSpec<S>& op,
                                      const Vec<S>& x_original) {
  VerificationReport rep;
  auto reject = [&](VerifyCheck c, std::string msg) {
    rep.passed = false;
    rep.failed_check = c;
    rep.message = std::move(msg);
    return rep;
  };

  const std::size_t dim = x_original.size();
  if (cert.indices.empty()) return reject(VerifyCheck::WellFormed, "no indices");
  if (cert.indices.size() != cert.distances.size()) return reject(VerifyCheck::WellFormed, "indices/distances length mismatch");
  if (cert.scaled_x.size() != dim) return reject(VerifyCheck::WellFormed, "scaled vector dimension differs from x");
  if (cert.norm_spec.weights && cert.norm_spec.weights->size() != dim) {
    return reject(VerifyCheck::WellFormed, "norm weights dimension differs from x");
  }
  if (!(cert.lambda_scale > 0) || !std::isfinite(cert.lambda_scale)) {
    return reject(VerifyCheck::WellFormed, "lambdaScale must be positive and finite");
  }
  if (!(cert.theta >= 1.0)) return reject(VerifyCheck::WellFormed, "theta must be >= 1");

  if (cert.indices.front() != 1) return reject(VerifyCheck::Ordering, "n_1 must be 1");
  for (std::size_t k = 1; k < cert.indices.size(); ++k) {
    if (cert.indices[k] <= cert.indices[k - 1]) {
      return reject(VerifyCheck::Ordering, "indices not strictly increasing at position " + std::to_string(k + 1));
    }
  }

  try {
    std::vector<S> xs(x_original.data());
    for (S& v : xs) v *= cert.lambda_scale;
    const Vec<S> x_scaled(std::move(xs));
    const Real xn = norm2<S>(x_scaled.entries());
    const Vec<S> diff = x_scaled - cert.scaled_x;
    const Real xdev = xn > 0 ? norm2<S>(diff.entries()) / xn : norm2<S>(diff.entries());
    rep.max_relative_deviation = xdev;
    if (xdev > kVerifyAgreementTolerance) {
      return reject(VerifyCheck::Agreement, "scaledX does not equal lambdaScale * x");
    }

    // Fresh orbit: plain iteration with l2 renormalization.
    std::vector<Vec<S>> directions;
    std::vector<S> cur(x_scaled.data());
    std::size_t next = 0;
    for (std::size_t n = 0; n <= cert.indices.back(); ++n) {
      if (n > 0) cur = detail::apply_raw<S>(op, std::span<const S>(cur));
      const Real s = norm2<S>(std::span<const S>(cur));
      if (s == 0) return reject(VerifyCheck::Agreement, "orbit vanishes at n = " + std::to_string(n));
      for (S& v : cur) v /= s;
      if (n == cert.indices[next]) {
        directions.emplace_back(cur);
        ++next;
      }
    }

    std::vector<Vec<S>> prefix;
    for (std::size_t k = 0; k < cert.indices.size(); ++k) {
      prefix.push_back(directions[k]);
      const Real d = distance_batch_oracle(x_scaled, prefix, cert.norm_spec);
      rep.recomputed.push_back(d);
      const Real dev = std::abs(d - cert.distances[k]) / std::max(std::abs(d), 1e-300);
      rep.max_relative_deviation = std::max(rep.max_relative_deviation, dev);
    }
    for (std::size_t k = 0; k < cert.indices.size(); ++k) {
      const Real dev = std::abs(rep.recomputed[k] - cert.distances[k]) / std::max(std::abs(rep.recomputed[k]), 1e-300);
      if (!(dev <= kVerifyAgreementTolerance)) {
        return reject(VerifyCheck::Agreement, "distance d_" + std::to_string(k + 1) + " deviates by " +
                                                  std::to_string(dev) + " (relative)");
      }
    }
    for (std::size_t k = 0; k < cert.indices.size(); ++k) {
      if (!(rep.recomputed[k] > cert.theta) || !(cert.distances[k] > cert.theta)) {
        return reject(VerifyCheck::Threshold, "d_" + std::to_string(k + 1) + " does not exceed theta");
      }
    }
  } catch (const Error& err) {
    return reject(VerifyCheck::WellFormed, err.what());
  }

  rep.passed = true;
  rep.message = "x' lies outside the span of the selected orbit elements by more than theta";
  return rep;
}

}  // namespace supercyclic

#endif  // SUPERCYCLIC_EXTRACTOR_HPP_
