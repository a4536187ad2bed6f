#ifndef SUPERCYCLIC_OPERATORS_HPP_
#define SUPERCYCLIC_OPERATORS_HPP_

// Operator models on truncated sequence spaces and renormalized orbits.
//
// Shift boundary rule: the backward shift reads coordinate n+1, so the last
// output coordinate N-1 has no inflow and is set to zero. The forward shift
// drops whatever leaves past N-1. Both are exact while the active support
// stays inside the truncation.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "supercyclic/error.hpp"
#include "supercyclic/space.hpp"

namespace supercyclic {

template <Field S>
struct BackwardShift {
  /// w_0, w_1, ...; (B_w v)_n = w_{n+1} v_{n+1}. w_0 is never read.
  std::vector<S> weights;
  Real bound = 0;
  friend bool operator==(const BackwardShift&, const BackwardShift&) = default;
};

struct RolewiczMultiple {
  Real lambda = 2.0;
  friend bool operator==(const RolewiczMultiple&, const RolewiczMultiple&) = default;
};

struct ForwardShift {
  friend bool operator==(const ForwardShift&, const ForwardShift&) = default;
};

template <Field S>
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<S> entries;  // row-major n x n
  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;
};

template <Field S>
struct Diagonal {
  std::vector<S> d;
  friend bool operator==(const Diagonal&, const Diagonal&) = default;
};

template <Field S>
class OperatorSpec {
 public:
  using Variant = std::variant<BackwardShift<S>, RolewiczMultiple, ForwardShift, DenseMatrix<S>, Diagonal<S>>;

  static OperatorSpec backward_shift(std::vector<S> weights, std::optional<Real> bound = std::nullopt) {
    Real mx = 0;
    for (const S& w : weights) {
      if (!is_finite(w)) fail(ErrorKind::InvalidArgument, "BackwardShift: non-finite weight");
      mx = std::max(mx, std::abs(w));
    }
    const Real declared = bound.value_or(mx);
    if (mx > declared) fail(ErrorKind::InvalidArgument, "BackwardShift: weight exceeds declared bound");
    return OperatorSpec(BackwardShift<S>{std::move(weights), declared});
  }

  /// Weights w_n = c for every n.
  static OperatorSpec backward_shift_constant(std::size_t n, S c) {
    return backward_shift(std::vector<S>(n, c));
  }

  /// Weights w_n = n.
  static OperatorSpec backward_shift_linear(std::size_t n) {
    std::vector<S> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = S(static_cast<Real>(i));
    return backward_shift(std::move(w));
  }

  static OperatorSpec rolewicz(Real lambda) {
    if (!(lambda > 1.0) || !std::isfinite(lambda)) {
      fail(ErrorKind::InvalidArgument, "RolewiczMultiple: lambda must be a finite real > 1");
    }
    return OperatorSpec(RolewiczMultiple{lambda});
  }

  static OperatorSpec forward_shift() { return OperatorSpec(ForwardShift{}); }

  static OperatorSpec dense(std::size_t n, std::vector<S> entries) {
    if (entries.size() != n * n) fail(ErrorKind::DimensionMismatch, "DenseMatrix: expected n*n entries");
    for (const S& v : entries) {
      if (!is_finite(v)) fail(ErrorKind::InvalidArgument, "DenseMatrix: non-finite entry");
    }
    return OperatorSpec(DenseMatrix<S>{n, std::move(entries)});
  }

  static OperatorSpec identity(std::size_t n) {
    std::vector<S> e(n * n, S{});
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = S{1};
    return dense(n, std::move(e));
  }

  static OperatorSpec diagonal(std::vector<S> d) {
    for (const S& v : d) {
      if (!is_finite(v)) fail(ErrorKind::InvalidArgument, "Diagonal: non-finite entry");
    }
    return OperatorSpec(Diagonal<S>{std::move(d)});
  }

  const Variant& model() const noexcept { return model_; }

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;

 private:
  explicit OperatorSpec(Variant v) : model_(std::move(v)) {}
  Variant model_;
};

namespace detail {

template <Field S>
std::vector<S> apply_raw(const OperatorSpec<S>& op, std::span<const S> v) {
  const std::size_t n = v.size();
  std::vector<S> out(n, S{});
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, BackwardShift<S>>) {
          if (m.weights.size() < n) fail(ErrorKind::DimensionMismatch, "BackwardShift: fewer weights than dimension");
          for (std::size_t i = 0; i + 1 < n; ++i) out[i] = m.weights[i + 1] * v[i + 1];
        } else if constexpr (std::is_same_v<M, RolewiczMultiple>) {
          for (std::size_t i = 0; i + 1 < n; ++i) out[i] = S(m.lambda) * v[i + 1];
        } else if constexpr (std::is_same_v<M, ForwardShift>) {
          for (std::size_t i = 1; i < n; ++i) out[i] = v[i - 1];
        } else if constexpr (std::is_same_v<M, DenseMatrix<S>>) {
          require_same_dim(m.n, n, "DenseMatrix apply");
          for (std::size_t i = 0; i < n; ++i) {
            S acc{};
            for (std::size_t j = 0; j < n; ++j) acc += m.entries[i * n + j] * v[j];
            out[i] = acc;
          }
        } else {
          require_same_dim(m.d.size(), n, "Diagonal apply");
          for (std::size_t i = 0; i < n; ++i) out[i] = m.d[i] * v[i];
        }
      },
      op.model());
  return out;
}

}  // namespace detail

template <Field S>
Vec<S> apply_operator(const OperatorSpec<S>& op, const Vec<S>& v) {
  return Vec<S>(detail::apply_raw<S>(op, v.entries()));
}

/// T^n x stored as a unit direction (in the orbit's norm) and ln ||T^n x||.
template <Field S>
struct OrbitElement {
  std::size_t n = 0;
  Vec<S> direction;
  Real log_scale = 0;

  Vec<S> reconstruct() const { return S(std::exp(log_scale)) * direction; }
};

/// Lazily advancing orbit x, Tx, T^2x, ... with renormalization after every
/// application so that geometric growth never overflows.
template <Field S>
class OrbitCursor {
 public:
  OrbitCursor(OperatorSpec<S> op, const Vec<S>& x, NormSpec spec = NormSpec::l2())
      : op_(std::move(op)), spec_(std::move(spec)), direction_(x.size()) {
    const Real s = norm(x, spec_);
    if (s == 0) fail(ErrorKind::InvalidArgument, "orbit: starting vector is zero");
    direction_ = scaled(x.entries(), 1.0 / s);
    log_scale_ = std::log(s);
  }

  std::size_t n() const noexcept { return n_; }
  bool dead() const noexcept { return dead_; }

  /// Current element; only valid while !dead().
  OrbitElement<S> current() const { return {n_, direction_, log_scale_}; }

  /// Moves to n+1. Returns false (and marks the orbit dead) when T^{n+1}x = 0.
  bool advance() {
    if (dead_) return false;
    std::vector<S> next = detail::apply_raw<S>(op_, direction_.entries());
    const Real s = norm<S>(std::span<const S>(next), spec_);
    ++n_;
    if (s == 0) {
      dead_ = true;
      return false;
    }
    if (!std::isfinite(s)) fail(ErrorKind::SolverFailure, "orbit: non-finite norm after renormalization");
    direction_ = scaled(std::span<const S>(next), 1.0 / s);
    log_scale_ += std::log(s);
    return true;
  }

 private:
  static Vec<S> scaled(std::span<const S> v, Real f) {
    std::vector<S> out(v.begin(), v.end());
    for (S& x : out) x *= f;
    return Vec<S>(std::move(out));
  }

  OperatorSpec<S> op_;
  NormSpec spec_;
  Vec<S> direction_;
  Real log_scale_ = 0;
  std::size_t n_ = 0;
  bool dead_ = false;
};

template <Field S>
struct OrbitSegment {
  std::vector<OrbitElement<S>> elements;
  /// Set when T^n x = 0 for some n in range; the stream stops there.
  std::optional<std::size_t> zero_orbit_at;
};

template <Field S>
OrbitSegment<S> orbit_stream(const OperatorSpec<S>& op, const Vec<S>& x, std::size_t n_from, std::size_t n_to,
                             const NormSpec& spec = NormSpec::l2()) {
  if (n_from > n_to) fail(ErrorKind::InvalidArgument, "orbit_stream: n_from > n_to");
  if (x.is_zero()) fail(ErrorKind::InvalidArgument, "orbit_stream: x must be nonzero");
  OrbitSegment<S> seg;
  OrbitCursor<S> cur(op, x, spec);
  while (cur.n() < n_from) {
    if (!cur.advance()) {
      seg.zero_orbit_at = cur.n();
      return seg;
    }
  }
  while (true) {
    seg.elements.push_back(cur.current());
    if (cur.n() == n_to) break;
    if (!cur.advance()) {
      seg.zero_orbit_at = cur.n();
      break;
    }
  }
  return seg;
}

}  // namespace supercyclic

#endif  // SUPERCYCLIC_OPERATORS_HPP_
