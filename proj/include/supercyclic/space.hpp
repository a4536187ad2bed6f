#ifndef SUPERCYCLIC_SPACE_HPP_
#define SUPERCYCLIC_SPACE_HPP_

// Scalars, truncated vectors and weighted l^p norms.
//
// A Vec is a dense truncation of a sequence-space element to its first N
// coordinates. The truncation dimension is always explicit: operations on
// vectors of different dimension throw DimensionMismatch instead of padding.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "supercyclic/error.hpp"

namespace supercyclic {

using Real = double;
using Complex = std::complex<double>;

template <class S>
concept Field = std::same_as<S, Real> || std::same_as<S, Complex>;

template <Field S>
inline constexpr bool is_complex_v = std::same_as<S, Complex>;

inline bool is_finite(Real v) { return std::isfinite(v); }
inline bool is_finite(const Complex& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

inline Real conj(Real v) { return v; }
inline Complex conj(const Complex& v) { return std::conj(v); }

inline Real abs2(Real v) { return v * v; }
inline Real abs2(const Complex& v) { return std::norm(v); }

template <Field S>
class Vec {
 public:
  using value_type = S;

  /// Zero vector of dimension n.
  explicit Vec(std::size_t n) : entries_(n, S{}) { check_dim(); }

  explicit Vec(std::vector<S> entries) : entries_(std::move(entries)) {
    check_dim();
    for (const S& v : entries_) {
      if (!is_finite(v)) fail(ErrorKind::InvalidArgument, "Vec: non-finite entry");
    }
  }

  Vec(std::initializer_list<S> entries) : Vec(std::vector<S>(entries)) {}

  static Vec unit(std::size_t n, std::size_t index) {
    if (index >= n) fail(ErrorKind::DimensionMismatch, "Vec::unit: index outside truncation");
    std::vector<S> e(n, S{});
    e[index] = S{1};
    return Vec(std::move(e));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const S& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const S> entries() const noexcept { return entries_; }
  const std::vector<S>& data() const noexcept { return entries_; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const S& v) { return v == S{}; });
  }

  /// One past the last nonzero coordinate (0 for the zero vector).
  std::size_t support_length() const {
    for (std::size_t i = entries_.size(); i > 0; --i) {
      if (entries_[i - 1] != S{}) return i;
    }
    return 0;
  }

  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  void check_dim() const {
    if (entries_.size() < 2) fail(ErrorKind::InvalidArgument, "Vec: truncation dimension must be >= 2");
  }

  std::vector<S> entries_;
};

template <Field S>
std::ostream& operator<<(std::ostream& os, const Vec<S>& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os << ')';
}

template <Field S>
Vec<S> operator*(S c, const Vec<S>& v) {
  std::vector<S> out(v.data());
  for (S& x : out) x *= c;
  return Vec<S>(std::move(out));
}

template <Field S>
Vec<S> operator+(const Vec<S>& a, const Vec<S>& b) {
  require_same_dim(a.size(), b.size(), "Vec +");
  std::vector<S> out(a.data());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return Vec<S>(std::move(out));
}

template <Field S>
Vec<S> operator-(const Vec<S>& a, const Vec<S>& b) {
  require_same_dim(a.size(), b.size(), "Vec -");
  std::vector<S> out(a.data());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return Vec<S>(std::move(out));
}

/// Zero-extends a finitely supported vector into dimension n. Throws
/// TruncationTooSmall if the support does not fit.
template <Field S>
Vec<S> embed(const Vec<S>& v, std::size_t n) {
  const std::size_t len = v.support_length();
  if (len > n) {
    fail(ErrorKind::TruncationTooSmall,
         "embed: support length " + std::to_string(len) + " exceeds dimension " + std::to_string(n));
  }
  std::vector<S> out(n, S{});
  std::copy_n(v.data().begin(), len, out.begin());
  return Vec<S>(std::move(out));
}

/// Euclidean inner product <a, b> = sum conj(a_i) b_i.
template <Field S>
S dot(std::span<const S> a, std::span<const S> b) {
  S acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += conj(a[i]) * b[i];
  return acc;
}

template <Field S>
Real norm2(std::span<const S> a) {
  // Scaled accumulation so that tiny or huge entries neither underflow nor overflow.
  Real scale = 0;
  for (const S& v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0 || !std::isfinite(scale)) return scale;
  Real acc = 0;
  for (const S& v : a) acc += abs2(v / scale);
  return scale * std::sqrt(acc);
}

struct NormSpec {
  enum class Kind { L1, L2, LInf, P };

  Kind kind = Kind::L2;
  Real p = 2.0;  // meaningful for Kind::P only
  std::optional<std::vector<Real>> weights;

  static NormSpec l1() { return {Kind::L1, 1.0, std::nullopt}; }
  static NormSpec l2() { return {Kind::L2, 2.0, std::nullopt}; }
  static NormSpec linf() { return {Kind::LInf, std::numeric_limits<Real>::infinity(), std::nullopt}; }
  static NormSpec lp(Real p) {
    if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorKind::InvalidArgument, "NormSpec: p must be a finite real > 1");
    if (p == 2.0) return l2();
    return {Kind::P, p, std::nullopt};
  }

  NormSpec with_weights(std::vector<Real> w) const {
    for (Real x : w) {
      if (!(x > 0) || !std::isfinite(x)) fail(ErrorKind::InvalidArgument, "NormSpec: weights must be positive and finite");
    }
    NormSpec out = *this;
    out.weights = std::move(w);
    return out;
  }

  Real exponent() const {
    switch (kind) {
      case Kind::L1: return 1.0;
      case Kind::L2: return 2.0;
      case Kind::LInf: return std::numeric_limits<Real>::infinity();
      case Kind::P: return p;
    }
    return p;
  }

  bool weighted() const { return weights.has_value(); }

  void check_dim(std::size_t n) const {
    if (weights) require_same_dim(weights->size(), n, "NormSpec weights");
  }

  /// Per-coordinate factor f_j such that the weighted norm of v equals the
  /// unweighted norm of (f_j v_j): w_j^(1/p) for finite p, w_j for p = inf.
  std::vector<Real> coordinate_factors(std::size_t n) const {
    check_dim(n);
    std::vector<Real> f(n, 1.0);
    if (!weights) return f;
    for (std::size_t j = 0; j < n; ++j) {
      f[j] = kind == Kind::LInf ? (*weights)[j] : std::pow((*weights)[j], 1.0 / exponent());
    }
    return f;
  }

  friend bool operator==(const NormSpec&, const NormSpec&) = default;
};

/// Unweighted l^p norm of a raw coordinate span.
template <Field S>
Real lp_norm(std::span<const S> v, Real p) {
  if (p == 2.0) return norm2<S>(v);
  Real mx = 0;
  for (const S& x : v) mx = std::max(mx, std::abs(x));
  if (std::isinf(p) || mx == 0) return mx;
  if (p == 1.0) {
    Real acc = 0;
    for (const S& x : v) acc += std::abs(x);
    return acc;
  }
  Real acc = 0;
  for (const S& x : v) acc += std::pow(std::abs(x) / mx, p);
  return mx * std::pow(acc, 1.0 / p);
}

template <Field S>
Real norm(std::span<const S> v, const NormSpec& spec) {
  spec.check_dim(v.size());
  if (!spec.weights) return lp_norm<S>(v, spec.exponent());
  const auto f = spec.coordinate_factors(v.size());
  std::vector<S> scaled(v.begin(), v.end());
  for (std::size_t j = 0; j < scaled.size(); ++j) scaled[j] *= f[j];
  return lp_norm<S>(std::span<const S>(scaled), spec.exponent());
}

template <Field S>
Real norm(const Vec<S>& v, const NormSpec& spec = NormSpec::l2()) {
  return norm<S>(v.entries(), spec);
}

/// sum_i coeffs[i] * vecs[i]
template <Field S>
Vec<S> combine(std::span<const S> coeffs, std::span<const Vec<S>> vecs) {
  require_same_dim(coeffs.size(), vecs.size(), "combine: coefficient count");
  if (vecs.empty()) fail(ErrorKind::DimensionMismatch, "combine: empty combination has no dimension");
  const std::size_t n = vecs.front().size();
  std::vector<S> out(n, S{});
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    require_same_dim(vecs[i].size(), n, "combine");
    for (std::size_t j = 0; j < n; ++j) out[j] += coeffs[i] * vecs[i][j];
  }
  return Vec<S>(std::move(out));
}

template <Field S>
Vec<S> combine(const std::vector<S>& coeffs, const std::vector<Vec<S>>& vecs) {
  return combine<S>(std::span<const S>(coeffs), std::span<const Vec<S>>(vecs));
}

}  // namespace supercyclic

#endif  // SUPERCYCLIC_SPACE_HPP_
