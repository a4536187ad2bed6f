#ifndef SUPERCYCLIC_ERROR_HPP_
#define SUPERCYCLIC_ERROR_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace supercyclic {

enum class ErrorKind {
  DimensionMismatch,
  InvalidArgument,
  ZeroOrbit,
  SolverFailure,
  LinearDependence,
  HorizonExhausted,
  ApproximationInfeasible,
  TruncationTooSmall,
  EmptyTargets,
  UsageError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ZeroOrbit: return "ZeroOrbit";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::LinearDependence: return "LinearDependence";
    case ErrorKind::HorizonExhausted: return "HorizonExhausted";
    case ErrorKind::ApproximationInfeasible: return "ApproximationInfeasible";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::EmptyTargets: return "EmptyTargets";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `step()` is set when the error
/// surfaced inside the extraction loop (1-based step index k).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<int>& step() const noexcept { return step_; }

  Error with_step(int step) const {
    Error copy = *this;
    copy.step_ = step;
    return copy;
  }

 private:
  ErrorKind kind_;
  std::optional<int> step_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require_same_dim(std::size_t a, std::size_t b, std::string_view what) {
  if (a != b) {
    fail(ErrorKind::DimensionMismatch,
         std::string(what) + ": dimension " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace supercyclic

#endif  // SUPERCYCLIC_ERROR_HPP_
