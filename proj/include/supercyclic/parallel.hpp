#ifndef SUPERCYCLIC_PARALLEL_HPP_
#define SUPERCYCLIC_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace supercyclic {

/// Evaluates `eval(i)` for i in [0, count) and returns the smallest i whose
/// result is engaged, together with that result. With threads > 1 the
/// indices are split into contiguous stripes; every evaluation is
/// independent, so the reduction by smallest index gives the same answer as
/// a sequential scan.
template <class Eval>
auto first_qualifying(std::size_t count, unsigned threads, Eval&& eval)
    -> std::optional<std::pair<std::size_t, typename std::invoke_result_t<Eval&, std::size_t>::value_type>> {
  using Value = typename std::invoke_result_t<Eval&, std::size_t>::value_type;
  using Hit = std::pair<std::size_t, Value>;
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      if (auto v = eval(i)) return Hit{i, std::move(*v)};
    }
    return std::nullopt;
  }

  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::optional<Hit>> hits(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = count * w / workers;
        const std::size_t hi = count * (w + 1) / workers;
        try {
          for (std::size_t i = lo; i < hi; ++i) {
            if (auto v = eval(i)) {
              hits[w] = Hit{i, std::move(*v)};
              return;
            }
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  // A stripe's error only matters if no earlier stripe already qualified.
  for (std::size_t w = 0; w < workers; ++w) {
    if (hits[w]) return std::move(hits[w]);
    if (errors[w]) std::rethrow_exception(errors[w]);
  }
  return std::nullopt;
}

}  // namespace supercyclic

#endif  // SUPERCYCLIC_PARALLEL_HPP_
