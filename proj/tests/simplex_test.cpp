#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "supercyclic/simplex.hpp"

namespace supercyclic::lp {
namespace {

TEST(DenseSimplex, TextbookOptimum) {
  // max 3x + 2y; x + y <= 4, x + 3y <= 6, x <= 3  ->  (3, 1), value 11
  const auto sol = maximize({{1, 1}, {1, 3}, {1, 0}}, {4, 6, 3}, {3, 2});
  ASSERT_EQ(sol.status, Status::Optimal);
  EXPECT_NEAR(sol.objective, 11.0, 1e-12);
  EXPECT_NEAR(sol.x[0], 3.0, 1e-12);
  EXPECT_NEAR(sol.x[1], 1.0, 1e-12);
}

TEST(DenseSimplex, NegativeRightHandSideNeedsPhaseOne) {
  // max -x - y; -x - y <= -2 (x + y >= 2), x <= 5  -> value -2
  const auto sol = maximize({{-1, -1}, {1, 0}}, {-2, 5}, {-1, -1});
  ASSERT_EQ(sol.status, Status::Optimal);
  EXPECT_NEAR(sol.objective, -2.0, 1e-12);
}

TEST(DenseSimplex, InfeasibleAndUnbounded) {
  EXPECT_EQ(maximize({{1}}, {-1}, {1}).status, Status::Infeasible);
  EXPECT_EQ(maximize({{-1}}, {1}, {1}).status, Status::Unbounded);
}

TEST(DenseSimplex, KleeMinty) {
  const auto sol = maximize({{1, 0, 0}, {20, 1, 0}, {200, 20, 1}}, {1, 100, 10000}, {100, 10, 1});
  ASSERT_EQ(sol.status, Status::Optimal);
  EXPECT_NEAR(sol.objective, 10000.0, 1e-9);
}

TEST(DenseSimplex, DegenerateVertex) {
  // Three constraints active at the origin-adjacent optimum (1, 0).
  const auto sol = maximize({{1, 1}, {1, -1}, {1, 0}}, {1, 1, 1}, {1, 0});
  ASSERT_EQ(sol.status, Status::Optimal);
  EXPECT_NEAR(sol.objective, 1.0, 1e-12);
}

// Two-variable LPs against vertex enumeration: every optimum of a bounded
// feasible LP is attained at an intersection of two tight constraints
// (including x >= 0, y >= 0).
TEST(DenseSimplex, MatchesVertexEnumeration) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int m = 3 + trial % 5;
    std::vector<std::vector<double>> a(m, std::vector<double>(2));
    std::vector<double> b(m);
    for (int i = 0; i < m; ++i) {
      a[i] = {u(rng), u(rng)};
      b[i] = u(rng) + 1.5;
    }
    // Box rows keep the LP bounded.
    a.push_back({1, 0});
    b.push_back(4);
    a.push_back({0, 1});
    b.push_back(4);
    const std::vector<double> c{u(rng), u(rng)};

    std::vector<std::array<double, 3>> lines;  // a0 x + a1 y = b
    for (std::size_t i = 0; i < a.size(); ++i) lines.push_back({a[i][0], a[i][1], b[i]});
    lines.push_back({1, 0, 0});
    lines.push_back({0, 1, 0});
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        const double det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
        if (std::abs(det) < 1e-12) continue;
        const double x = (lines[i][2] * lines[j][1] - lines[i][1] * lines[j][2]) / det;
        const double y = (lines[i][0] * lines[j][2] - lines[i][2] * lines[j][0]) / det;
        bool ok = x >= -1e-9 && y >= -1e-9;
        for (std::size_t k = 0; k < a.size() && ok; ++k) ok = a[k][0] * x + a[k][1] * y <= b[k] + 1e-9;
        if (ok) best = std::max(best, c[0] * x + c[1] * y);
      }
    }
    const auto sol = maximize(a, b, c);
    if (std::isinf(best)) {
      EXPECT_EQ(sol.status, Status::Infeasible);
      continue;
    }
    ASSERT_EQ(sol.status, Status::Optimal);
    EXPECT_NEAR(sol.objective, best, 1e-8);
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

}  // namespace
}  // namespace supercyclic::lp
