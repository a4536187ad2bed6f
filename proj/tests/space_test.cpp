#include <gtest/gtest.h>

#include <random>

#include "supercyclic/space.hpp"

namespace supercyclic {
namespace {

TEST(Norm, SmallCases) {
  const Vec<Real> v{1.0, -2.0, 3.0};
  EXPECT_DOUBLE_EQ(norm(v, NormSpec::l1()), 6.0);
  EXPECT_DOUBLE_EQ(norm(v, NormSpec::linf()), 3.0);
  EXPECT_DOUBLE_EQ(norm(Vec<Real>{3.0, 4.0}, NormSpec::l2()), 5.0);
  EXPECT_EQ(norm(Vec<Real>(5), NormSpec::l1()), 0.0);
}

TEST(Norm, WeightedAndGeneralP) {
  const Vec<Real> v{1.0, -2.0};
  const auto w = NormSpec::l1().with_weights({2.0, 0.5});
  EXPECT_DOUBLE_EQ(norm(v, w), 3.0);
  EXPECT_NEAR(norm(v, NormSpec::lp(3.0)), std::cbrt(9.0), 1e-14);
  EXPECT_DOUBLE_EQ(norm(v, NormSpec::linf().with_weights({4.0, 1.0})), 4.0);
}

TEST(Norm, WeightLengthMismatch) {
  const Vec<Real> v{1.0, 2.0, 3.0};
  try {
    (void)norm(v, NormSpec::l2().with_weights({1.0, 1.0}));
    FAIL() << "expected DimensionMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(Norm, RejectsBadSpecs) {
  EXPECT_THROW(NormSpec::lp(1.0), Error);
  EXPECT_THROW(NormSpec::l2().with_weights({1.0, 0.0}), Error);
  EXPECT_THROW(Vec<Real>({1.0}), Error);
  EXPECT_THROW(Vec<Real>({1.0, std::nan("")}), Error);
}

TEST(Norm, ComplexModulus) {
  const Vec<Complex> v{Complex(3, 4), Complex(0, 0)};
  EXPECT_DOUBLE_EQ(norm(v, NormSpec::l1()), 5.0);
  EXPECT_DOUBLE_EQ(norm(v, NormSpec::l2()), 5.0);
}

TEST(Combine, Examples) {
  const auto e0 = Vec<Real>::unit(3, 0);
  EXPECT_EQ(combine<Real>({1.0}, {e0}), e0);
  EXPECT_EQ(combine<Real>({2.0, -1.0}, {e0, e0}), e0);
  EXPECT_TRUE(combine<Real>({0.0}, {Vec<Real>{1.0, 2.0, 3.0}}).is_zero());
}

TEST(Combine, Mismatches) {
  const auto a = Vec<Real>::unit(3, 0);
  const auto b = Vec<Real>::unit(4, 0);
  EXPECT_THROW(combine<Real>({1.0, 1.0}, {a, b}), Error);
  EXPECT_THROW(combine<Real>({1.0}, {a, a}), Error);
}

TEST(Embed, RejectsOverflowingSupport) {
  const Vec<Real> t{1.0, 0.0, 2.0, 0.0};
  EXPECT_EQ(embed(t, 3), (Vec<Real>{1.0, 0.0, 2.0}));
  EXPECT_THROW(embed(t, 2), Error);
}

// Homogeneity, triangle inequality and l_inf <= l_2 <= l_1 on random vectors.
TEST(NormProperties, Randomized) {
  std::mt19937_64 rng(7);
  std::normal_distribution<Real> g;
  std::uniform_int_distribution<int> dim(2, 40);
  const NormSpec specs[] = {NormSpec::l1(), NormSpec::l2(), NormSpec::linf(), NormSpec::lp(3.5), NormSpec::lp(1.3)};
  for (int trial = 0; trial < 300; ++trial) {
    const int n = dim(rng);
    std::vector<Real> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = g(rng);
      b[i] = g(rng);
    }
    const Vec<Real> u(a), v(b);
    const Real c = g(rng) * 10;
    for (const auto& s : specs) {
      EXPECT_NEAR(norm(c * u, s), std::abs(c) * norm(u, s), 1e-12 * std::abs(c) * norm(u, s));
      EXPECT_LE(norm(u + v, s), norm(u, s) + norm(v, s) + 1e-12 * (norm(u, s) + norm(v, s)));
    }
    const Real ninf = norm(u, NormSpec::linf()), n2 = norm(u, NormSpec::l2()), n1 = norm(u, NormSpec::l1());
    EXPECT_LE(ninf, n2 * (1 + 1e-12));
    EXPECT_LE(n2, n1 * (1 + 1e-12));
  }
}

}  // namespace
}  // namespace supercyclic
