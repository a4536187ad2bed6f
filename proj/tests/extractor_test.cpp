#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "supercyclic/dynamics.hpp"
#include "supercyclic/extractor.hpp"

namespace supercyclic {
namespace {

using V = Vec<Real>;
using Op = OperatorSpec<Real>;
using B = SpanBasis<Real>;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::InvalidArgument;
}

ExtractionConfig config(Real theta, std::size_t horizon, std::size_t steps) {
  ExtractionConfig cfg;
  cfg.theta = theta;
  cfg.horizon = horizon;
  cfg.max_steps = steps;
  return cfg;
}

TEST(Rescale, OrthogonalUnitCase) {
  const auto r = rescale_for_extraction(V::unit(8, 0), Op::forward_shift(), NormSpec::l2(), 0.5);
  EXPECT_DOUBLE_EQ(r.lambda, 1.5);
  EXPECT_EQ(r.x, 1.5 * V::unit(8, 0));
}

TEST(Rescale, ProjectionCase) {
  // <x,Tx>/||Tx||^2 = 0.5, residual norm^2 = 0.5 - 0.25 * 0.5 = 0.375.
  const V x{0.5, 0.5, 0.0, 0.0};
  const Real d = std::sqrt(0.375);
  const auto r = rescale_for_extraction(x, Op::forward_shift(), NormSpec::l2(), 0.5);
  EXPECT_NEAR(r.lambda, 1.5 / d, 1e-12);
  EXPECT_NEAR(r.lambda, 2.449, 1e-3);
  const B y = B(4).extend(apply_operator(Op::forward_shift(), r.x));
  EXPECT_GE(distance(r.x, y), 1.5 - 1e-12);
  EXPECT_GE(norm(r.x), 1.5 - 1e-12);
}

TEST(Rescale, IdentityIsDependent) {
  EXPECT_EQ(kind_of([] { rescale_for_extraction(V::unit(4, 0), Op::identity(4), NormSpec::l2(), 0.5); }),
            ErrorKind::LinearDependence);
}

TEST(FindNextIndex, OrthonormalOrbit) {
  const V e = 1.5 * V::unit(8, 0);
  const B y = B(8).extend(V::unit(8, 1));
  const auto c = find_next_index(e, y, Op::forward_shift(), e, 1, config(1.2, 8, 1));
  EXPECT_EQ(c.n, 2u);
  EXPECT_DOUBLE_EQ(c.distance, 1.5);
}

TEST(FindNextIndex, TwoDimensionsSaturate) {
  // Swap matrix: the orbit of e_0 alternates e_1, e_0. e_1 is already in Y,
  // e_0 fills the plane.
  const Op swap = Op::dense(2, {0.0, 1.0, 1.0, 0.0});
  const V e{2.0, 0.0};
  const B y = B(2).extend(V{0.0, 1.0});
  EXPECT_EQ(kind_of([&] { find_next_index(e, y, swap, V{1.0, 0.0}, 0, config(1.0, 6, 1)); }),
            ErrorKind::HorizonExhausted);
}

TEST(FindNextIndex, MatchesExhaustiveOracleScan) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    std::mt19937_64 rng(seed);
    const Op op = testing::random_dense(4, rng);
    const V x = testing::random_vec(4, rng);
    for (const NormSpec& spec : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
      ExtractionConfig cfg = config(1.0, 12, 1);
      cfg.norm_spec = spec;
      const Real scale = 3.0 / norm(x, spec);
      const V e = scale * x;
      const V tx = apply_operator(op, x);
      const B y = B(4).extend(tx);
      if (distance(e, y, spec) <= cfg.threshold()) continue;

      // Oracle: raw powers, batch distance, first n passing the test.
      std::optional<std::size_t> expected;
      V u = tx;
      for (std::size_t n = 2; n <= cfg.horizon && !expected; ++n) {
        u = apply_operator(op, u);
        u = (1.0 / norm(u)) * u;
        if (distance_batch_oracle(e, {tx, u}, spec) > cfg.threshold()) expected = n;
      }
      if (expected) {
        const auto got = find_next_index(e, y, op, x, 1, cfg);
        EXPECT_EQ(got.n, *expected) << "seed " << seed;
        ++checked;
      } else {
        EXPECT_EQ(kind_of([&] { find_next_index(e, y, op, x, 1, cfg); }), ErrorKind::HorizonExhausted);
      }
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(FindNextIndex, RequiresHypothesis) {
  const V e = V::unit(8, 0);
  const B y = B(8).extend(V::unit(8, 1));
  EXPECT_EQ(kind_of([&] { find_next_index(e, y, Op::forward_shift(), e, 1, config(1.0, 8, 1)); }),
            ErrorKind::InvalidArgument);
}

TEST(FindNextIndex, DeadOrbit) {
  const Op b = Op::backward_shift_constant(8, 1.0);
  const V e = 3.0 * V::unit(8, 5);
  const B y = B(8).extend(V::unit(8, 0)).extend(V::unit(8, 1));
  // Orbit of e_2: e_1 (n=1), e_0 (n=2), then zero; both already in Y.
  EXPECT_EQ(kind_of([&] { find_next_index(e, y, b, V::unit(8, 2), 0, config(1.0, 7, 1)); }), ErrorKind::ZeroOrbit);
}

TEST(FindExtensionWithTarget, ZeroTargetUsesZeroMultiple) {
  const V e = 1.5 * V::unit(8, 0);
  const B y = B(8).extend(V::unit(8, 1));
  const auto c = find_extension_with_target(e, y, Op::forward_shift(), e, V(8), 0.1, 1, config(1.2, 8, 1));
  EXPECT_EQ(c.n, 2u);
  EXPECT_EQ(c.c, 0.0);
  EXPECT_EQ(c.approximation_error, 0.0);
  EXPECT_DOUBLE_EQ(c.distance, 1.5);
}

TEST(FindExtensionWithTarget, OrthogonalTargetIsInfeasible) {
  // min_c ||e_1 - c e_n||^2 = 1 + c^2 for n >= 2, so the best error is 1.
  const V e = 1.5 * V::unit(8, 0);
  const B y = B(8).extend(V::unit(8, 1));
  EXPECT_EQ(kind_of([&] {
              find_extension_with_target(e, y, Op::forward_shift(), e, V::unit(8, 1), 0.1, 1, config(1.2, 8, 1));
            }),
            ErrorKind::ApproximationInfeasible);
  const auto c = find_extension_with_target(e, y, Op::forward_shift(), e, V::unit(8, 1), 1.1, 1, config(1.2, 8, 1));
  EXPECT_EQ(c.n, 2u);
  EXPECT_EQ(c.c, 0.0);
  EXPECT_DOUBLE_EQ(c.approximation_error, 1.0);
  EXPECT_DOUBLE_EQ(c.distance, 1.5);
}

TEST(FindExtensionWithTarget, ScalarMatters) {
  // Target 2 e_2 inside Y; orbit of 1.5 e_0 reaches e_2 at n = 2 with scale 1.5.
  const V e = 1.5 * V::unit(8, 0);
  const B y = B(8).extend(V::unit(8, 1)).extend(V::unit(8, 2));
  const Op rot = Op::dense(8, [] {
    std::vector<Real> m(64, 0.0);
    // e_0 -> e_2 -> e_3 -> ... cyclic on 2..7, e_1 fixed
    m[2 * 8 + 0] = 1;
    m[1 * 8 + 1] = 1;
    for (int i = 2; i < 7; ++i) m[(i + 1) * 8 + i] = 1;
    m[2 * 8 + 7] = 1;
    return m;
  }());
  // Candidate n = 1 is e_2: dependent on Y, skipped. n = 2 is e_3.
  const V target = 2.0 * V::unit(8, 2) + 0.5 * V::unit(8, 1);
  const auto c = find_extension_with_target(e, y, rot, e, target, 2.5, 0, config(1.2, 16, 1));
  EXPECT_EQ(c.n, 2u);
  // Best multiple of e_3 against a target orthogonal to it is zero.
  EXPECT_EQ(c.c, 0.0);
  EXPECT_NEAR(c.approximation_error, std::sqrt(4.25), 1e-12);
}

TEST(FindExtensionWithTarget, TargetOutsideSpanRejected) {
  const V e = 1.5 * V::unit(8, 0);
  const B y = B(8).extend(V::unit(8, 1));
  EXPECT_EQ(kind_of([&] {
              find_extension_with_target(e, y, Op::forward_shift(), e, V::unit(8, 3), 1.0, 1, config(1.2, 8, 1));
            }),
            ErrorKind::InvalidArgument);
}

TEST(Extract, ForwardShiftConsecutive) {
  const auto cert = extract_subsequence(Op::forward_shift(), V::unit(64, 0), config(1.2, 64, 8));
  EXPECT_EQ(cert.indices, (std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8}));
  for (Real d : cert.distances) EXPECT_NEAR(d, 1.5, 1e-12);
  EXPECT_DOUBLE_EQ(cert.lambda_scale, 1.5);
}

TEST(Extract, SingleStep) {
  const auto cert = extract_subsequence(Op::forward_shift(), V::unit(16, 0), config(1.0, 8, 1));
  EXPECT_EQ(cert.indices, std::vector<std::size_t>{1});
  ASSERT_EQ(cert.distances.size(), 1u);
  EXPECT_NEAR(cert.distances[0], 1.5, 1e-12);
}

TEST(Extract, SafetyRatio) {
  ExtractionConfig cfg = config(1.2, 64, 9);
  EXPECT_EQ(kind_of([&] { extract_subsequence(Op::forward_shift(), V::unit(64, 0), cfg); }),
            ErrorKind::InvalidArgument);
  cfg.enforce_safety_ratio = false;
  EXPECT_EQ(extract_subsequence(Op::forward_shift(), V::unit(64, 0), cfg).indices.size(), 9u);
}

TEST(Extract, FiniteDimensionExhausts) {
  std::mt19937_64 rng(5);
  const Op op = testing::random_orthogonal(8, rng);
  const V x = testing::random_vec(8, rng);
  ExtractionConfig cfg = config(1.0, 64, 16);
  cfg.enforce_safety_ratio = false;
  try {
    (void)extract_subsequence(op, x, cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HorizonExhausted);
    ASSERT_TRUE(e.step().has_value());
    EXPECT_LE(*e.step(), 9);
  }
}

TEST(Extract, RolewiczPipelineVerifies) {
  const auto ts = testing::eight_targets(256, 1e-3);
  const auto built = build_supercyclic_vector(2.0, ts, 256);
  const Op op = Op::rolewicz(2.0);
  const auto cert = extract_subsequence(op, built.x, config(1.01, 256, 8));
  EXPECT_EQ(cert.indices.size(), 8u);
  const auto rep = verify_certificate(cert, op, built.x);
  EXPECT_TRUE(rep.passed) << rep.message;
  EXPECT_LT(rep.max_relative_deviation, 1e-8);
}

TEST(Extract, NonEuclideanNorms) {
  std::mt19937_64 rng(17);
  const Op op = testing::random_orthogonal(32, rng);
  const V x = testing::random_vec(32, rng);
  for (const NormSpec& spec : {NormSpec::l1(), NormSpec::linf(), NormSpec::lp(3.0)}) {
    ExtractionConfig cfg = config(1.0, 64, 4);
    cfg.norm_spec = spec;
    const auto cert = extract_subsequence(op, x, cfg);
    const auto rep = verify_certificate(cert, op, x);
    EXPECT_TRUE(rep.passed) << rep.message;
  }
}

class VerifyTamper : public ::testing::Test {
 protected:
  Op op = Op::forward_shift();
  V x = V::unit(64, 0);
  Certificate<Real> cert = extract_subsequence(op, x, config(1.2, 64, 6));
};

TEST_F(VerifyTamper, GenuinePasses) {
  const auto rep = verify_certificate(cert, op, x);
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.failed_check, VerifyCheck::None);
  EXPECT_LT(rep.max_relative_deviation, 1e-8);
}

TEST_F(VerifyTamper, SwappedIndices) {
  std::swap(cert.indices[2], cert.indices[3]);
  const auto rep = verify_certificate(cert, op, x);
  EXPECT_FALSE(rep.passed);
  EXPECT_EQ(rep.failed_check, VerifyCheck::Ordering);
}

TEST_F(VerifyTamper, FirstIndexNotOne) {
  cert.indices[0] = 0;
  EXPECT_EQ(verify_certificate(cert, op, x).failed_check, VerifyCheck::Ordering);
}

TEST_F(VerifyTamper, EditedDistance) {
  cert.distances[4] = 1.1;
  const auto rep = verify_certificate(cert, op, x);
  EXPECT_FALSE(rep.passed);
  EXPECT_TRUE(rep.failed_check == VerifyCheck::Agreement || rep.failed_check == VerifyCheck::Threshold);
}

TEST_F(VerifyTamper, ThresholdRaised) {
  cert.theta = 2.0;
  EXPECT_EQ(verify_certificate(cert, op, x).failed_check, VerifyCheck::Threshold);
}

TEST_F(VerifyTamper, WrongScale) {
  cert.lambda_scale = 1.4;
  EXPECT_EQ(verify_certificate(cert, op, x).failed_check, VerifyCheck::Agreement);
}

TEST_F(VerifyTamper, Malformed) {
  cert.distances.pop_back();
  EXPECT_EQ(verify_certificate(cert, op, x).failed_check, VerifyCheck::WellFormed);
  EXPECT_EQ(verify_certificate(cert, op, V::unit(32, 0)).failed_check, VerifyCheck::WellFormed);
}

// Random orthogonal operators in dimension 32, K = 4.
Certificate<Real> random_certificate(std::uint64_t seed, Real c, unsigned threads, std::size_t chunk,
                                     V* x_out = nullptr, Op* op_out = nullptr) {
  std::mt19937_64 rng(seed);
  const Op op = testing::random_orthogonal(32, rng);
  const V x = testing::random_vec(32, rng);
  ExtractionConfig cfg = config(1.0, 96, 4);
  cfg.threads = threads;
  cfg.chunk = chunk;
  if (x_out) *x_out = x;
  if (op_out) *op_out = op;
  return extract_subsequence(op, c * x, cfg);
}

TEST(ExtractProperties, MonotoneLedger) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto cert = random_certificate(seed, 1.0, 1, 64);
    for (std::size_t k = 1; k < cert.distances.size(); ++k) {
      EXPECT_LE(cert.distances[k], cert.distances[k - 1] + 1e-12);
    }
  }
}

TEST(ExtractProperties, ScaleEquivariance) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = random_certificate(seed, 1.0, 1, 64);
    const auto b = random_certificate(seed, 3.0, 1, 64);
    EXPECT_EQ(a.indices, b.indices);
    EXPECT_NEAR(b.lambda_scale, a.lambda_scale / 3.0, 1e-12 * a.lambda_scale);
  }
}

TEST(ExtractProperties, ParallelMatchesSequential) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto a = random_certificate(seed, 1.0, 1, 64);
    const auto b = random_certificate(seed, 1.0, 4, 5);
    EXPECT_EQ(a.indices, b.indices);
    EXPECT_EQ(a.distances, b.distances);
    EXPECT_EQ(a.scaled_x, b.scaled_x);
  }
}

TEST(ExtractProperties, GreedyMinimality) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    V x(32);
    Op op = Op::forward_shift();
    const auto cert = random_certificate(seed, 1.0, 1, 64, &x, &op);
    const V xs = cert.lambda_scale * x;
    std::vector<V> powers{xs};
    for (std::size_t n = 1; n <= cert.indices.back(); ++n) {
      const V next = apply_operator(op, powers.back());
      powers.push_back((1.0 / norm(next)) * next);
    }
    std::vector<V> chosen{powers[1]};
    for (std::size_t k = 1; k < cert.indices.size(); ++k) {
      for (std::size_t n = cert.indices[k - 1] + 1; n < cert.indices[k]; ++n) {
        auto trial = chosen;
        trial.push_back(powers[n]);
        EXPECT_LE(distance_batch_oracle(xs, trial), cert.theta + 1e-9) << "seed " << seed << " n " << n;
      }
      chosen.push_back(powers[cert.indices[k]]);
    }
  }
}

}  // namespace
}  // namespace supercyclic
