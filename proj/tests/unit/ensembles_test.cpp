#include <gtest/gtest.h>

#include "mklab/ensembles.hpp"
#include "mklab/experiment.hpp"

using mklab::ComplexMatrix;
using mklab::EnsembleFamily;
using mklab::EnsembleSpec;

namespace {

EnsembleSpec gue(int n, std::uint64_t seed = 1) {
  EnsembleSpec s;
  s.family = EnsembleFamily::gue;
  s.n = n;
  s.seed = seed;
  return s;
}

}  // namespace

TEST(HaarUnitary, IsUnitary) {
  mklab::Rng rng(1);
  const auto u = mklab::sample_haar_unitary(64, rng);
  EXPECT_LT((u * u.adjoint() - ComplexMatrix::Identity(64, 64)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HaarUnitary, OneByOneIsUniformPhase) {
  mklab::Rng rng(2);
  std::complex<double> sum = 0;
  for (int s = 0; s < 10000; ++s) {
    const auto u = mklab::sample_haar_unitary(1, rng);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-14);
    sum += u(0, 0);
  }
  EXPECT_LT(std::abs(sum / 10000.0), 0.05);
}

TEST(HaarUnitary, EntryMarginal) {
  mklab::Rng rng(3);
  mklab::RunningStats stats;
  for (int s = 0; s < 100000; ++s) stats.add(std::norm(mklab::sample_haar_unitary(8, rng)(0, 0)));
  EXPECT_LE(std::abs(stats.mean() - 1.0 / 8.0), 5 * stats.standard_error());
}

TEST(SampleMatrix, GueNormalisation) {
  const auto spec = gue(300);
  mklab::Rng rng(4);
  mklab::RunningStats m2;
  for (int t = 0; t < 100; ++t) {
    const auto x = mklab::sample_matrix(spec, rng);
    ASSERT_EQ((x - x.adjoint()).cwiseAbs().maxCoeff(), 0.0);
    m2.add((x * x).trace().real() / 300.0);
  }
  EXPECT_NEAR(m2.mean(), 1.0, 0.01);
}

TEST(SampleMatrix, ConstantSpectrumIsScaledIdentity) {
  EnsembleSpec spec;
  spec.family = EnsembleFamily::fixed_spectrum;
  spec.n = 7;
  spec.spectrum.assign(7, 1.0);
  mklab::Rng rng(5);
  EXPECT_EQ(mklab::sample_matrix(spec, rng), ComplexMatrix::Identity(7, 7));
}

TEST(SampleMatrix, FixedSpectrumIsPreserved) {
  EnsembleSpec spec;
  spec.family = EnsembleFamily::fixed_spectrum;
  spec.n = 5;
  spec.spectrum = {-2.0, 0.5, 0.5, 1.0, 3.0};
  mklab::Rng rng(6);
  const auto ev = mklab::eigen_hermitian(mklab::sample_matrix(spec, rng));
  for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], spec.spectrum[i], 1e-12);
}

TEST(SampleMatrix, WishartMeanTraceIsRatio) {
  EnsembleSpec spec;
  spec.family = EnsembleFamily::wishart;
  spec.n = 60;
  spec.ratio = 0.5;
  EXPECT_EQ(spec.wishart_columns(), 30);
  mklab::Rng rng(7);
  mklab::RunningStats m1;
  for (int t = 0; t < 200; ++t) {
    const auto x = mklab::sample_matrix(spec, rng);
    m1.add(x.trace().real() / spec.n);
  }
  EXPECT_LE(std::abs(m1.mean() - 0.5), 5 * m1.standard_error());
}

TEST(EnsembleSpec, Validation) {
  EXPECT_THROW(gue(1).validate(), std::invalid_argument);
  EnsembleSpec fixed;
  fixed.family = EnsembleFamily::fixed_spectrum;
  fixed.n = 3;
  fixed.spectrum = {1.0, 2.0};
  EXPECT_THROW(fixed.validate(), std::invalid_argument);
  EnsembleSpec wishart;
  wishart.family = EnsembleFamily::wishart;
  wishart.n = 10;
  wishart.ratio = 0.0;
  EXPECT_THROW(wishart.validate(), std::invalid_argument);
  wishart.ratio = 0.01;
  EXPECT_THROW(wishart.validate(), std::invalid_argument);  // M rounds to 0
  EXPECT_EQ(mklab::parse_ensemble_family("fixed"), EnsembleFamily::fixed_spectrum);
  EXPECT_EQ(mklab::to_string(EnsembleFamily::wishart), "wishart");
  EXPECT_THROW(mklab::parse_ensemble_family("goe"), std::invalid_argument);
}

TEST(PrincipalSubmatrix, DropsLastRowAndColumn) {
  ComplexMatrix x(3, 3);
  x << 1, 2, 3, 2, 5, 6, 3, 6, 9;
  ComplexMatrix expected(2, 2);
  expected << 1, 2, 2, 5;
  EXPECT_EQ(mklab::principal_submatrix(x), expected);
  ComplexMatrix two(2, 2);
  two << 4, 1, 1, 7;
  EXPECT_EQ(mklab::principal_submatrix(two)(0, 0), std::complex<double>(4.0));
  EXPECT_THROW(mklab::principal_submatrix(ComplexMatrix(1, 1)), std::invalid_argument);
}

TEST(Interlacing, Examples) {
  EXPECT_TRUE(mklab::check_interlacing(std::vector<double>{0, 2}, std::vector<double>{1}));
  EXPECT_FALSE(mklab::check_interlacing(std::vector<double>{0, 2}, std::vector<double>{3}));
  EXPECT_TRUE(mklab::check_interlacing(std::vector<double>{0, 2}, std::vector<double>{2.0 + 1e-9}));
  EXPECT_FALSE(mklab::check_interlacing(std::vector<double>{0, 2}, std::vector<double>{2.1}, 0.05));
  EXPECT_THROW(mklab::check_interlacing(std::vector<double>{0, 2}, std::vector<double>{1, 1}), std::invalid_argument);
}

TEST(SpectrumSample, DeterministicAndInterlaced) {
  const auto spec = gue(50, 123);
  const auto a = mklab::draw_spectrum_sample(spec, 4);
  const auto b = mklab::draw_spectrum_sample(spec, 4);
  EXPECT_EQ(a.lambda, b.lambda);
  EXPECT_EQ(a.lambda_tilde, b.lambda_tilde);
  EXPECT_EQ(a.seed_used, mklab::trial_seed(123, 4));
  EXPECT_NE(mklab::draw_spectrum_sample(spec, 5).lambda, a.lambda);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto s = mklab::draw_spectrum_sample(spec, t);
    EXPECT_TRUE(s.interlacing_ok);
    double trace_gap = 0;
    for (double x : s.lambda) trace_gap += x;
    for (double x : s.lambda_tilde) trace_gap -= x;
    EXPECT_NEAR(trace_gap, s.deleted_diagonal, 1e-10);
  }
}

TEST(TrialSeed, SplitsStreams) {
  EXPECT_EQ(mklab::trial_seed(1, 2), mklab::trial_seed(1, 2));
  EXPECT_NE(mklab::trial_seed(1, 2), mklab::trial_seed(1, 3));
  EXPECT_NE(mklab::trial_seed(1, 2), mklab::trial_seed(2, 2));
}
