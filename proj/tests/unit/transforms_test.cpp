#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "mklab/errors.hpp"
#include "mklab/transforms.hpp"

using mklab::FreeCumulantSequence;
using mklab::MomentSequence;
using mklab::Rational;
using mklab::SequenceKind;

namespace {

using Q = std::vector<Rational>;

Q ints(std::initializer_list<long> xs) {
  Q out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Rational product_over(const oracle::Blocks& blocks, const Q& seq) {
  Rational p(1);
  for (const auto& b : blocks) p *= seq[b.size() - 1];
  return p;
}

// M_k = sum over NC(k) of fc_rho, straight from the brute-force lattice.
Q brute_moments(const Q& fc) {
  Q m;
  for (int k = 1; k <= static_cast<int>(fc.size()); ++k) {
    Rational sum(0);
    for (const auto& rho : oracle::non_crossing_partitions(k)) sum += product_over(rho, fc);
    m.push_back(sum);
  }
  return m;
}

// fc_k = sum over NC(k) of M_nu mu(nu, 1_k), Moebius from below.
Q brute_cumulants(const Q& m) {
  Q fc;
  for (int k = 1; k <= static_cast<int>(m.size()); ++k) {
    oracle::MobiusFromBelow mu(k);
    oracle::Blocks top(1);
    for (int i = 1; i <= k; ++i) top[0].push_back(i);
    Rational sum(0);
    for (const auto& nu : oracle::non_crossing_partitions(k)) sum += product_over(nu, m) * mu(nu, top);
    fc.push_back(sum);
  }
  return fc;
}

Q semicircle_cumulants(int order) {
  Q fc(static_cast<std::size_t>(order), Rational(0));
  if (order >= 2) fc[1] = 1;
  return fc;
}

}  // namespace

TEST(MomentsToCumulants, PointMass) {
  for (long a : {2L, -1L}) {
    const Q m = ints({a, a * a, a * a * a, a * a * a * a});
    const auto fc = mklab::moments_to_cumulants(MomentSequence<Rational>(SequenceKind::transition, m));
    EXPECT_EQ(fc.values(), ints({a, 0, 0, 0}));
    EXPECT_EQ(fc.values(), brute_cumulants(m));
  }
}

TEST(MomentsToCumulants, Semicircle) {
  const Q m = ints({0, 1, 0, 2, 0, 5});
  const auto fc = mklab::moments_to_cumulants(MomentSequence<Rational>(SequenceKind::transition, m));
  EXPECT_EQ(fc.values(), ints({0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(fc.values(), brute_cumulants(m));
}

TEST(MomentsToCumulants, ZeroAndRandomAgainstBruteForce) {
  const Q zero(5, Rational(0));
  EXPECT_EQ(mklab::moments_to_cumulants(MomentSequence<Rational>(SequenceKind::raw, zero)).values(), zero);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Q m = oracle::random_rationals(rng, 6);
    EXPECT_EQ(mklab::moments_to_cumulants(MomentSequence<Rational>(SequenceKind::raw, m)).values(),
              brute_cumulants(m));
  }
}

TEST(CumulantsToMoments, Examples) {
  const auto m = mklab::cumulants_to_moments(FreeCumulantSequence<Rational>(semicircle_cumulants(6)));
  EXPECT_EQ(m.values(), ints({0, 1, 0, 2, 0, 5}));
  EXPECT_EQ(m.kind(), SequenceKind::transition);

  const auto point = mklab::cumulants_to_moments(FreeCumulantSequence<Rational>(ints({3, 0, 0, 0, 0})));
  EXPECT_EQ(point.values(), ints({3, 9, 27, 81, 243}));
  EXPECT_EQ(point.values(), brute_moments(ints({3, 0, 0, 0, 0})));

  const Q zero(4, Rational(0));
  EXPECT_EQ(mklab::cumulants_to_moments(FreeCumulantSequence<Rational>(zero)).values(), zero);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const Q fc = oracle::random_rationals(rng, 7);
    EXPECT_EQ(mklab::cumulants_to_moments(FreeCumulantSequence<Rational>(fc)).values(), brute_moments(fc));
  }
}

TEST(MarkovKrein, ForwardExamples) {
  const auto tau = mklab::mk_forward(MomentSequence<Rational>(SequenceKind::transition, ints({0, 1, 0, 2, 0, 5})));
  EXPECT_EQ(tau.values(), ints({0, 2, 0, 6, 0, 20}));
  EXPECT_EQ(tau.kind(), SequenceKind::rayleigh);
  const Q delta = ints({-2, 4, -8, 16});
  EXPECT_EQ(mklab::mk_forward(MomentSequence<Rational>(SequenceKind::transition, delta)).values(), delta);
  const Q zero(3, Rational(0));
  EXPECT_EQ(mklab::mk_forward(MomentSequence<Rational>(SequenceKind::transition, zero)).values(), zero);
}

TEST(MarkovKrein, InverseExamples) {
  EXPECT_EQ(mklab::mk_inverse(MomentSequence<Rational>(SequenceKind::rayleigh, ints({0, 2, 0, 6, 0, 20}))).values(),
            ints({0, 1, 0, 2, 0, 5}));
  const Q delta = ints({5, 25, 125});
  EXPECT_EQ(mklab::mk_inverse(MomentSequence<Rational>(SequenceKind::rayleigh, delta)).values(), delta);
}

TEST(RoundTrips, ExactOnRandomSequences) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Q values = oracle::random_rationals(rng, 8);
    const MomentSequence<Rational> m(SequenceKind::transition, values);
    ASSERT_EQ(mklab::mk_inverse(mklab::mk_forward(m)).values(), values);
    ASSERT_EQ(mklab::mk_forward(mklab::mk_inverse(m)).values(), values);
    ASSERT_EQ(mklab::cumulants_to_moments(mklab::moments_to_cumulants(m)).values(), values);
    ASSERT_EQ(mklab::moments_to_cumulants(mklab::cumulants_to_moments(FreeCumulantSequence<Rational>(values))).values(),
              values);
  }
}

TEST(ClosedForm, Examples) {
  const FreeCumulantSequence<Rational> semi(semicircle_cumulants(6));
  EXPECT_EQ(mklab::thm12_sum(semi, 2), 2);
  EXPECT_EQ(mklab::thm12_sum(semi, 4), 6);
  EXPECT_EQ(mklab::thm12_sum(semi, 6), 20);
  const FreeCumulantSequence<Rational> point(ints({-3, 0, 0, 0, 0}));
  for (int k = 1; k <= 5; ++k) {
    Rational expected(1);
    for (int j = 0; j < k; ++j) expected *= -3;
    EXPECT_EQ(mklab::thm12_sum(point, k), expected);
  }
}

TEST(ClosedForm, EqualsRecursionOnRandomSequences) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const FreeCumulantSequence<Rational> fc(oracle::random_rationals(rng, 8));
    const auto tau = mklab::mk_forward(mklab::cumulants_to_moments(fc));
    for (int k = 1; k <= 8; ++k) ASSERT_EQ(mklab::thm12_sum(fc, k), tau[k]) << "k=" << k;
  }
}

TEST(ClosedForm, DecompositionCountForm) {
  // sum_rho (|rho| - 1) fc_rho = sum_{r<k} M_r(tau) M_{k-r}(m)
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const FreeCumulantSequence<Rational> fc(oracle::random_rationals(rng, 8));
    const auto m = mklab::cumulants_to_moments(fc);
    const auto tau = mklab::mk_forward(m);
    for (int k = 1; k <= 8; ++k) {
      Rational lhs(0);
      for (const auto& rho : mklab::enumerate_nc(k)) lhs += Rational(static_cast<long>(rho.block_count()) - 1) * fc.over_blocks(rho);
      Rational rhs(0);
      for (int r = 1; r < k; ++r) rhs += tau[r] * m[k - r];
      ASSERT_EQ(lhs, rhs) << "k=" << k;
    }
  }
}

TEST(ClosedForm, Limits) {
  const FreeCumulantSequence<Rational> fc(Q(11, Rational(1)));
  EXPECT_THROW(mklab::thm12_sum(fc, 11), mklab::SizeLimitError);
  EXPECT_THROW(mklab::thm12_sum(FreeCumulantSequence<Rational>(Q(3, Rational(1))), 4), std::out_of_range);
  EXPECT_THROW(mklab::thm12_sum(fc, 0), std::out_of_range);
}

TEST(Prediction, Examples) {
  const FreeCumulantSequence<Rational> semi(semicircle_cumulants(6));
  EXPECT_EQ(mklab::thm31_prediction(semi, 2, 1), 2);
  EXPECT_EQ(mklab::thm31_prediction(semi, 2, 2), 4);
  EXPECT_EQ(mklab::thm31_prediction(semi, 6, 1), 20);
  EXPECT_EQ(mklab::thm31_prediction(semi, 3, 2), 0);
  EXPECT_THROW(mklab::thm31_prediction(semi, 2, 3), std::invalid_argument);
  EXPECT_THROW(mklab::thm31_prediction(FreeCumulantSequence<Rational>(Q(9, Rational(1))), 9, 1), mklab::SizeLimitError);
}

TEST(Prediction, FirstOrderIsClosedFormAndSecondFactorizes) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const FreeCumulantSequence<Rational> fc(oracle::random_rationals(rng, 6));
    for (int k = 1; k <= 6; ++k) {
      const Rational first = mklab::thm31_prediction(fc, k, 1);
      ASSERT_EQ(first, mklab::thm12_sum(fc, k));
      ASSERT_EQ(mklab::thm31_prediction(fc, k, 2), first * first);
    }
  }
}

TEST(Prediction, FloatingPathTracksExactPath) {
  std::mt19937_64 rng(37);
  const Q exact = oracle::random_rationals(rng, 6);
  std::vector<double> approx;
  for (const auto& q : exact) approx.push_back(q.get_d());
  for (int k = 1; k <= 6; ++k) {
    const double e = mklab::thm31_prediction(FreeCumulantSequence<Rational>(exact), k, 2).get_d();
    EXPECT_NEAR(mklab::thm31_prediction(FreeCumulantSequence<double>(approx), k, 2), e, 1e-9 * (1 + std::abs(e)));
  }
}

TEST(Sequences, BlockAndCycleProducts) {
  const FreeCumulantSequence<Rational> fc(ints({2, 3, 5, 7}));
  const auto rho = mklab::NonCrossingPartition::parse("{1,4|2,3}");
  EXPECT_EQ(fc.over_blocks(rho), 9);
  EXPECT_EQ(fc.over_cycles(mklab::Permutation::from_cycles(4, {{1, 2, 3}})), 5 * 2);
  EXPECT_EQ(fc[4], 7);
  EXPECT_THROW(fc[5], std::out_of_range);
  EXPECT_THROW(fc[0], std::out_of_range);
  EXPECT_THROW(FreeCumulantSequence<Rational>(Q{}), std::invalid_argument);
}

TEST(Sequences, ShapeTablesCoverLattice) {
  for (int k = 1; k <= 10; ++k) {
    long total = 0;
    for (const auto& t : mklab::nc_shape_counts(k)) total += t.weight;
    EXPECT_EQ(total, oracle::catalan(k));
    long mobius_total = 0;
    for (const auto& t : mklab::cumulant_coefficients(k)) mobius_total += t.weight;
    EXPECT_EQ(mobius_total, k == 1 ? 1 : 0);  // sum of mu(nu, 1_k) over the lattice
  }
}

TEST(RayleighMoments, Examples) {
  const std::vector<double> lambda{0.0, 1.0};
  const std::vector<double> tilde{0.5};
  const auto m = mklab::rayleigh_moments(lambda, tilde, 2);
  EXPECT_DOUBLE_EQ(m[1], 0.5);
  EXPECT_DOUBLE_EQ(m[2], 0.75);
  EXPECT_EQ(m.kind(), SequenceKind::rayleigh);

  const std::vector<double> l3{-1.0, 0.25, 2.0};
  const std::vector<double> head{-1.0, 0.25};
  const auto t = mklab::rayleigh_moments(l3, head, 4);
  for (int k = 1; k <= 4; ++k) EXPECT_DOUBLE_EQ(t[k], std::pow(2.0, k));

  EXPECT_THROW(mklab::rayleigh_moments(lambda, lambda, 2), std::invalid_argument);
}

TEST(SequenceJson, RoundTripsBothScalarModes) {
  const MomentSequence<Rational> m(SequenceKind::rayleigh, {Rational(1, 3), Rational(-2), Rational(0)});
  const auto doc = mklab::to_json(m);
  EXPECT_EQ(doc.at("kind"), "rayleigh");
  EXPECT_EQ(doc.at("K"), 3);
  EXPECT_EQ(doc.at("scalar_mode"), "rational");
  EXPECT_EQ(doc.at("values"), nlohmann::json::array({"1/3", "-2/1", "0/1"}));
  EXPECT_EQ(mklab::moment_sequence_from_json<Rational>(doc), m);

  const FreeCumulantSequence<double> fc({0.5, 1.5});
  const auto fdoc = mklab::to_json(fc);
  EXPECT_EQ(fdoc.at("kind"), "free_cumulant");
  EXPECT_EQ(fdoc.at("scalar_mode"), "float");
  EXPECT_EQ(mklab::sequence_values_from_json<double>(fdoc), fc.values());

  EXPECT_THROW(mklab::sequence_values_from_json<Rational>(fdoc), std::invalid_argument);
  auto broken = doc;
  broken["K"] = 4;
  EXPECT_THROW(mklab::sequence_values_from_json<Rational>(broken), std::invalid_argument);
  EXPECT_THROW(mklab::parse_sequence_kind("measure"), std::invalid_argument);
}
