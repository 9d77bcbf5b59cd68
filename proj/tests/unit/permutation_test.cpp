#include <gtest/gtest.h>

#include <map>
#include <random>

#include "brute_force.hpp"
#include "mklab/errors.hpp"
#include "mklab/permutation.hpp"
#include "mklab/weingarten.hpp"

using mklab::NonCrossingPartition;
using mklab::Permutation;

namespace {

NonCrossingPartition P(const char* text, int k = 0) { return NonCrossingPartition::parse(text, k); }

Permutation random_permutation(int k, std::mt19937_64& rng) {
  std::vector<int> images(static_cast<std::size_t>(k));
  std::iota(images.begin(), images.end(), 1);
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(images);
}

Permutation from_oracle(const oracle::Perm& p) {
  std::vector<int> images;
  for (int x : p) images.push_back(x + 1);
  return Permutation(images);
}

// Cycles of sigma restricted to [offset+1, offset+k], relabelled to [1, k].
NonCrossingPartition cycles_as_partition(const Permutation& sigma, int offset, int k) {
  std::vector<mklab::Block> blocks;
  for (const auto& c : sigma.cycles()) {
    if (c.front() <= offset || c.front() > offset + k) continue;
    mklab::Block b;
    for (int x : c) b.push_back(x - offset);
    blocks.push_back(b);
  }
  return NonCrossingPartition(k, blocks);
}

}  // namespace

TEST(Permutation, LengthExamples) {
  EXPECT_EQ(Permutation::identity(5).length(), 0);
  EXPECT_EQ(Permutation::from_cycles(4, {{1, 2}}).length(), 1);
  EXPECT_EQ(Permutation::full_cycle(6).length(), 5);
  EXPECT_EQ(mklab::length(Permutation::full_cycle(6)), 5);
}

TEST(Permutation, CompositionAppliesRightFactorFirst) {
  const auto a = Permutation::from_cycles(3, {{1, 2}});
  const auto b = Permutation::from_cycles(3, {{2, 3}});
  const auto ab = a * b;
  EXPECT_EQ(ab(2), a(b(2)));
  EXPECT_EQ(ab.to_string(), "(1,2,3)");
  EXPECT_EQ((a * a.inverse()), Permutation::identity(3));
}

TEST(Permutation, CycleNotation) {
  const auto sigma = Permutation::from_cycles(9, {{1, 7}, {2, 5, 6}, {8, 9}});
  EXPECT_EQ(sigma.to_string(), "(1,7)(2,5,6)(3)(4)(8,9)");
  EXPECT_EQ(sigma.cycle_type().to_string(), "[3,2,2,1,1]");
  EXPECT_EQ(sigma.cycle_count() + sigma.length(), 9);
}

TEST(Permutation, RejectsBadInput) {
  EXPECT_THROW(Permutation({1, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation({0, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation(std::vector<int>{}), std::invalid_argument);
  EXPECT_THROW(Permutation::from_cycles(3, {{1, 2}, {2, 3}}), std::invalid_argument);
  EXPECT_THROW(Permutation::identity(2) * Permutation::identity(3), std::invalid_argument);
  EXPECT_THROW(mklab::CycleType({2, 0}), std::invalid_argument);
}

TEST(CycleType, AllTypesAreIntegerPartitions) {
  const long counts[] = {1, 2, 3, 5, 7, 11, 15, 22};
  for (int k = 1; k <= 8; ++k) {
    const auto types = mklab::all_cycle_types(k);
    EXPECT_EQ(static_cast<long>(types.size()), counts[k - 1]);
    for (const auto& t : types) EXPECT_EQ(t.total(), k);
    EXPECT_EQ(Permutation::representative(types.front()).cycle_type(), types.front());
    EXPECT_EQ(Permutation::representative(types.back()), Permutation::identity(k));
  }
}

TEST(CycleType, ClassSizesAddUpToFactorial) {
  for (int k = 1; k <= 6; ++k) {
    std::map<mklab::CycleType, long> sizes;
    long total = 0;
    mklab::for_each_permutation(k, [&](const Permutation& p) {
      ++sizes[p.cycle_type()];
      ++total;
    });
    EXPECT_EQ(sizes.size(), mklab::all_cycle_types(k).size());
    EXPECT_EQ(total, static_cast<long>(oracle::symmetric_group(k).size()));
  }
}

TEST(Permutation, LengthMatchesBruteForce) {
  for (const auto& p : oracle::symmetric_group(5)) {
    EXPECT_EQ(from_oracle(p).length(), oracle::length(p));
  }
}

TEST(Permutation, ConjugationInvarianceAndParity) {
  std::mt19937_64 rng(20241017);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 8);
    const auto s = random_permutation(k, rng);
    const auto p = random_permutation(k, rng);
    EXPECT_EQ((p * s * p.inverse()).length(), s.length());
    EXPECT_EQ(((s * p).length() - s.length() - p.length()) % 2, 0);
    EXPECT_LE((s * p).length(), s.length() + p.length());
  }
}

TEST(Embedding, Examples) {
  EXPECT_EQ(mklab::embed_nc(NonCrossingPartition::finest(5)), Permutation::identity(5));
  EXPECT_EQ(mklab::embed_nc(NonCrossingPartition::coarsest(5)), Permutation::full_cycle(5));
  EXPECT_EQ(mklab::embed_nc(P("{1,7|2,5,6|3|4|8,9}")).to_string(), "(1,7)(2,5,6)(3)(4)(8,9)");
}

TEST(Geodesic, Examples) {
  for (int k = 1; k <= 6; ++k) {
    EXPECT_TRUE(mklab::is_geodesic(Permutation::identity(k), Permutation::full_cycle(k)));
    EXPECT_TRUE(mklab::is_geodesic(Permutation::full_cycle(k), Permutation::full_cycle(k)));
  }
  // {1,3|2} is non-crossing, so (1,3) lies on a geodesic to gamma_3.
  EXPECT_TRUE(mklab::is_geodesic(Permutation::from_cycles(3, {{1, 3}}), Permutation::full_cycle(3)));
  // (1,3)(2,4) is the crossing pairing: 2 + |(1,3)(2,4) gamma_4| = 2 + 3 > 3.
  const auto crossing = Permutation::from_cycles(4, {{1, 3}, {2, 4}});
  EXPECT_FALSE(mklab::is_geodesic(crossing, Permutation::full_cycle(4)));
  const oracle::Perm o = {2, 3, 0, 1};
  EXPECT_EQ(oracle::length(o) + oracle::length(oracle::compose(oracle::inverse(o), oracle::full_cycle(4))), 5);
}

TEST(Geodesic, CountOnFullCycleIsCatalan) {
  for (int k = 1; k <= 7; ++k) {
    long count = 0;
    for (const auto& p : oracle::symmetric_group(k)) {
      if (mklab::is_geodesic(from_oracle(p), Permutation::full_cycle(k))) ++count;
    }
    EXPECT_EQ(count, oracle::catalan(k)) << "k=" << k;
  }
}

TEST(ComplementViaGroup, Examples) {
  for (int k = 1; k <= 6; ++k) {
    EXPECT_EQ(mklab::complement_via_group(NonCrossingPartition::finest(k)), Permutation::full_cycle(k));
    EXPECT_EQ(mklab::complement_via_group(NonCrossingPartition::coarsest(k)), Permutation::identity(k));
  }
  EXPECT_EQ(mklab::complement_via_group(P("{1,7|2,5,6|3|4|8,9}")), mklab::embed_nc(P("{1,6|2,3,4|5|7,9|8}")));
}

TEST(ComplementViaGroup, MatchesLatticeComplementExhaustively) {
  for (int k = 1; k <= 8; ++k) {
    for (const auto& rho : mklab::enumerate_nc(k)) {
      ASSERT_EQ(mklab::complement_via_group(rho), mklab::embed_nc(mklab::kreweras(rho))) << rho;
    }
  }
}

TEST(Embedding, IsPosetIsomorphismWithMobiusTransport) {
  for (int k = 1; k <= 6; ++k) {
    const auto& lattice = mklab::enumerate_nc(k);
    const auto gamma = Permutation::full_cycle(k);
    for (const auto& nu : lattice) {
      const auto pn = mklab::embed_nc(nu);
      for (const auto& rho : lattice) {
        const auto pr = mklab::embed_nc(rho);
        const auto between = pn.inverse() * pr;
        const bool on_chain = pn.length() + between.length() + (pr.inverse() * gamma).length() == k - 1;
        ASSERT_EQ(mklab::leq(nu, rho), on_chain) << nu << " " << rho;
        if (on_chain) {
          ASSERT_EQ(mklab::mobius_nc(nu, rho), mklab::Rational(mklab::mu_asymptotic(between.cycle_type())));
        }
      }
    }
  }
}

TEST(TwoCyclePairs, SmallCounts) {
  const auto one = mklab::geodesic_pairs_two_cycle(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].sigma, Permutation::identity(2));
  EXPECT_EQ(one[0].pi, Permutation::identity(2));
  EXPECT_EQ(mklab::geodesic_pairs_two_cycle(2).size(), 9u);
}

TEST(TwoCyclePairs, MatchProductOfLatticeChains) {
  for (int k = 1; k <= mklab::kMaxTwoCyclePairs; ++k) {
    long chains = 0;
    for (const auto& rho : mklab::enumerate_nc(k)) {
      for (const auto& nu : mklab::enumerate_nc(k)) chains += mklab::leq(nu, rho) ? 1 : 0;
    }
    const auto pairs = mklab::geodesic_pairs_two_cycle(k);
    EXPECT_EQ(static_cast<long>(pairs.size()), chains * chains) << "k=" << k;
    const auto target = mklab::two_cycle_target(k);
    for (const auto& [sigma, pi] : pairs) {
      ASSERT_EQ(sigma.length() + (sigma.inverse() * pi).length() + (pi.inverse() * target).length(), 2 * k - 2);
    }
  }
}

TEST(TwoCyclePairs, ComplementCyclesSplitAcrossFactors) {
  for (int k = 1; k <= 4; ++k) {
    const auto target = mklab::two_cycle_target(k);
    for (const auto& [sigma, pi] : mklab::geodesic_pairs_two_cycle(k)) {
      const auto rho1 = cycles_as_partition(pi, 0, k);
      const auto rho2 = cycles_as_partition(pi, k, k);
      ASSERT_EQ(static_cast<std::size_t>((pi.inverse() * target).cycle_count()),
                mklab::kreweras(rho1).block_count() + mklab::kreweras(rho2).block_count());
    }
  }
}

TEST(TwoCyclePairs, RejectsAboveCap) {
  EXPECT_THROW(mklab::geodesic_pairs_two_cycle(mklab::kMaxTwoCyclePairs + 1), mklab::SizeLimitError);
}
