#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "isospec/blowup.hpp"
#include "isospec/combinatorics.hpp"
#include "isospec/partitions.hpp"

using namespace isospec;

namespace {

OrderedPartition op(std::size_t d, std::initializer_list<std::initializer_list<std::size_t>> blocks) {
  std::vector<IndexSet> out;
  for (const auto& b : blocks) {
    IndexSet s = 0;
    for (std::size_t i : b) s |= singleton(i - 1);
    out.push_back(s);
  }
  return OrderedPartition(d, out);
}

// Ordered partitions counted as surjections [d] -> [r], summed over r.
std::int64_t surjection_total(std::size_t d) {
  std::int64_t total = 0;
  for (std::size_t r = 1; r <= d; ++r) {
    std::vector<std::size_t> label(d, 0);
    while (true) {
      std::set<std::size_t> used(label.begin(), label.end());
      if (used.size() == r) ++total;
      std::size_t k = 0;
      while (k < d && ++label[k] == r) label[k++] = 0;
      if (k == d) break;
    }
  }
  return total;
}

}  // namespace

TEST(Sets, Basics) {
  EXPECT_EQ(full_set(3), 7u);
  EXPECT_EQ(set_size(0b1011), 3u);
  EXPECT_EQ(members(0b1010), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(set_to_string(0b101), "{1,3}");
  const auto subsets = canonical_subsets(3);
  const std::vector<IndexSet> want{0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};
  EXPECT_EQ(subsets, want);
}

TEST(OrderedPartitions, CountsMatchSurjections) {
  for (std::size_t d = 1; d <= 6; ++d) {
    EXPECT_EQ(static_cast<std::int64_t>(enumerate_ordered_partitions(d).size()), surjection_total(d)) << d;
  }
  EXPECT_EQ(enumerate_ordered_partitions(3).size(), 13u);
  EXPECT_EQ(enumerate_ordered_partitions(4).size(), 75u);
}

TEST(OrderedPartitions, EnumerationHasNoRepeats) {
  const auto all = enumerate_ordered_partitions(5);
  const std::set<OrderedPartition> distinct(all.begin(), all.end());
  EXPECT_EQ(distinct.size(), all.size());
}

TEST(OrderedPartitions, Validation) {
  EXPECT_THROW(OrderedPartition(3, {0b011}), InvalidInput);
  EXPECT_THROW(OrderedPartition(3, {0b011, 0b110}), InvalidInput);
  EXPECT_THROW(OrderedPartition(3, {0b011, 0, 0b100}), InvalidInput);
  EXPECT_THROW(OrderedPartition(2, {0b111}), InvalidInput);
  EXPECT_EQ(op(3, {{2}, {1, 3}}).face_dimension(), 1u);
  EXPECT_EQ(op(3, {{2}, {1, 3}}).to_string(), "({2},{1,3})");
}

TEST(Refinement, Examples) {
  EXPECT_TRUE(is_refinement(op(3, {{1}, {2}, {3}}), op(3, {{1}, {2, 3}})));
  EXPECT_TRUE(is_refinement(op(3, {{1}, {3}, {2}}), op(3, {{1}, {2, 3}})));
  EXPECT_FALSE(is_refinement(op(3, {{2}, {1}, {3}}), op(3, {{1}, {2, 3}})));
  EXPECT_TRUE(is_refinement(op(3, {{2}, {1, 3}}), OrderedPartition::trivial(3)));
  EXPECT_FALSE(is_refinement(OrderedPartition::trivial(3), op(3, {{2}, {1, 3}})));
  EXPECT_TRUE(is_refinement(op(3, {{2}, {1, 3}}), op(3, {{2}, {1, 3}})));
}

TEST(Chains, RoundTripAndSmallestMember) {
  const auto p = op(4, {{2}, {1, 4}, {3}});
  const Chain c = to_chain(p);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], 0b1111u);
  EXPECT_EQ(c[1], 0b1101u);
  EXPECT_EQ(c[2], 0b0100u);
  EXPECT_EQ(to_partition(c), p);
  EXPECT_EQ(c.smallest_containing(0b0001), 1u);
  EXPECT_EQ(c.smallest_containing(0b0100), 2u);
  EXPECT_EQ(c.smallest_containing(0b0011), 0u);
  EXPECT_THROW(Chain(3, {0b111, 0b111}), InvalidInput);
  EXPECT_THROW(Chain(3, {0b011}), InvalidInput);
}

TEST(Constants, CConstant) {
  const Spectrum spec({0.0, 1.0, 3.0});
  EXPECT_DOUBLE_EQ(c_constant(spec, 0b110, 0), 9.0);
  EXPECT_DOUBLE_EQ(c_constant(spec, 0b100, 1), 4.0);
  EXPECT_DOUBLE_EQ(c_constant(spec, 0, 2), 1.0);
  EXPECT_THROW(c_constant(spec, 0b001, 0), InvalidInput);
  EXPECT_EQ(coordinate_count(3), 12);
  EXPECT_EQ(ambient_dimension(3), 5);
}

TEST(Rho, HandComputedThreePointExample) {
  // Lambda = {0, 1, 3}, sequence ({1}; {2,3} with weights 1, 1), chain
  // {1,2,3} > {2,3}. Block {1} sits in {1,2,3}: C_1^{2,3} = 1 * 9.
  const Spectrum spec({0.0, 1.0, 3.0});
  const DistributionSequence seq({Distribution(spec, {0}, {1.0}), Distribution(spec, {1, 2}, {1.0, 1.0})});
  const BlowupPoint pt = rho(seq);
  const std::map<IndexSet, std::vector<double>> want{
      {0b001, {9.0}},      {0b010, {4.0}},      {0b100, {4.0}},           {0b011, {9.0, 0.0}},
      {0b101, {1.0, 0.0}}, {0b110, {1.0, 1.0}}, {0b111, {1.0, 0.0, 0.0}},
  };
  for (const auto& [s, v] : want) {
    const auto b = pt.block(s);
    ASSERT_EQ(b.size(), v.size());
    for (std::size_t k = 0; k < v.size(); ++k) EXPECT_DOUBLE_EQ(b[k], v[k]) << set_to_string(s);
  }
  EXPECT_TRUE(is_member(pt, 1e-12).member);
  EXPECT_EQ(face_of(pt), op(3, {{1}, {2, 3}}));
  EXPECT_EQ(pi(pt), seq);
}

TEST(Rho, InteriorPointHasOneFace) {
  const Spectrum spec({-1.0, 0.5, 2.0});
  const BlowupPoint pt = rho(DistributionSequence({Distribution::full(spec, {0.2, 0.3, 0.5})}));
  EXPECT_EQ(face_of(pt), OrderedPartition::trivial(3));
  EXPECT_TRUE(is_member(pt, 1e-12).member);
}

TEST(Rho, VertexPointRecoversPermutationOrder) {
  const Spectrum spec({0.0, 1.0, 2.0, 5.0});
  const auto p = op(4, {{3}, {1}, {4}, {2}});
  std::vector<Distribution> parts;
  for (IndexSet b : p.blocks()) parts.emplace_back(spec, members(b), std::vector<double>{1.0});
  const BlowupPoint pt = rho(DistributionSequence(parts));
  EXPECT_EQ(face_of(pt), p);
  EXPECT_EQ(phi_chain(pt).chain, to_chain(p));
}

TEST(Membership, Rejections) {
  const Spectrum spec({-1.0, 0.5, 2.0});
  const BlowupPoint pt = rho(DistributionSequence({Distribution::full(spec, {0.2, 0.3, 0.5})}));
  auto blocks = pt.blocks();
  blocks[0b111][2] *= 1.001;
  const auto rep = is_member(BlowupPoint(spec, blocks), 1e-6);
  EXPECT_FALSE(rep.member);
  EXPECT_FALSE(rep.violation.empty());
  blocks = pt.blocks();
  blocks[0b011][0] = -blocks[0b011][0];
  EXPECT_FALSE(is_member(BlowupPoint(spec, blocks), 1e-6).member);
  EXPECT_THROW(is_member(pt, 0.0), InvalidInput);
  blocks = pt.blocks();
  blocks[0b011] = {0.0, 0.0};
  EXPECT_THROW(BlowupPoint(spec, blocks), InvalidInput);
}

TEST(Membership, AllNegativeBlocksAreAccepted) {
  const Spectrum spec({0.0, 1.0});
  BlowupPoint pt = rho(DistributionSequence({Distribution::full(spec, {0.4, 0.6})}));
  auto blocks = pt.blocks();
  for (double& v : blocks[0b11]) v = -v;
  EXPECT_TRUE(is_member(BlowupPoint(spec, blocks), 1e-12).member);
}

TEST(Membership, SampledAboveEight) {
  std::vector<double> x(9);
  for (std::size_t k = 0; k < 9; ++k) x[k] = static_cast<double>(k);
  const Spectrum spec(x);
  const BlowupPoint pt = rho(DistributionSequence({Distribution::full(spec, std::vector<double>(9, 1.0))}));
  const auto rep = is_member(pt, 1e-9, 5000);
  EXPECT_TRUE(rep.member);
  EXPECT_TRUE(rep.sampled);
  EXPECT_EQ(rep.instances_checked, 5000u);
}

TEST(InversePair, ExhaustiveSmallDimensions) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> wt(0.05, 1.0);
  for (std::size_t d = 1; d <= 4; ++d) {
    std::vector<double> x(d);
    for (std::size_t k = 0; k < d; ++k) x[k] = 0.7 * static_cast<double>(k) - 1.0;
    const Spectrum spec(x);
    for_each_ordered_partition(d, [&](const OrderedPartition& p) {
      std::vector<Distribution> parts;
      for (IndexSet b : p.blocks()) {
        std::vector<double> w(set_size(b));
        for (double& v : w) v = wt(rng);
        parts.emplace_back(spec, members(b), w);
      }
      const DistributionSequence seq(parts);
      const BlowupPoint pt = rho(seq);
      EXPECT_EQ(pi(pt), seq) << p.to_string();
      EXPECT_LT(point_distance(normalize_affine(rho(pi(pt))), normalize_affine(pt)), 1e-12);
    });
  }
}

TEST(NormalizeAffine, BlocksSumToOne) {
  const Spectrum spec({0.0, 1.0, 3.0});
  const BlowupPoint pt = normalize_affine(rho(DistributionSequence({Distribution::full(spec, {2.0, 3.0, 5.0})})));
  for (IndexSet s = 1; s <= 7; ++s) {
    double sum = 0.0;
    for (double v : pt.block(s)) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-15);
  }
  EXPECT_EQ(normalize_affine(pt), pt);
}

TEST(Barycentre, LiesOnItsFace) {
  const Spectrum spec({0.0, 1.0, 2.0, 4.0});
  for_each_ordered_partition(4, [&](const OrderedPartition& p) {
    const BlowupPoint b = barycentre(p, spec);
    EXPECT_EQ(face_of(b), p);
    EXPECT_TRUE(is_member(b, 1e-12).member);
  });
}

TEST(Combinatorics, SmallValues) {
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(stirling2(5, 2), 15);
  EXPECT_EQ(stirling2(6, 3), 90);
  EXPECT_EQ(ordered_bell(4), 75);
  EXPECT_EQ(eulerian(4, 1), 11);
  EXPECT_EQ(tangent_number(7), 272);
  EXPECT_EQ(tanh_coefficient(7), -272);
  EXPECT_THROW(factorial(21), NumericFailure);
}
