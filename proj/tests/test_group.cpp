#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "packlab/packlab.hpp"

using packlab::DenseSet;
using packlab::Elem;
using packlab::Group;
using packlab::NormValue;

namespace {

std::vector<std::size_t> idx(const DenseSet& s) { return s.indices(); }

}  // namespace

TEST(Group, ModularArithmetic) {
  const auto z6 = Group::cyclic({6});
  EXPECT_EQ(z6.add(4, 5), 3u);
  EXPECT_EQ(z6.neg(0), 0u);
  EXPECT_EQ(z6.neg(2), 4u);

  const auto z44 = Group::cyclic({4, 4});
  EXPECT_EQ(z44.add(Elem{{3, 2}}, Elem{{1, 3}}), (Elem{{0, 1}}));
  EXPECT_EQ(z44.neg(Elem{{1, 3}}), (Elem{{3, 1}}));
}

TEST(Group, DyadicAdditionIsXor) {
  const auto cube = Group::dyadic(4);
  for (std::size_t a = 0; a < 16; ++a) {
    for (std::size_t b = 0; b < 16; ++b) EXPECT_EQ(cube.add(a, b), a ^ b);
    EXPECT_EQ(cube.neg(a), a);
  }
}

TEST(Group, MismatchedElementsAreInputErrors) {
  const auto z44 = Group::cyclic({4, 4});
  EXPECT_THROW(z44.add(Elem{{1}}, Elem{{1, 1}}), packlab::InputError);
  EXPECT_THROW(z44.index_of(Elem{{4, 0}}), packlab::InputError);
}

TEST(Group, RejectsBadSpecs) {
  EXPECT_THROW(Group::cyclic({1}), packlab::InputError);
  EXPECT_THROW(Group::cyclic({}), packlab::InputError);
  EXPECT_THROW(Group(packlab::GroupSpec{{2, 3}, packlab::MetricKind::kDyadic}), packlab::InputError);
  EXPECT_THROW(Group::cyclic({1 << 16, 1 << 16}), packlab::SizeGuardError);
  EXPECT_NO_THROW(Group::cyclic({1 << 16, 1 << 16}, std::size_t{1} << 32));
}

TEST(Group, Norms) {
  EXPECT_EQ(Group::cyclic({16}).norm(13), NormValue{3});
  EXPECT_EQ(Group::cyclic({9, 9}).norm(Elem{{4, 8}}), NormValue{4});

  const auto cube = Group::dyadic(4);
  const auto n = cube.norm(Elem{{0, 0, 1, 0}});
  EXPECT_EQ(cube.dyadic_level(n), 2);
  EXPECT_EQ(cube.dyadic_level(cube.norm(0)), 4);
  EXPECT_EQ(cube.norm(0), NormValue{0});
  EXPECT_EQ(cube.from_dyadic_level(2), n);
}

TEST(Group, IndexRoundTripExhaustive) {
  for (const auto& g : {Group::cyclic({65536}), Group::cyclic({16, 64, 64}), Group::dyadic(16),
                        Group::cyclic({3, 5, 7, 11})}) {
    for (std::size_t i = 0; i < g.order(); ++i) ASSERT_EQ(g.index_of(g.elem_at(i)), i);
  }
}

TEST(Group, IndexRoundTripRandomLarge) {
  const auto g = Group::cyclic({1000, 999, 97});
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  for (int k = 0; k < 20000; ++k) {
    const auto i = pick(rng);
    ASSERT_EQ(g.index_of(g.elem_at(i)), i);
  }
  // coordinate 0 is most significant
  EXPECT_EQ(g.index_of(Elem{{0, 0, 1}}), 1u);
  EXPECT_EQ(g.index_of(Elem{{0, 1, 0}}), 97u);
}

TEST(Group, NormPropertiesRandomized) {
  std::mt19937_64 rng(11);
  for (const auto& g : {Group::cyclic({17}), Group::cyclic({6, 10}), Group::cyclic({4, 5, 9}), Group::dyadic(9)}) {
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    const bool dyadic = g.metric() == packlab::MetricKind::kDyadic;
    for (int k = 0; k < 3000; ++k) {
      const auto a = pick(rng), b = pick(rng);
      const auto s = g.norm(g.add(a, b)).grid;
      ASSERT_EQ(g.norm(a), g.norm(g.neg(a)));
      ASSERT_EQ(oracle::add(g, a, b), g.add(a, b));
      if (dyadic) {
        ASSERT_LE(s, std::max(g.norm(a).grid, g.norm(b).grid));
      } else {
        ASSERT_LE(s, g.norm(a).grid + g.norm(b).grid);
      }
    }
  }
}

TEST(Balls, OpenBalls) {
  const auto z16 = Group::cyclic({16});
  EXPECT_EQ(idx(packlab::ball(z16, NormValue{2})), (std::vector<std::size_t>{0, 1, 15}));
  EXPECT_TRUE(packlab::ball(z16, NormValue{0}).empty());
  EXPECT_TRUE(packlab::ball(Group::cyclic({6}), NormValue{4}).is_full());
  EXPECT_EQ(packlab::closed_ball(z16, NormValue{1}), packlab::ball(z16, NormValue{2}));
}

TEST(Balls, DyadicBallsAreAlignedBlocks) {
  const auto cube = Group::dyadic(6);
  for (std::int64_t r = 0; r <= 7; ++r) {
    const auto b = packlab::ball(cube, NormValue{r});
    const std::size_t expected = r == 0 ? 0 : std::min<std::size_t>(64, std::size_t{1} << (r - 1));
    EXPECT_EQ(b.size(), expected) << "r=" << r;
  }
}

TEST(Balls, Annulus) {
  const auto z1024 = Group::cyclic({1024});
  EXPECT_EQ(packlab::annulus(z1024, NormValue{33}, NormValue{64}).size(), 62u);
  const auto z6 = Group::cyclic({6});
  EXPECT_EQ(idx(packlab::annulus(z6, NormValue{0}, NormValue{1})), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(packlab::annulus(z6, NormValue{3}, NormValue{3}).empty());
}

TEST(Balls, BallEqualsAnnulusFromZero) {
  for (const auto& g : {Group::cyclic({23}), Group::cyclic({8, 6}), Group::dyadic(5)}) {
    for (std::int64_t r = 0; r <= g.diameter().grid + 2; ++r) {
      EXPECT_EQ(packlab::ball(g, NormValue{r}), packlab::annulus(g, NormValue{0}, NormValue{r}));
    }
  }
}

TEST(Balls, BallMatchesNormFilter) {
  for (const auto& g : {Group::cyclic({13, 8}), Group::cyclic({5, 6, 7}), Group::dyadic(7)}) {
    for (std::int64_t r = 0; r <= g.diameter().grid + 1; ++r) {
      for (std::size_t center : {std::size_t{0}, g.order() / 3, g.order() - 1}) {
        std::size_t count = 0;
        packlab::for_each_in_ball(g, center, NormValue{r}, [&](std::size_t p) {
          ASSERT_LT(g.distance(p, center), NormValue{r});
          ++count;
        });
        std::size_t expected = 0;
        for (std::size_t p = 0; p < g.order(); ++p) expected += g.distance(p, center) < NormValue{r};
        EXPECT_EQ(count, expected);
      }
    }
  }
}

TEST(Sets, TranslateAndNegate) {
  const auto z6 = Group::cyclic({6});
  const auto a = DenseSet::from_indices(z6, {0, 1});
  EXPECT_EQ(idx(packlab::translate(a, 2)), (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(packlab::translate(a, 0), a);
  EXPECT_EQ(idx(packlab::negate_set(DenseSet::from_indices(z6, {1, 2}))), (std::vector<std::size_t>{4, 5}));
  EXPECT_EQ(packlab::translate(a, Elem{{5}}).size(), 2u);
}

TEST(Sets, Operators) {
  const auto z70 = Group::cyclic({70});
  auto a = DenseSet::from_indices(z70, {1, 2, 65, 69});
  const auto b = DenseSet::from_indices(z70, {2, 3, 69});
  EXPECT_EQ(idx(a & b), (std::vector<std::size_t>{2, 69}));
  EXPECT_EQ((a | b).size(), 5u);
  EXPECT_EQ(idx(a - b), (std::vector<std::size_t>{1, 65}));
  EXPECT_EQ(a.complement().size(), 66u);
  EXPECT_TRUE(DenseSet::full(z70).is_full());
  EXPECT_TRUE(a.intersects(b));
  EXPECT_FALSE((a - b).intersects(b));
  EXPECT_TRUE((a & b).subset_of(a));
  EXPECT_THROW(a |= DenseSet(Group::cyclic({71})), packlab::InputError);
}

TEST(Separated, Examples) {
  const auto z16 = Group::cyclic({16});
  const auto all = DenseSet::full(z16);
  EXPECT_EQ(idx(packlab::maximal_separated(all, NormValue{4}, std::vector<std::size_t>{0})),
            (std::vector<std::size_t>{0, 4, 8, 12}));
  EXPECT_EQ(idx(packlab::maximal_separated(all, NormValue{4}, std::vector<std::size_t>{0, 5})),
            (std::vector<std::size_t>{0, 5, 9}));
  const auto region = DenseSet::from_indices(z16, {1, 3, 4, 9});
  EXPECT_EQ(packlab::maximal_separated(region, NormValue{1}, std::vector<std::size_t>{}), region);
}

TEST(Separated, RejectsBadSeeds) {
  const auto all = DenseSet::full(Group::cyclic({16}));
  EXPECT_THROW(packlab::maximal_separated(all, NormValue{4}, std::vector<std::size_t>{0, 3}), packlab::InputError);
  const auto region = DenseSet::from_indices(Group::cyclic({16}), {1, 2});
  EXPECT_THROW(packlab::maximal_separated(region, NormValue{1}, std::vector<std::size_t>{0}), packlab::InputError);
}

TEST(Separated, SeparatedAndMaximalExhaustive) {
  std::mt19937_64 rng(3);
  for (const auto& g : {Group::cyclic({40}), Group::cyclic({9, 12}), Group::dyadic(7)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto region = oracle::random_set(g, 0.5, rng);
      for (std::int64_t spacing = 1; spacing <= g.diameter().grid; ++spacing) {
        const NormValue sp{spacing};
        const auto d = packlab::maximal_separated(region, sp, std::vector<std::size_t>{});
        ASSERT_TRUE(d.subset_of(region));
        const auto pts = d.indices();
        for (std::size_t i = 0; i < pts.size(); ++i) {
          for (std::size_t j = i + 1; j < pts.size(); ++j) ASSERT_GE(g.distance(pts[i], pts[j]), sp);
        }
        for (const auto p : (region - d).indices()) {
          bool near = false;
          for (const auto q : pts) near = near || g.distance(p, q) < sp;
          ASSERT_TRUE(near) << "point " << p << " could be added";
        }
      }
    }
  }
}

TEST(Dilate, MatchesSumWithClosedBall) {
  std::mt19937_64 rng(5);
  for (const auto& g : {Group::cyclic({50}), Group::cyclic({7, 10}), Group::cyclic({3, 4, 5}), Group::dyadic(6)}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = oracle::random_set(g, 0.08, rng);
      for (std::int64_t delta = 0; delta <= g.diameter().grid; ++delta) {
        DenseSet expected(g);
        for (std::size_t p = 0; p < g.order(); ++p) {
          for (const auto q : a.indices()) {
            if (g.distance(p, q).grid <= delta) {
              expected.insert(p);
              break;
            }
          }
        }
        ASSERT_EQ(packlab::dilate(a, NormValue{delta}), expected) << g.to_string() << " delta=" << delta;
      }
    }
  }
}
