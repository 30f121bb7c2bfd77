#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "conestream/coning.hpp"
#include "conestream/errors.hpp"
#include "conestream/generators.hpp"
#include "conestream/oracle.hpp"

using namespace conestream;

namespace {

Barcode stamped_oracle(const std::vector<TowerOp>& tower, ConvertedFiltration* out = nullptr) {
  auto f = convert_to_vector(tower);
  Barcode b = stamp_with_steps(oracle_barcode(DenseFiltration::from_events(f.events)), f.step_of);
  if (out) *out = std::move(f);
  return b;
}

// β_d just after tower step s, from a step-stamped barcode.
std::size_t betti_at(const Barcode& b, int d, std::uint64_t s) {
  std::size_t n = 0;
  for (const auto& bar : b.bars())
    if (bar.dimension == d && bar.birth <= s && (bar.essential() || bar.death > s)) ++n;
  return n;
}

Barcode random_barcode(std::mt19937_64& rng, int max_bars, int max_dim) {
  const int bars = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_bars));
  std::vector<SimplexIndex> times(2 * static_cast<std::size_t>(bars));
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = 1 + i * 3 + rng() % 3;
  std::shuffle(times.begin() + 1, times.end(), rng);
  Barcode b;
  b.add(0, 0, kInfinity);
  for (int i = 1; i < bars; ++i) {
    SimplexIndex t1 = times[2 * i], t2 = times[2 * i + 1];
    if (t1 > t2) std::swap(t1, t2);
    const int dim = static_cast<int>(rng() % static_cast<std::uint64_t>(max_dim + 1));
    b.add(dim, t1, rng() % 4 == 0 ? kInfinity : t2);
  }
  return b;
}

}  // namespace

TEST(RandomTower, TwoVerticesComeFirst) {
  const auto ops = random_tower({2, 0.9, 4, 7, 0});
  ASSERT_GE(ops.size(), 2u);
  EXPECT_EQ(ops[0], TowerOp::inclusion(Simplex{0}));
  EXPECT_EQ(ops[1], TowerOp::inclusion(Simplex{1}));
}

TEST(RandomTower, SeedDeterminism) {
  const RandomTowerParams p{40, 0.9, 4, 12345, 0};
  std::ostringstream a, b;
  write_tower(a, random_tower(p));
  write_tower(b, random_tower(p));
  EXPECT_EQ(a.str(), b.str());
  RandomTowerParams q = p;
  q.seed = 12346;
  std::ostringstream c;
  write_tower(c, random_tower(q));
  EXPECT_NE(a.str(), c.str());
}

TEST(RandomTower, RespectsBudgetAndDimensionCap) {
  const auto ops = random_tower({20, 0.9, 2, 3, 50});
  EXPECT_LE(ops.size(), 50u);
  for (const auto& op : ops)
    if (op.is_inclusion()) EXPECT_LE(op.simplex.dimension(), 2);
}

TEST(RandomTower, ValidTowersForManySeeds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto ops = random_tower({static_cast<std::uint32_t>(2 + seed % 30), 0.9, 4, seed, 0});
    EXPECT_NO_THROW(convert(ops, [](const FiltrationEvent&, std::uint64_t) {})) << seed;
    EXPECT_NO_THROW(convert_full_coning(ops, [](const FiltrationEvent&, std::uint64_t) {})) << seed;
  }
}

TEST(Tightness, OpCountsForK1) {
  const auto ops = tightness_tower(1);
  ASSERT_EQ(ops.size(), 7u);
  int vertices = 0, edges = 0, contractions = 0;
  for (const auto& op : ops) {
    if (!op.is_inclusion())
      ++contractions;
    else if (op.simplex.size() == 1)
      ++vertices;
    else
      ++edges;
  }
  EXPECT_EQ(vertices, 4);
  EXPECT_EQ(edges, 2);
  EXPECT_EQ(contractions, 1);
}

TEST(Tightness, K3GainsAtLeastTwelveSimplices) {
  const auto f = convert_to_vector(tightness_tower(3));
  EXPECT_EQ(f.stats.n, 24u);
  EXPECT_EQ(f.stats.n0, 16u);
  EXPECT_GE(f.stats.total_output - f.stats.n, 12u);
  std::size_t ab_edges = 0;
  for (std::size_t i = 24; i < f.events.size(); ++i)
    if (f.events[i].is_addition() && f.events[i].dimension == 1) ++ab_edges;
  EXPECT_GE(ab_edges, 12u);
}

TEST(Torus, TinyThresholdGivesOnlyVertices) {
  TorusParams p;
  p.t1 = 1e-9;
  p.t2 = 1e-10;
  p.steps = 5;
  const auto ops = torus_flag_tower(p);
  EXPECT_EQ(ops.size(), p.num_points);
  for (const auto& op : ops) EXPECT_TRUE(op.is_inclusion() && op.simplex.size() == 1);
}

TEST(Torus, SeedDeterminismAndValidity) {
  TorusParams p;
  p.steps = 400;
  p.seed = 3;
  const auto a = torus_flag_tower(p);
  EXPECT_EQ(a, torus_flag_tower(p));
  for (const auto& op : a)
    if (op.is_inclusion()) EXPECT_LE(op.simplex.dimension(), p.max_dim);
  const auto f = convert_to_vector(a);
  EXPECT_GT(f.stats.contractions, 0u);
  EXPECT_LT(f.stats.omega, f.stats.m);
}

TEST(Torus, MaxOpsStopsTheStream) {
  TorusParams p;
  p.steps = 1u << 30;
  p.max_ops = 1234;
  EXPECT_EQ(torus_flag_tower(p).size(), 1234u);
}

TEST(Fixtures, FanKillsAllCyclesAtTheContraction) {
  for (int t : {1, 2, 4, 7}) {
    const auto tower = fan_fixture(t);
    const Barcode b = stamped_oracle(tower);
    const std::uint64_t last = tower.size() - 1;
    std::size_t dying = 0;
    for (const auto& bar : b.bars())
      if (bar.dimension == 1 && bar.death == last) ++dying;
    EXPECT_EQ(dying, static_cast<std::size_t>(t));
    EXPECT_EQ(b.count(1), static_cast<std::size_t>(t));
  }
}

TEST(Fixtures, SphereCreatesEssentialTwoClasses) {
  for (int t : {1, 2, 3}) {
    const auto tower = sphere_fixture(t);
    const Barcode b = stamped_oracle(tower);
    const std::uint64_t last = tower.size() - 1;
    std::size_t born = 0;
    for (const auto& bar : b.bars())
      if (bar.dimension == 2 && bar.essential() && bar.birth == last) ++born;
    EXPECT_EQ(born, static_cast<std::size_t>(t));
    EXPECT_EQ(b.count(2), static_cast<std::size_t>(t));
  }
}

TEST(Fixtures, NeutralContractionKeepsBetti) {
  const auto tower = neutral_fixture();
  const Barcode b = stamped_oracle(tower);
  const std::uint64_t last = tower.size() - 1;
  for (int d = 0; d <= 2; ++d) EXPECT_EQ(betti_at(b, d, last - 1), betti_at(b, d, last)) << d;
  EXPECT_EQ(betti_at(b, 0, last), 1u);
}

TEST(Fixtures, RejectEmptyParameters) {
  EXPECT_THROW(fan_fixture(0), InputError);
  EXPECT_THROW(sphere_fixture(0), InputError);
}

TEST(FromBarcode, SingleEssentialVertex) {
  const auto r = filtration_from_barcode(Barcode({{0, 5, kInfinity}}));
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.time_of, (std::vector<std::uint64_t>{5}));
}

TEST(FromBarcode, OneCycle) {
  const Barcode b({{0, 1, kInfinity}, {1, 2, 3}});
  const auto r = filtration_from_barcode(b);
  ASSERT_EQ(r.events.size(), 7u);  // v0, 2 vertices, 3 edges, triangle
  EXPECT_EQ(r.events.back().dimension, 2);
  EXPECT_EQ(stamp_with_steps(oracle_barcode(DenseFiltration::from_events(r.events)), r.time_of), b);
}

TEST(FromBarcode, TwoComponents) {
  const Barcode b({{0, 1, kInfinity}, {0, 2, 3}});
  const auto r = filtration_from_barcode(b);
  EXPECT_EQ(r.events.size(), 3u);
  EXPECT_EQ(stamp_with_steps(oracle_barcode(DenseFiltration::from_events(r.events)), r.time_of), b);
}

TEST(FromBarcode, RejectsInconsistentInput) {
  EXPECT_THROW(filtration_from_barcode(Barcode({{0, 1, kInfinity}, {1, 5, 3}})), InputError);
  EXPECT_THROW(filtration_from_barcode(Barcode({{1, 1, kInfinity}})), InputError);
  EXPECT_THROW(filtration_from_barcode(Barcode({{0, 1, kInfinity}, {0, 1, 4}})), InputError);
  EXPECT_TRUE(filtration_from_barcode(Barcode{}).events.empty());
}

TEST(FromBarcodeProperty, RoundTripAndSize) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const Barcode b = random_barcode(rng, 30, 3);
    const auto r = filtration_from_barcode(b);
    int delta = 0;
    for (const auto& bar : b.bars()) delta = std::max(delta, bar.dimension);
    EXPECT_LE(r.events.size(), (std::size_t{1} << (delta + 2)) * b.size());
    EXPECT_EQ(stamp_with_steps(oracle_barcode(DenseFiltration::from_events(r.events)), r.time_of), b);
  }
}
