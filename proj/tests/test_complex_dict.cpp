#include <random>
#include <set>

#include <gtest/gtest.h>

#include "conestream/complex_dict.hpp"
#include "conestream/errors.hpp"
#include "support.hpp"

using conestream::ComplexDict;
using conestream::InputError;
using conestream::Simplex;
using testsupport::as_set;

namespace {

void insert_closure(ComplexDict& c, const Simplex& s) {
  for (const auto& f : conestream::facets(s))
    if (!c.contains(f)) insert_closure(c, f);
  if (!c.contains(s)) c.insert(s);
}

}  // namespace

TEST(ComplexDict, InsertVertexIntoEmpty) {
  ComplexDict c;
  c.insert(Simplex{3});
  EXPECT_EQ(c.size(), 1u);
  EXPECT_TRUE(c.contains_vertex(3));
}

TEST(ComplexDict, InsertEdgeLinksCofacets) {
  ComplexDict c;
  c.insert(Simplex{1});
  c.insert(Simplex{2});
  c.insert(Simplex{1, 2});
  const auto* a = c.find(Simplex{1});
  const auto* b = c.find(Simplex{2});
  ASSERT_EQ(a->cofacets.size(), 1u);
  ASSERT_EQ(b->cofacets.size(), 1u);
  EXPECT_EQ(*a->cofacets.at(2)->key, (Simplex{1, 2}));
  EXPECT_EQ(*b->cofacets.at(1)->key, (Simplex{1, 2}));
  EXPECT_TRUE(c.check_invariants());
}

TEST(ComplexDict, InsertErrors) {
  ComplexDict c;
  c.insert(Simplex{1});
  EXPECT_THROW(c.insert(Simplex{1, 2}), InputError);
  EXPECT_THROW(c.insert(Simplex{1}), InputError);
}

TEST(ComplexDict, RemoveCases) {
  ComplexDict c;
  insert_closure(c, Simplex{0, 1});
  EXPECT_THROW(c.remove(Simplex{0}), InputError);
  EXPECT_THROW(c.remove(Simplex{5}), InputError);
  c.remove(Simplex{0, 1});
  EXPECT_EQ(c.size(), 2u);
  EXPECT_TRUE(c.find(Simplex{0})->cofacets.empty());
  EXPECT_TRUE(c.check_invariants());
}

TEST(ComplexDict, StarExcludingOnPath) {
  // a=0, b=1, c=2
  ComplexDict c;
  insert_closure(c, Simplex{0, 1});
  insert_closure(c, Simplex{1, 2});
  EXPECT_EQ(as_set(c.star_excluding(0, 2)), (std::set<Simplex>{{0}, {0, 1}}));
}

TEST(ComplexDict, StarExcludingSingleVertexAndTriangle) {
  ComplexDict c;
  c.insert(Simplex{4});
  EXPECT_EQ(as_set(c.star_excluding(4, 9)), (std::set<Simplex>{{4}}));
  EXPECT_THROW(c.star_excluding(9, 4), InputError);

  ComplexDict t;
  insert_closure(t, Simplex{0, 1, 2});
  EXPECT_EQ(as_set(t.star_excluding(0, 1)), (std::set<Simplex>{{0}, {0, 2}}));
}

TEST(ComplexDict, SmallerStarSideTieMakesFirstLoser) {
  ComplexDict c;
  c.insert(Simplex{0});
  c.insert(Simplex{1});
  const auto split = c.smaller_star_side(0, 1);
  EXPECT_EQ(split.winner, 1u);
  EXPECT_EQ(split.loser, 0u);
  EXPECT_EQ(as_set(split.loser_star), (std::set<Simplex>{{0}}));
}

TEST(ComplexDict, SmallerStarSideLargerStarWins) {
  ComplexDict c;
  for (conestream::VertexId i = 1; i <= 5; ++i) insert_closure(c, Simplex{0, i});
  c.insert(Simplex{9});
  const auto split = c.smaller_star_side(0, 9);
  EXPECT_EQ(split.winner, 0u);
  EXPECT_EQ(split.loser, 9u);
  EXPECT_EQ(as_set(split.loser_star), (std::set<Simplex>{{9}}));
}

TEST(ComplexDict, SmallerStarSidePathTie) {
  // path a-b-c, contracting (a,c): 2 vs 2, a loses.
  ComplexDict c;
  insert_closure(c, Simplex{0, 1});
  insert_closure(c, Simplex{1, 2});
  const auto split = c.smaller_star_side(0, 2);
  EXPECT_EQ(split.winner, 2u);
  EXPECT_EQ(split.loser, 0u);
  EXPECT_EQ(as_set(split.loser_star), (std::set<Simplex>{{0}, {0, 1}}));
}

TEST(ComplexDictProperty, StarsMatchBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const conestream::VertexId nv = 3 + static_cast<conestream::VertexId>(rng() % 8);
    ComplexDict c;
    for (const auto& s : testsupport::random_linear_extension(rng, testsupport::random_complex(rng, nv, 3, 6)))
      c.insert(s);
    ASSERT_TRUE(c.check_invariants());
    const auto u = static_cast<conestream::VertexId>(rng() % nv);
    auto v = static_cast<conestream::VertexId>(rng() % nv);
    if (v == u) v = (u + 1) % nv;

    const auto excl = as_set(c.star_excluding(u, v));
    EXPECT_EQ(excl, testsupport::brute_star_excluding(c, u, v));
    // partition of the full star into the part avoiding v and the part containing it
    std::set<Simplex> with_v;
    for (const auto& s : c.star(u))
      if (s.contains(v)) with_v.insert(s);
    std::set<Simplex> all = excl;
    all.insert(with_v.begin(), with_v.end());
    EXPECT_EQ(all, as_set(c.star(u)));
    EXPECT_EQ(all.size(), excl.size() + with_v.size());
    std::vector<Simplex> by_ref;
    for (const Simplex* k : c.star_keys(u)) by_ref.push_back(*k);
    EXPECT_EQ(by_ref, c.star(u));

    const auto split = c.smaller_star_side(u, v);
    const auto su = excl.size();
    const auto sv = testsupport::brute_star_excluding(c, v, u).size();
    EXPECT_EQ(split.loser, su <= sv ? u : v);
    EXPECT_EQ(as_set(split.loser_star), testsupport::brute_star_excluding(c, split.loser, split.winner));
    EXPECT_LE(split.touched, 2 * std::min(su, sv));
  }
}

TEST(ComplexDictProperty, RemovalInDecreasingDimensionKeepsClosure) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexDict c;
    auto order = testsupport::random_linear_extension(rng, testsupport::random_complex(rng, 7, 3, 5));
    for (const auto& s : order) c.insert(s);
    std::sort(order.begin(), order.end(), [](const Simplex& a, const Simplex& b) { return a.size() > b.size(); });
    for (const auto& s : order) {
      c.remove(s);
      ASSERT_TRUE(c.check_invariants());
    }
    EXPECT_TRUE(c.empty());
  }
}
