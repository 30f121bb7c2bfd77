#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "conestream/coning.hpp"
#include "conestream/errors.hpp"
#include "conestream/generators.hpp"
#include "conestream/oracle.hpp"
#include "conestream/streaming_reduction.hpp"

using namespace conestream;

namespace {

using Events = std::vector<FiltrationEvent>;

FiltrationEvent add(SimplexIndex id, int dim, FacetIds f = {}) {
  return FiltrationEvent::addition(id, dim, std::move(f));
}

// K_i maintained directly on tower names: "c u v" renames v to u.
class NamedComplex {
 public:
  void apply(const TowerOp& op) {
    if (op.is_inclusion()) {
      simplices_.insert(op.simplex);
      return;
    }
    std::set<Simplex> next;
    for (const auto& s : simplices_) {
      if (!s.contains(op.v)) {
        next.insert(s);
        continue;
      }
      const Simplex rest = s.size() > 1 ? s.without(op.v) : Simplex{};
      if (rest.empty())
        next.insert(Simplex{op.u});
      else if (rest.contains(op.u))
        next.insert(rest);
      else
        next.insert(join(op.u, rest));
    }
    simplices_ = std::move(next);
  }
  const std::set<Simplex>& simplices() const { return simplices_; }

 private:
  std::set<Simplex> simplices_;
};

std::set<Simplex> active_by_name(const ActiveConingConverter& conv, const std::set<VertexId>& names) {
  std::map<VertexId, VertexId> back;
  for (VertexId n : names) back[conv.resolve(n)] = n;
  std::set<Simplex> out;
  conv.active().for_each([&](const Simplex& s, const ComplexDict::Entry&) {
    std::vector<VertexId> vs;
    for (VertexId x : s.vertices()) vs.push_back(back.at(x));
    out.insert(Simplex(vs));
  });
  return out;
}

}  // namespace

TEST(ActiveConing, SingleContraction) {
  const auto f = convert_to_vector(parse_tower("i 0\ni 1\nc 0 1\n"));
  const Events want{add(0, 0), add(1, 0), add(2, 1, {0, 1}), FiltrationEvent::inactive(2),
                    FiltrationEvent::inactive(0)};
  EXPECT_EQ(f.events, want);
  EXPECT_EQ(f.stats.total_output, 3u);
  EXPECT_EQ(f.step_of, (std::vector<std::uint64_t>{0, 1, 2}));
}

TEST(ActiveConing, PathContraction) {
  // a=0 b=1 c=2; contracting (a,c) is a tie, so a is coned onto c.
  std::vector<Events::value_type> events;
  ConverterOptions opt;
  opt.record_costs = true;
  ActiveConingConverter conv([&](const FiltrationEvent& ev, std::uint64_t) { events.push_back(ev); }, opt);
  for (const auto& op : parse_tower("i 0\ni 1\ni 2\ni 0 1\ni 1 2\nc 0 2\n")) conv.push(op);
  const auto& st = conv.finish();
  ASSERT_EQ(st.costs, (std::vector<std::uint64_t>{2}));
  // edge {a,c} = id 5 from {a}=0,{c}=2; triangle id 6 from ab=3, bc=4, ac=5
  EXPECT_EQ(events[5], add(5, 1, {0, 2}));
  EXPECT_EQ(events[6], add(6, 2, {3, 4, 5}));
  std::set<SimplexIndex> dead;
  for (std::size_t i = 7; i < events.size(); ++i) {
    ASSERT_FALSE(events[i].is_addition());
    dead.insert(events[i].id);
  }
  EXPECT_EQ(dead, (std::set<SimplexIndex>{0, 3, 5, 6}));
  EXPECT_EQ(active_by_name(conv, {0, 1}), (std::set<Simplex>{{0}, {1}, {0, 1}}));
  EXPECT_EQ(conv.resolve(0), 2u);
}

TEST(ActiveConing, PureFiltrationPassesThrough) {
  const auto tower = parse_tower("i 0\ni 1\ni 2\ni 0 1\ni 0 2\ni 1 2\ni 0 1 2\n");
  const auto f = convert_to_vector(tower);
  ASSERT_EQ(f.events.size(), tower.size());
  for (const auto& ev : f.events) EXPECT_TRUE(ev.is_addition());
  EXPECT_EQ(f.events[6], add(6, 2, {3, 4, 5}));
}

TEST(ActiveConing, RejectsInvalidOps) {
  const auto sink = [](const FiltrationEvent&, std::uint64_t) {};
  EXPECT_THROW(convert(parse_tower("i 0\ni 0\n"), sink), InputError);
  EXPECT_THROW(convert(parse_tower("i 0\ni 1\ni 0 1\ni 0 1\n"), sink), InputError);
  EXPECT_THROW(convert(parse_tower("i 0\nc 0 1\n"), sink), InputError);
  EXPECT_THROW(convert(parse_tower("i 0\ni 1\nc 0 1\nc 1 0\n"), sink), InputError);
  // the merged vertex is named 0; name 1 is gone
  EXPECT_THROW(convert(parse_tower("i 0\ni 1\ni 2\nc 0 1\ni 1 2\n"), sink), InputError);
  EXPECT_NO_THROW(convert(parse_tower("i 0\ni 1\ni 2\nc 0 1\ni 0 2\n"), sink));
}

TEST(FullConing, SingleContractionMatchesActive) {
  const auto tower = parse_tower("i 0\ni 1\nc 0 1\n");
  const auto f = convert_to_vector(tower, true);
  const Events want{add(0, 0), add(1, 0), add(2, 1, {0, 1})};
  EXPECT_EQ(f.events, want);
}

TEST(FullConing, PureFiltrationPassesThrough) {
  const auto tower = parse_tower("i 0\ni 1\ni 2\ni 0 1\ni 1 2\n");
  EXPECT_EQ(convert_to_vector(tower, true).events, convert_to_vector(tower).events);
}

TEST(FullConing, LargerThanActiveOnTightness) {
  const auto tower = tightness_tower(3);
  EXPECT_GE(convert_to_vector(tower, true).stats.total_output, convert_to_vector(tower).stats.total_output);
}

TEST(ConingProperty, ActiveComplexTracksTowerAndStatsAreConsistent) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomTowerParams p;
    p.n0 = 6 + static_cast<std::uint32_t>(seed % 10);
    p.max_dim = 3;
    p.seed = seed;
    const auto tower = random_tower(p);

    ConverterOptions opt;
    opt.record_costs = true;
    FiltrationValidator validator;
    std::uint64_t last_step = 0;
    int last_dim = -1;
    std::uint64_t additions = 0;
    ActiveConingConverter conv(
        [&](const FiltrationEvent& ev, std::uint64_t step) {
          validator.check(ev);  // prefix property
          if (!ev.is_addition()) return;
          ++additions;
          if (step != last_step) last_dim = -1;
          EXPECT_GE(ev.dimension, last_dim) << "dimension order within step " << step;
          last_dim = ev.dimension;
          last_step = step;
        },
        opt);
    NamedComplex k;
    std::set<VertexId> names;
    std::uint64_t omega = 0;
    for (const auto& op : tower) {
      conv.push(op);
      k.apply(op);
      if (op.is_inclusion() && op.simplex.size() == 1) names.insert(op.simplex.front());
      if (!op.is_inclusion()) names.erase(op.v);
      ASSERT_EQ(active_by_name(conv, names), k.simplices()) << "seed " << seed;
      omega = std::max<std::uint64_t>(omega, k.simplices().size());
      ASSERT_TRUE(conv.active().check_invariants());
    }
    const auto& st = conv.finish();
    EXPECT_EQ(st.omega, omega);
    EXPECT_EQ(st.total_output, additions);
    EXPECT_EQ(st.total_output, st.n + st.total_cost);
    std::uint64_t sum = 0;
    for (auto c : st.costs) sum += c;
    EXPECT_EQ(sum, st.total_cost);
    EXPECT_TRUE(within_size_bound(st));
    EXPECT_LE(st.star_work, 2 * (st.total_cost + st.total_deactivated));
    EXPECT_LE(st.total_deactivated, st.total_output);
  }
}

TEST(ConingProperty, BothConvertersGiveTheSameStampedBarcode) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    RandomTowerParams p;
    p.n0 = 5 + static_cast<std::uint32_t>(seed % 8);
    p.max_dim = 3;
    p.seed = seed;
    const auto tower = random_tower(p);
    const auto a = convert_to_vector(tower);
    const auto f = convert_to_vector(tower, true);
    const auto ba = stamp_with_steps(oracle_barcode(DenseFiltration::from_events(a.events)), a.step_of);
    const auto bf = stamp_with_steps(oracle_barcode(DenseFiltration::from_events(f.events)), f.step_of);
    EXPECT_EQ(ba, bf) << "seed " << seed;
  }
}

TEST(ConversionStats, SizeBoundFormula) {
  ConversionStats s;
  s.n = 10;
  s.n0 = 4;
  s.delta = 2;
  EXPECT_DOUBLE_EQ(size_bound(s), 10 + 2.0 * 3 * 10 * 3);
  s.total_output = 190;
  EXPECT_TRUE(within_size_bound(s));
  s.total_output = 191;
  EXPECT_FALSE(within_size_bound(s));
}
