#include "conestream/generators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "conestream/complex_dict.hpp"
#include "conestream/errors.hpp"

namespace conestream {

namespace detail {

TrackedComplex::TrackedComplex() : dict_(std::make_unique<ComplexDict>()) {}
TrackedComplex::~TrackedComplex() = default;
TrackedComplex::TrackedComplex(TrackedComplex&&) noexcept = default;
TrackedComplex& TrackedComplex::operator=(TrackedComplex&&) noexcept = default;

bool TrackedComplex::contains(const Simplex& s) const { return dict_->contains(s); }

void TrackedComplex::insert(const Simplex& s) { dict_->insert(s); }

std::vector<Simplex> TrackedComplex::contract(VertexId u, VertexId v) {
  std::vector<Simplex> star = dict_->star(v);
  std::vector<Simplex> images;
  for (const Simplex& s : star) {
    if (s.size() == 1) continue;
    Simplex rest = s.without(v);
    Simplex img = rest.contains(u) ? std::move(rest) : join(u, rest);
    if (!dict_->contains(img)) images.push_back(std::move(img));
  }
  std::sort(images.begin(), images.end(), DimensionThenLex{});
  images.erase(std::unique(images.begin(), images.end()), images.end());
  std::sort(star.begin(), star.end(), [](const Simplex& a, const Simplex& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  for (const Simplex& s : star) dict_->remove(s);
  for (const Simplex& s : images) dict_->insert(s);
  return images;
}

std::vector<VertexId> TrackedComplex::neighbors(VertexId u) const {
  std::vector<VertexId> out;
  for (const Simplex& s : dict_->star(u))
    if (s.size() == 2) out.push_back(s.front() == u ? s.back() : s.front());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

namespace {

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

// ---------------------------------------------------------------- random

struct RandomTower::State {
  RandomTowerParams params;
  std::mt19937_64 rng;
  detail::TrackedComplex complex;
  std::vector<Simplex> candidates;
  std::unordered_map<Simplex, std::size_t, SimplexHash> candidate_pos;
  std::vector<VertexId> live;
  VertexId next_vertex = 0;
  std::uint64_t emitted = 0;
  std::uint64_t budget = 0;

  void drop_candidate(const Simplex& s) {
    auto it = candidate_pos.find(s);
    if (it == candidate_pos.end()) return;
    const std::size_t pos = it->second;
    candidate_pos.erase(it);
    if (pos + 1 != candidates.size()) {
      candidates[pos] = std::move(candidates.back());
      candidate_pos[candidates[pos]] = pos;
    }
    candidates.pop_back();
  }

  // Queues every σ ∪ {x} that just became addable.
  void extend_from(const Simplex& s) {
    if (s.dimension() >= params.max_dim) return;
    for (VertexId x : live) {
      if (s.contains(x)) continue;
      Simplex t = join(x, s);
      if (candidate_pos.count(t) || complex.contains(t)) continue;
      bool ok = true;
      for (const Simplex& f : facets(t))
        if (!complex.contains(f)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      candidate_pos.emplace(t, candidates.size());
      candidates.push_back(std::move(t));
    }
  }

  void add(const Simplex& s) {
    complex.insert(s);
    drop_candidate(s);
    if (s.size() == 1) live.push_back(s.front());
    extend_from(s);
  }

  TowerOp contract() {
    const std::size_t i = uniform_index(rng, live.size());
    std::size_t j = uniform_index(rng, live.size() - 1);
    if (j >= i) ++j;
    const VertexId u = live[i];
    const VertexId v = live[j];
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(j));
    std::vector<Simplex> fresh = complex.contract(u, v);
    std::vector<Simplex> stale;
    for (const Simplex& c : candidates)
      if (c.contains(v) || complex.contains(c)) stale.push_back(c);
    for (const Simplex& c : stale) drop_candidate(c);
    for (const Simplex& s : fresh) extend_from(s);
    return TowerOp::contraction(u, v);
  }
};

RandomTower::RandomTower(const RandomTowerParams& params) : st_(std::make_unique<State>()) {
  if (params.n0 < 2) throw InputError("random tower needs n0 >= 2");
  if (!(params.p_include > 0.0 && params.p_include < 1.0))
    throw InputError("inclusion probability must lie in (0, 1)");
  if (params.max_dim < 0) throw InputError("dimension cap must be non-negative");
  st_->params = params;
  st_->rng.seed(params.seed);
  st_->budget = params.op_budget ? params.op_budget : 10ull * params.n0 * params.n0;
}

RandomTower::~RandomTower() = default;

std::optional<TowerOp> RandomTower::next() {
  State& s = *st_;
  if (s.emitted >= s.budget) return std::nullopt;
  const std::size_t remaining = s.params.n0 - s.next_vertex;
  const std::size_t addable = s.candidates.size() + remaining;
  const bool can_contract = s.live.size() >= 2;
  bool include;
  if (addable == 0) {
    // Nothing addable: on few enough vertices the complex is a full simplex.
    if (!can_contract || s.live.size() <= static_cast<std::size_t>(s.params.max_dim) + 1) return std::nullopt;
    include = false;
  } else if (!can_contract) {
    include = true;
  } else {
    include = std::bernoulli_distribution(s.params.p_include)(s.rng);
  }
  ++s.emitted;
  if (!include) return s.contract();
  const std::size_t pick = uniform_index(s.rng, addable);
  Simplex chosen = pick < remaining ? Simplex::from_sorted({s.next_vertex++}) : s.candidates[pick - remaining];
  s.add(chosen);
  return TowerOp::inclusion(std::move(chosen));
}

std::vector<TowerOp> random_tower(const RandomTowerParams& params) {
  RandomTower gen(params);
  std::vector<TowerOp> ops;
  while (auto op = gen.next()) ops.push_back(std::move(*op));
  return ops;
}

// ---------------------------------------------------------------- tightness

std::vector<TowerOp> tightness_tower(int k) {
  if (k < 1 || k > 24) throw InputError("tightness tower needs 1 <= k <= 24");
  const VertexId p = VertexId{1} << k;
  std::vector<TowerOp> ops;
  for (VertexId i = 0; i < 2 * p; ++i) ops.push_back(TowerOp::inclusion(Simplex::from_sorted({i})));
  for (VertexId i = 0; i < p; ++i) ops.push_back(TowerOp::inclusion(Simplex::from_sorted({i, p + i})));
  for (VertexId half = 1; half < p; half *= 2)
    for (VertexId i = 0; i < p; i += 2 * half) ops.push_back(TowerOp::contraction(i, i + half));
  return ops;
}

// ---------------------------------------------------------------- torus

struct TorusFlagTower::State {
  struct Point {
    double x, y, dx, dy;
    VertexId id;
  };
  TorusParams params;
  std::mt19937_64 rng;
  detail::TrackedComplex complex;
  std::vector<Point> points;
  std::deque<TowerOp> pending;
  VertexId next_id = 0;
  std::uint64_t step = 0;
  std::uint64_t emitted = 0;

  Point spawn() {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double x = unit(rng);
    const double y = unit(rng);
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    Point p{x, y, params.speed * std::cos(angle), params.speed * std::sin(angle), next_id++};
    include(Simplex::from_sorted({p.id}));
    return p;
  }

  void include(const Simplex& s) {
    complex.insert(s);
    pending.push_back(TowerOp::inclusion(s));
  }

  static double wrap(double d) {
    d = std::fabs(d);
    return std::min(d, 1.0 - d);
  }

  static double distance(const Point& a, const Point& b) {
    return std::hypot(wrap(a.x - b.x), wrap(a.y - b.y));
  }

  // Includes every missing clique that contains all of `core`, smallest first.
  void complete(const std::vector<VertexId>& core) {
    std::vector<VertexId> common = complex.neighbors(core.front());
    for (std::size_t i = 1; i < core.size(); ++i) {
      std::vector<VertexId> other = complex.neighbors(core[i]);
      std::vector<VertexId> both;
      std::set_intersection(common.begin(), common.end(), other.begin(), other.end(), std::back_inserter(both));
      common.swap(both);
    }
    std::unordered_map<VertexId, std::vector<VertexId>> adj;
    for (VertexId c : common) adj[c] = complex.neighbors(c);
    const auto adjacent = [&](VertexId a, VertexId b) {
      const auto& n = adj[a];
      return std::binary_search(n.begin(), n.end(), b);
    };

    std::vector<std::vector<VertexId>> level{{}};
    const std::size_t cap = static_cast<std::size_t>(params.max_dim) + 1;
    while (!level.empty() && core.size() + level.front().size() < cap) {
      std::vector<std::vector<VertexId>> next;
      for (const auto& q : level) {
        for (VertexId x : common) {
          if (!q.empty() && x <= q.back()) continue;
          if (!std::all_of(q.begin(), q.end(), [&](VertexId y) { return adjacent(x, y); })) continue;
          auto grown = q;
          grown.push_back(x);
          std::vector<VertexId> vs = core;
          vs.insert(vs.end(), grown.begin(), grown.end());
          Simplex s(std::move(vs));
          if (!complex.contains(s)) include(s);
          next.push_back(std::move(grown));
        }
      }
      level.swap(next);
    }
  }

  void advance() {
    ++step;
    for (Point& p : points) {
      p.x = std::fmod(p.x + p.dx + 1.0, 1.0);
      p.y = std::fmod(p.y + p.dy + 1.0, 1.0);
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        const double d = distance(points[i], points[j]);
        const VertexId a = points[i].id;
        const VertexId b = points[j].id;
        if (d < params.t2) {
          pending.push_back(TowerOp::contraction(a, b));
          complex.contract(a, b);
          if (params.max_dim >= 2) complete({a});
          points[j] = spawn();
        } else if (d < params.t1 && params.max_dim >= 1) {
          Simplex e = Simplex::from_sorted({std::min(a, b), std::max(a, b)});
          if (complex.contains(e)) continue;
          include(e);
          complete({std::min(a, b), std::max(a, b)});
        }
      }
    }
  }
};

TorusFlagTower::TorusFlagTower(const TorusParams& params) : st_(std::make_unique<State>()) {
  if (!(params.t2 > 0.0 && params.t2 < params.t1 && params.t1 < 0.5))
    throw InputError("torus thresholds need 0 < t2 < t1 < 0.5");
  if (params.num_points < 2) throw InputError("torus tower needs at least 2 points");
  st_->params = params;
  st_->rng.seed(params.seed);
  for (std::uint32_t i = 0; i < params.num_points; ++i) st_->points.push_back(st_->spawn());
}

TorusFlagTower::~TorusFlagTower() = default;

std::optional<TowerOp> TorusFlagTower::next() {
  State& s = *st_;
  if (s.params.max_ops && s.emitted >= s.params.max_ops) return std::nullopt;
  while (s.pending.empty()) {
    if (s.step >= s.params.steps) return std::nullopt;
    s.advance();
  }
  TowerOp op = std::move(s.pending.front());
  s.pending.pop_front();
  ++s.emitted;
  return op;
}

std::vector<TowerOp> torus_flag_tower(const TorusParams& params) {
  TorusFlagTower gen(params);
  std::vector<TowerOp> ops;
  while (auto op = gen.next()) ops.push_back(std::move(*op));
  return ops;
}

// ---------------------------------------------------------------- fixtures

namespace {

std::vector<TowerOp> include_all(std::vector<Simplex> simplices) {
  std::sort(simplices.begin(), simplices.end(), DimensionThenLex{});
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
  std::vector<TowerOp> ops;
  for (auto& s : simplices) ops.push_back(TowerOp::inclusion(std::move(s)));
  return ops;
}

void add_closure(std::vector<Simplex>& out, const Simplex& s) {
  out.push_back(s);
  if (s.size() > 1)
    for (const Simplex& f : facets(s)) add_closure(out, f);
}

}  // namespace

std::vector<TowerOp> fan_fixture(int t) {
  if (t < 1) throw InputError("fan needs t >= 1");
  std::vector<Simplex> all{{0, 1}};
  for (int i = 0; i < t; ++i) {
    const VertexId c = 2 + static_cast<VertexId>(i);
    add_closure(all, Simplex{0, c});
    add_closure(all, Simplex{1, c});
  }
  auto ops = include_all(std::move(all));
  ops.push_back(TowerOp::contraction(0, 1));
  return ops;
}

std::vector<TowerOp> sphere_fixture(int t) {
  if (t < 1) throw InputError("sphere fixture needs t >= 1");
  std::vector<Simplex> all;
  for (int i = 0; i < t; ++i) {
    // Octahedron with apex a=0, bottom z and equator b=1, e1, e2, e3.
    const VertexId base = 2 + 4 * static_cast<VertexId>(i);
    const VertexId z = base, e1 = base + 1, e2 = base + 2, e3 = base + 3;
    const VertexId ring[4] = {1, e1, e2, e3};
    for (int k = 0; k < 4; ++k) {
      const VertexId p = ring[k], q = ring[(k + 1) % 4];
      if (!(p == 1 && q == e1)) add_closure(all, Simplex{0, p, q});
      add_closure(all, Simplex{z, p, q});
    }
  }
  auto ops = include_all(std::move(all));
  ops.push_back(TowerOp::contraction(0, 1));
  return ops;
}

std::vector<TowerOp> neutral_fixture() {
  std::vector<Simplex> all;
  add_closure(all, Simplex{0, 1, 2});
  add_closure(all, Simplex{2, 3});
  auto ops = include_all(std::move(all));
  ops.push_back(TowerOp::contraction(0, 1));
  return ops;
}

// ---------------------------------------------------------------- barcodes

RealizedFiltration filtration_from_barcode(const Barcode& b) {
  RealizedFiltration out;
  if (b.empty()) return out;

  std::vector<Bar> bars(b.bars().begin(), b.bars().end());
  std::sort(bars.begin(), bars.end(), [](const Bar& x, const Bar& y) { return x.birth < y.birth; });
  std::unordered_set<SimplexIndex> times;
  for (const Bar& bar : bars) {
    if (bar.dimension < 0) throw InputError("bar of negative dimension");
    if (!bar.essential() && bar.death <= bar.birth) throw InputError("bar dies before it is born");
    if (!times.insert(bar.birth).second) throw InputError("bar times must be distinct");
    if (!bar.essential() && !times.insert(bar.death).second) throw InputError("bar times must be distinct");
  }
  if (bars.front().dimension != 0 || !bars.front().essential())
    throw InputError("the earliest bar must be an essential 0-dimensional bar");

  // time -> (bar, is_birth)
  std::map<SimplexIndex, std::pair<std::size_t, bool>> timeline;
  for (std::size_t i = 0; i < bars.size(); ++i) {
    timeline.emplace(bars[i].birth, std::make_pair(i, true));
    if (!bars[i].essential()) timeline.emplace(bars[i].death, std::make_pair(i, false));
  }

  std::unordered_map<Simplex, SimplexIndex, SimplexHash> ids;
  VertexId next_vertex = 1;
  std::vector<Simplex> killer(bars.size());
  const auto add = [&](const Simplex& s, std::uint64_t time) {
    FacetIds fids;
    for (const Simplex& f : facets(s)) fids.push_back(ids.at(f));
    std::sort(fids.begin(), fids.end());
    const SimplexIndex id = out.events.size();
    out.events.push_back(FiltrationEvent::addition(id, s.dimension(), std::move(fids)));
    out.time_of.push_back(time);
    ids.emplace(s, id);
  };

  const Simplex v0 = Simplex::from_sorted({0});
  for (const auto& [time, what] : timeline) {
    const auto [i, birth] = what;
    const Bar& bar = bars[i];
    if (!birth) {
      add(killer[i], time);
      continue;
    }
    if (i == 0) {
      add(v0, time);
    } else if (bar.dimension == 0) {
      const Simplex v = Simplex::from_sorted({next_vertex++});
      add(v, time);
      killer[i] = Simplex::from_sorted({0, v.front()});
    } else {
      std::vector<VertexId> vs{0};
      for (int k = 0; k <= bar.dimension; ++k) vs.push_back(next_vertex++);
      const Simplex top = Simplex::from_sorted(vs);
      std::vector<Simplex> faces;
      add_closure(faces, top);
      std::sort(faces.begin(), faces.end(), DimensionThenLex{});
      faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
      for (const Simplex& f : faces)
        if (f != top && f != v0) add(f, time);
      killer[i] = top;
    }
  }
  return out;
}

}  // namespace conestream
