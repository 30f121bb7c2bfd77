#include "conestream/coning.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <absl/container/flat_hash_map.h>

#include "conestream/errors.hpp"

namespace conestream {

namespace {

std::string vertex_error(const char* what, VertexId name) {
  return std::string(what) + " " + std::to_string(name);
}

void sort_by_dimension_then_lex(std::vector<Simplex>& v) {
  if (v.size() < 2) return;
  // rows of (size, vertices..., 0 padding) compare like DimensionThenLex
  std::size_t stride = 0;
  for (const Simplex& s : v) stride = std::max(stride, s.size());
  ++stride;
  std::vector<VertexId> rows(v.size() * stride, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    VertexId* row = rows.data() + i * stride;
    row[0] = static_cast<VertexId>(v[i].size());
    std::copy(v[i].vertices().begin(), v[i].vertices().end(), row + 1);
  }
  std::vector<std::uint32_t> order(v.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const VertexId* ra = rows.data() + a * stride;
    const VertexId* rb = rows.data() + b * stride;
    return std::lexicographical_compare(ra, ra + stride, rb, rb + stride);
  });
  std::vector<Simplex> sorted;
  sorted.reserve(v.size());
  for (std::uint32_t i : order) sorted.push_back(std::move(v[i]));
  v = std::move(sorted);
}

}  // namespace

double size_bound(const ConversionStats& s) {
  const double n = static_cast<double>(s.n);
  const double log_n0 = s.n0 > 1 ? std::log2(static_cast<double>(s.n0)) : 0.0;
  return n + 2.0 * (s.delta + 1) * n * (1.0 + log_n0);
}

bool within_size_bound(const ConversionStats& s) {
  return static_cast<double>(s.total_output) <= size_bound(s);
}

void write_stats(std::ostream& os, const ConversionStats& s) {
  os << "n=" << s.n << '\n'
     << "n0=" << s.n0 << '\n'
     << "m=" << s.m << '\n'
     << "delta=" << s.delta << '\n'
     << "omega=" << s.omega << '\n'
     << "filtration_size=" << s.total_output << '\n'
     << "max_live_simplices=" << s.max_live << '\n'
     << "contractions=" << s.contractions << '\n'
     << "total_cost=" << s.total_cost << '\n'
     << "total_deactivated=" << s.total_deactivated << '\n'
     << "size_bound=" << static_cast<std::uint64_t>(std::floor(size_bound(s))) << '\n';
}

// ---------------------------------------------------------------------------
// Active coning

ActiveConingConverter::ActiveConingConverter(EventSink sink, ConverterOptions options)
    : sink_(std::move(sink)), options_(options) {}

VertexId ActiveConingConverter::resolve(VertexId name) const {
  if (auto it = name_to_internal_.find(name); it != name_to_internal_.end()) return it->second;
  // the internal vertex with this number now stands for a different name
  if (internal_to_name_.count(name) || !active_.contains_vertex(name))
    throw InputError(vertex_error("vertex is not active:", name));
  return name;
}

void ActiveConingConverter::note_live(std::uint64_t extra) {
  stats_.max_live = std::max<std::uint64_t>(stats_.max_live, active_.size() + extra);
}

SimplexIndex ActiveConingConverter::emit_addition(const Simplex& s, FacetIds facet_ids) {
  std::sort(facet_ids.begin(), facet_ids.end());
  const SimplexIndex id = next_id_++;
  ++stats_.total_output;
  sink_(FiltrationEvent::addition(id, s.dimension(), std::move(facet_ids)), stats_.m);
  return id;
}

void ActiveConingConverter::push(const TowerOp& op) {
  if (op.is_inclusion())
    include(op.simplex);
  else
    contract(op.u, op.v);
  ++stats_.m;
  stats_.omega = std::max<std::uint64_t>(stats_.omega, active_.size());
}

void ActiveConingConverter::include(const Simplex& named) {
  Simplex key;
  if (named.size() == 1) {
    const VertexId x = named.front();
    if (name_to_internal_.count(x) || active_.contains_vertex(x))
      throw InputError(vertex_error("vertex already exists:", x));
    key = named;
    ++stats_.n0;
  } else {
    std::vector<VertexId> vs;
    vs.reserve(named.size());
    for (VertexId name : named.vertices()) vs.push_back(resolve(name));
    key = Simplex(std::move(vs));
  }

  FacetIds facet_ids;
  for (const Simplex& f : facets(key)) {
    const auto* e = active_.find(f);
    if (!e) {
      std::ostringstream os;
      os << "inclusion of " << named << " before its facets";
      throw InputError(os.str());
    }
    facet_ids.push_back(e->index);
  }
  if (active_.contains(key)) {
    std::ostringstream os;
    os << "simplex " << named << " is already present";
    throw InputError(os.str());
  }
  const SimplexIndex id = emit_addition(key, std::move(facet_ids));
  active_.insert(key, id);
  ++stats_.n;
  stats_.delta = std::max(stats_.delta, key.dimension());
  note_live(0);
}

void ActiveConingConverter::contract(VertexId a, VertexId b) {
  const VertexId ia = resolve(a);
  const VertexId ib = resolve(b);
  if (ia == ib) throw InputError("contraction of a vertex with itself");

  StarSplit split = active_.smaller_star_side(ia, ib);
  stats_.star_work += split.touched;
  const VertexId w = split.winner;
  const VertexId l = split.loser;
  std::vector<Simplex>& star = split.loser_star;  // St(l, ¬w)
  sort_by_dimension_then_lex(star);

  // Cones w ∗ σ with σ ∈ St(l, ¬w) contain l and are never put back into the
  // active complex; their ids live here until deactivation.
  absl::flat_hash_map<Simplex, SimplexIndex, SimplexHash> cone_ids;
  const auto lookup = [&](const Simplex& f) -> SimplexIndex {
    if (const auto* e = active_.find(f)) return e->index;
    return cone_ids.at(f.without(w));
  };

  const std::uint64_t before = stats_.total_output;
  const int top = star.empty() ? -1 : star.back().dimension();

  struct Candidate {
    Simplex simplex;
    bool is_cone;  // w ∗ σ (contains l) vs. w ∗ ρ (active)
    const Simplex* base;
  };
  std::vector<Candidate> level;
  // Level d holds the new simplices of dimension d: cones over σ of dimension
  // d-1 and joins w ∗ (σ ∖ l) for σ of dimension d. Facets of level d live in
  // levels < d or in the active complex.
  auto first = star.begin();
  auto lower = star.begin();  // start of the σ with dimension d - 1
  for (int d = 0; d <= top + 1; ++d) {
    level.clear();
    auto upper = first;
    while (upper != star.end() && upper->dimension() == d) ++upper;
    for (auto it = lower; it != first; ++it) {
      Simplex c = join(w, *it);
      if (!active_.contains(c)) level.push_back({std::move(c), true, &*it});
    }
    if (d >= 1) {
      for (auto it = first; it != upper; ++it) {
        Simplex c = join(w, it->without(l));
        if (!active_.contains(c)) level.push_back({std::move(c), false, &*it});
      }
    }
    std::sort(level.begin(), level.end(),
              [](const Candidate& x, const Candidate& y) { return x.simplex < y.simplex; });
    for (const Candidate& cand : level) {
      FacetIds fids;
      for (const Simplex& f : facets(cand.simplex)) fids.push_back(lookup(f));
      const SimplexIndex id = emit_addition(cand.simplex, std::move(fids));
      if (cand.is_cone)
        cone_ids.emplace(*cand.base, id);
      else
        active_.insert(cand.simplex, id);
    }
    note_live(cone_ids.size());
    lower = first;
    first = upper;
  }
  const std::uint64_t cost = stats_.total_output - before;

  // Deactivate every simplex containing l, top dimension first so that each
  // removal finds no remaining cofacets.
  std::vector<std::pair<Simplex, SimplexIndex>> doomed;
  for (Simplex& s : active_.star(l)) {
    const SimplexIndex id = active_.find(s)->index;
    doomed.emplace_back(std::move(s), id);
  }
  for (auto& [sigma, id] : cone_ids) doomed.emplace_back(join(w, sigma), id);
  std::sort(doomed.begin(), doomed.end(), [](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() > y.first.size();
    return x.first < y.first;
  });
  for (const auto& [s, id] : doomed) {
    sink_(FiltrationEvent::inactive(id), stats_.m);
    if (active_.contains(s)) active_.remove(s);
  }

  name_to_internal_.erase(a);
  name_to_internal_.erase(b);
  internal_to_name_.erase(ia);
  internal_to_name_.erase(ib);
  if (w != a) {
    name_to_internal_[a] = w;
    internal_to_name_[w] = a;
  }

  ++stats_.contractions;
  stats_.total_cost += cost;
  stats_.total_deactivated += doomed.size();
  if (options_.record_costs) stats_.costs.push_back(cost);
}

const ConversionStats& ActiveConingConverter::finish() {
  if (options_.check_size_bound && !within_size_bound(stats_)) {
    std::ostringstream os;
    os << "filtration size " << stats_.total_output << " exceeds bound " << size_bound(stats_);
    throw BoundViolation(os.str());
  }
  return stats_;
}

// ---------------------------------------------------------------------------
// Full coning

FullConingConverter::FullConingConverter(EventSink sink, ConverterOptions options)
    : sink_(std::move(sink)), options_(options) {}

VertexId FullConingConverter::resolve(VertexId name) const {
  auto it = names_.find(name);
  if (it == names_.end()) throw InputError(vertex_error("vertex is not active:", name));
  return it->second;
}

bool FullConingConverter::all_live(const Simplex& s, std::optional<VertexId> skip) const {
  for (VertexId x : s.vertices())
    if ((!skip || x != *skip) && !live_.count(x)) return false;
  return true;
}

void FullConingConverter::push(const TowerOp& op) {
  const std::uint64_t step = stats_.m;
  const auto emit = [&](const Simplex& s) {
    FacetIds fids;
    const SimplexIndex id = next_id_++;
    accumulated_.insert(s, id, &fids);
    std::sort(fids.begin(), fids.end());
    sink_(FiltrationEvent::addition(id, s.dimension(), std::move(fids)), step);
    ++stats_.total_output;
  };

  if (op.is_inclusion()) {
    Simplex key;
    if (op.simplex.size() == 1) {
      const VertexId x = op.simplex.front();
      if (names_.count(x)) throw InputError(vertex_error("vertex already exists:", x));
      const VertexId internal = next_vertex_++;
      names_.emplace(x, internal);
      live_.insert(internal);
      key = Simplex::from_sorted({internal});
      ++stats_.n0;
    } else {
      std::vector<VertexId> vs;
      for (VertexId name : op.simplex.vertices()) vs.push_back(resolve(name));
      key = Simplex(std::move(vs));
      for (const Simplex& f : facets(key))
        if (!accumulated_.contains(f)) {
          std::ostringstream os;
          os << "inclusion of " << op.simplex << " before its facets";
          throw InputError(os.str());
        }
      if (accumulated_.contains(key)) {
        std::ostringstream os;
        os << "simplex " << op.simplex << " is already present";
        throw InputError(os.str());
      }
    }
    emit(key);
    ++stats_.n;
    ++live_simplices_;
    stats_.delta = std::max(stats_.delta, key.dimension());
  } else {
    const VertexId u = resolve(op.u);
    const VertexId v = resolve(op.v);
    const std::vector<const Simplex*> star = accumulated_.star_keys(v);

    std::vector<Simplex> cones;
    const auto cone_over = [&](const Simplex& t) {
      if (t.contains(u)) return;
      Simplex c = join(u, t);
      if (!accumulated_.contains(c)) cones.push_back(std::move(c));
    };
    std::uint64_t dying = 0;
    for (const Simplex* s : star) {
      if (all_live(*s)) ++dying;
      cone_over(*s);
      if (s->size() > 1) cone_over(s->without(v));
    }
    sort_by_dimension_then_lex(cones);
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());

    live_.erase(v);
    names_.erase(op.v);
    std::uint64_t born = 0;
    for (const Simplex& c : cones) {
      emit(c);
      if (all_live(c)) ++born;
    }
    live_simplices_ = live_simplices_ - dying + born;
    ++stats_.contractions;
    stats_.total_cost += cones.size();
    if (options_.record_costs) stats_.costs.push_back(cones.size());
  }
  ++stats_.m;
  stats_.omega = std::max(stats_.omega, live_simplices_);
  stats_.max_live = std::max<std::uint64_t>(stats_.max_live, accumulated_.size());
}

const ConversionStats& FullConingConverter::finish() { return stats_; }

// ---------------------------------------------------------------------------

ConversionStats convert(std::span<const TowerOp> tower, const EventSink& sink, ConverterOptions options) {
  ActiveConingConverter conv(sink, options);
  for (const auto& op : tower) conv.push(op);
  return conv.finish();
}

ConversionStats convert_full_coning(std::span<const TowerOp> tower, const EventSink& sink,
                                    ConverterOptions options) {
  FullConingConverter conv(sink, options);
  for (const auto& op : tower) conv.push(op);
  return conv.finish();
}

ConvertedFiltration convert_to_vector(std::span<const TowerOp> tower, bool full_coning, ConverterOptions options) {
  ConvertedFiltration out;
  EventSink sink = [&](const FiltrationEvent& ev, std::uint64_t step) {
    if (ev.is_addition()) out.step_of.push_back(step);
    out.events.push_back(ev);
  };
  out.stats = full_coning ? convert_full_coning(tower, sink, options) : convert(tower, sink, options);
  return out;
}

}  // namespace conestream
