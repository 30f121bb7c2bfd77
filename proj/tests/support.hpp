#pragma once

// Hand-rolled random structures shared by the property tests.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "conestream/complex_dict.hpp"
#include "conestream/simplex.hpp"
#include "conestream/tower_stream.hpp"

namespace testsupport {

using conestream::FiltrationEvent;
using conestream::Simplex;
using conestream::SimplexIndex;
using conestream::VertexId;

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Random simplicial complex on at most `nverts` vertices: random simplices
/// of dimension <= max_dim together with all their faces.
inline std::set<Simplex> random_complex(std::mt19937_64& rng, VertexId nverts, int max_dim, int tops) {
  std::set<Simplex> out;
  for (VertexId v = 0; v < nverts; ++v) out.insert(Simplex::from_sorted({v}));
  for (int t = 0; t < tops; ++t) {
    const int k = static_cast<int>(pick(rng, static_cast<std::size_t>(max_dim) + 1)) + 1;
    std::vector<VertexId> pool(nverts);
    for (VertexId v = 0; v < nverts; ++v) pool[v] = v;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min<std::size_t>(pool.size(), static_cast<std::size_t>(k)));
    const Simplex top(pool);
    // every non-empty subset
    const auto vs = top.vertices();
    for (std::uint32_t mask = 1; mask < (1u << vs.size()); ++mask) {
      std::vector<VertexId> sub;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (mask & (1u << i)) sub.push_back(vs[i]);
      out.insert(Simplex(sub));
    }
  }
  return out;
}

/// A random order of the complex in which every simplex follows its facets.
inline std::vector<Simplex> random_linear_extension(std::mt19937_64& rng, const std::set<Simplex>& k) {
  std::map<Simplex, int> missing;
  std::vector<Simplex> ready, order;
  for (const auto& s : k) {
    const int f = s.size() > 1 ? static_cast<int>(s.size()) : 0;
    missing[s] = f;
    if (f == 0) ready.push_back(s);
  }
  while (!ready.empty()) {
    const std::size_t i = pick(rng, ready.size());
    std::swap(ready[i], ready.back());
    Simplex s = ready.back();
    ready.pop_back();
    order.push_back(s);
    for (const auto& [t, m] : missing) {
      if (t.size() != s.size() + 1 || !std::includes(t.vertices().begin(), t.vertices().end(),
                                                     s.vertices().begin(), s.vertices().end()))
        continue;
      if (--missing[t] == 0) ready.push_back(t);
    }
  }
  return order;
}

/// Addition events for an ordered complex.
inline std::vector<FiltrationEvent> to_events(const std::vector<Simplex>& order) {
  std::map<Simplex, SimplexIndex> id;
  std::vector<FiltrationEvent> out;
  for (const auto& s : order) {
    conestream::FacetIds f;
    for (const auto& t : conestream::facets(s)) f.push_back(id.at(t));
    std::sort(f.begin(), f.end());
    const SimplexIndex i = out.size();
    out.push_back(FiltrationEvent::addition(i, s.dimension(), std::move(f)));
    id[s] = i;
  }
  return out;
}

inline std::vector<FiltrationEvent> random_filtration(std::mt19937_64& rng, VertexId nverts, int max_dim,
                                                      int tops) {
  return to_events(random_linear_extension(rng, random_complex(rng, nverts, max_dim, tops)));
}

/// Inserts "d id" events at random positions after the last event that uses
/// id as a facet, for a random subset of the simplices.
inline std::vector<FiltrationEvent> with_random_deactivations(std::mt19937_64& rng,
                                                              const std::vector<FiltrationEvent>& adds,
                                                              double p) {
  std::vector<std::size_t> last_use(adds.size());
  for (std::size_t i = 0; i < adds.size(); ++i) {
    last_use[i] = std::max(last_use[i], i);
    for (SimplexIndex f : adds[i].facets) last_use[f] = std::max(last_use[f], i);
  }
  // deactivations scheduled after position k
  std::vector<std::vector<SimplexIndex>> after(adds.size());
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < adds.size(); ++i) {
    if (!coin(rng)) continue;
    const std::size_t lo = last_use[i];
    after[lo + pick(rng, adds.size() - lo)].push_back(i);
  }
  std::vector<FiltrationEvent> out;
  for (std::size_t i = 0; i < adds.size(); ++i) {
    out.push_back(adds[i]);
    for (SimplexIndex d : after[i]) out.push_back(FiltrationEvent::inactive(d));
  }
  return out;
}

/// Cofaces of u not containing v, by scanning the whole complex.
inline std::set<Simplex> brute_star_excluding(const conestream::ComplexDict& c, VertexId u, VertexId v) {
  std::set<Simplex> out;
  c.for_each([&](const Simplex& s, const conestream::ComplexDict::Entry&) {
    if (s.contains(u) && !s.contains(v)) out.insert(s);
  });
  return out;
}

template <typename Range>
std::set<Simplex> as_set(const Range& r) {
  return std::set<Simplex>(r.begin(), r.end());
}

}  // namespace testsupport
