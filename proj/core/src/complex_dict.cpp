#include "conestream/complex_dict.hpp"

#include <sstream>

#include <boost/container/small_vector.hpp>

#include "conestream/errors.hpp"

namespace conestream {

namespace {

std::string describe(const Simplex& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

// Enumerates the cofaces of a root vertex without revisits: from τ we only
// follow cofacet links keyed by a vertex larger than every vertex of τ other
// than the root, so each coface {root} ∪ R is reached along the unique chain
// that adds R in increasing order.
class CofaceWalk {
 public:
  using Entry = ComplexDict::Entry;

  CofaceWalk(const Entry& root, VertexId root_vertex, std::optional<VertexId> excluded)
      : root_(root_vertex), excluded_(excluded) {
    frontier_.push_back(&root);
  }

  bool done() const noexcept { return frontier_.empty(); }
  std::size_t expanded() const noexcept { return expanded_; }

  const Entry& step() {
    const Entry* e = frontier_.back();
    frontier_.pop_back();
    ++expanded_;
    const auto vs = e->key->vertices();
    bool has_floor = false;
    VertexId floor = 0;
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
      if (*it != root_) {
        floor = *it;
        has_floor = true;
        break;
      }
    }
    auto it = has_floor ? e->cofacets.lower_bound(floor) : e->cofacets.begin();
    for (; it != e->cofacets.end(); ++it) {
      if (excluded_ && it->first == *excluded_) continue;
      frontier_.push_back(it->second);
    }
    return *e;
  }

 private:
  VertexId root_;
  std::optional<VertexId> excluded_;
  std::vector<const Entry*> frontier_;
  std::size_t expanded_ = 0;
};

}  // namespace

bool ComplexDict::contains_vertex(VertexId v) const {
  return entries_.count(Simplex::from_sorted({v})) != 0;
}

const ComplexDict::Entry* ComplexDict::find(const Simplex& s) const {
  auto it = entries_.find(s);
  return it == entries_.end() ? nullptr : &it->second;
}

ComplexDict::Entry* ComplexDict::find(const Simplex& s) {
  auto it = entries_.find(s);
  return it == entries_.end() ? nullptr : &it->second;
}

ComplexDict::Entry& ComplexDict::insert(const Simplex& s, SimplexIndex index, FacetIds* facet_indices) {
  if (s.empty()) throw InputError("cannot insert an empty simplex");
  const auto vs = s.vertices();
  boost::container::small_vector<Entry*, 8> facet_entries;
  if (vs.size() > 1) {
    for (VertexId v : vs) {
      const Simplex f = s.without(v);
      Entry* fe = find(f);
      if (!fe) {
        if (entries_.count(s)) throw InputError("simplex " + describe(s) + " is already present");
        throw InputError("cannot insert " + describe(s) + ": facet " + describe(f) + " is missing");
      }
      facet_entries.push_back(fe);
    }
  }

  auto [it, inserted] = entries_.try_emplace(s);
  if (!inserted) throw InputError("simplex " + describe(s) + " is already present");
  Entry& e = it->second;
  e.key = &it->first;
  e.index = index;
  if (facet_indices) {
    facet_indices->clear();
    for (const Entry* fe : facet_entries) facet_indices->push_back(fe->index);
  }
  // facet i omits vertex i, so the cofacet link of facet i is keyed by vertex i
  for (std::size_t i = 0; i < facet_entries.size(); ++i) facet_entries[i]->cofacets.emplace(vs[i], &e);
  return e;
}

void ComplexDict::remove(const Simplex& s) {
  auto it = entries_.find(s);
  if (it == entries_.end()) throw InputError("simplex " + describe(s) + " is not present");
  if (!it->second.cofacets.empty())
    throw InputError("cannot remove " + describe(s) + ": it still has cofacets");
  const auto fs = facets(s);
  const auto vs = s.vertices();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    Entry* fe = find(fs[i]);
    if (fe) fe->cofacets.erase(vs[i]);
  }
  entries_.erase(it);
}

const ComplexDict::Entry& ComplexDict::vertex_entry(VertexId u) const {
  const Entry* e = find(Simplex::from_sorted({u}));
  if (!e) throw InputError("vertex " + std::to_string(u) + " is not present");
  return *e;
}

std::vector<Simplex> ComplexDict::star_excluding(VertexId u, VertexId v) const {
  CofaceWalk walk(vertex_entry(u), u, v);
  std::vector<Simplex> out;
  while (!walk.done()) out.push_back(*walk.step().key);
  return out;
}

std::vector<Simplex> ComplexDict::star(VertexId u) const {
  CofaceWalk walk(vertex_entry(u), u, std::nullopt);
  std::vector<Simplex> out;
  while (!walk.done()) out.push_back(*walk.step().key);
  return out;
}

std::vector<const Simplex*> ComplexDict::star_keys(VertexId u) const {
  CofaceWalk walk(vertex_entry(u), u, std::nullopt);
  std::vector<const Simplex*> out;
  while (!walk.done()) out.push_back(walk.step().key);
  return out;
}

StarSplit ComplexDict::smaller_star_side(VertexId u, VertexId v) const {
  if (u == v) throw InputError("cannot compare the star of a vertex with itself");
  CofaceWalk wu(vertex_entry(u), u, v);
  CofaceWalk wv(vertex_entry(v), v, u);
  std::vector<Simplex> su, sv;

  // Both walks have expanded the same number of simplices at the top of every
  // round, so the first walk found exhausted is the smaller side; u is tested
  // first, which resolves ties in favor of deactivating u.
  StarSplit split;
  while (true) {
    if (wu.done()) {
      split.loser = u;
      split.winner = v;
      split.loser_star = std::move(su);
      break;
    }
    if (wv.done()) {
      split.loser = v;
      split.winner = u;
      split.loser_star = std::move(sv);
      break;
    }
    su.push_back(*wu.step().key);
    sv.push_back(*wv.step().key);
  }
  split.touched = wu.expanded() + wv.expanded();
  return split;
}

bool ComplexDict::check_invariants() const {
  for (const auto& [s, e] : entries_) {
    if (e.key != &s) return false;
    const auto vs = s.vertices();
    const auto fs = facets(s);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Entry* fe = find(fs[i]);
      if (!fe) return false;
      auto link = fe->cofacets.find(vs[i]);
      if (link == fe->cofacets.end() || link->second != &e) return false;
    }
    for (const auto& [x, child] : e.cofacets) {
      if (s.contains(x)) return false;
      if (*child->key != join(x, s)) return false;
    }
  }
  return true;
}

void ComplexDict::for_each(const std::function<void(const Simplex&, const Entry&)>& fn) const {
  for (const auto& [s, e] : entries_) fn(s, e);
}

}  // namespace conestream
